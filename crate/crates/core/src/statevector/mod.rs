//! Exact statevector simulation of excitation evolutions and the
//! exact-diagonalization reference.
//!
//! Excitations act as rotations on amplitude pairs: for `u` with every annihilated
//! index set and every created index clear, and `v` the state with those bits
//! flipped, `exp(θG)` maps `u ↦ cos θ u + s sin θ v` and `v ↦ cos θ v − s sin θ u`.
//! `s = +1` for qubit excitations; for fermionic ones it is the sign picked up by
//! applying the ladder operators of `T` to `u` in Jordan–Wigner form.

mod eigen;
mod sparse;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::excitation::{AnsatzSpec, Excitation, Flavor};
use crate::mapping::BasisState;
use crate::pauli::PauliSum;

pub use eigen::{
    exact_ground_energy, exact_ground_energy_in_basis, lowest_eigenvalue, DENSE_BLOCK_LIMIT,
    MAX_EXACT_QUBITS,
};
pub use sparse::{sector_basis, SparseOperator};

/// Largest register a dense statevector is allocated for.
pub const MAX_STATEVECTOR_QUBITS: usize = 26;

#[derive(Debug, Clone, PartialEq)]
pub struct Statevector {
    n_qubits: usize,
    amps: Vec<Complex64>,
}

/// Sign of `ops` applied right to left as JW ladder operators on `bits`; each op toggles its bit.
fn jw_sign(mut bits: u64, ops: &[usize]) -> f64 {
    let mut parity = 0;
    for &q in ops {
        parity ^= (bits & ((1u64 << q) - 1)).count_ones() & 1;
        bits ^= 1 << q;
    }
    if parity == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Ladder-operator application order for `T = a†_{v0} [a†_{v1}] [a_{o1}] a_{o0}`.
fn ladder_order(e: &Excitation) -> Vec<usize> {
    let mut ops = e.occupied().to_vec();
    ops.extend(e.virtuals().iter().rev());
    ops
}

fn check_qubits(n_qubits: usize) -> Result<()> {
    if n_qubits > MAX_STATEVECTOR_QUBITS {
        return Err(Error::TooLarge {
            what: "statevector simulation",
            needed: n_qubits,
            limit: MAX_STATEVECTOR_QUBITS,
            hint: "reduce the problem with --freeze or --active",
        });
    }
    Ok(())
}

impl Statevector {
    /// Amplitude 1 on the basis index of `state`.
    pub fn prepare_basis(state: BasisState) -> Result<Self> {
        check_qubits(state.n_qubits)?;
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << state.n_qubits];
        amps[state.bits as usize] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits: state.n_qubits,
            amps,
        })
    }

    pub fn from_amplitudes(n_qubits: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_qubits(n_qubits)?;
        if amps.len() != 1 << n_qubits {
            return Err(Error::Simulation(format!(
                "{} amplitudes for {n_qubits} qubits",
                amps.len()
            )));
        }
        Ok(Self { n_qubits, amps })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Statevector) -> Complex64 {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn check_index(&self, indices: &[usize]) -> Result<()> {
        if let Some(&q) = indices.iter().find(|&&q| q >= self.n_qubits) {
            return Err(Error::Simulation(format!(
                "qubit {q} out of range for {} qubits",
                self.n_qubits
            )));
        }
        Ok(())
    }

    fn rotate_pairs(&mut self, occ: u64, vir: u64, theta: f64, ops: Option<&[usize]>) {
        if theta == 0.0 {
            return;
        }
        let (sn, c) = theta.sin_cos();
        let flip = occ | vir;
        for i in 0..self.amps.len() {
            let b = i as u64;
            if b & occ != occ || b & vir != 0 {
                continue;
            }
            let j = (b ^ flip) as usize;
            let s = ops.map_or(1.0, |ops| jw_sign(b, ops)) * sn;
            let (u, v) = (self.amps[i], self.amps[j]);
            self.amps[i] = u * c - v * s;
            self.amps[j] = v * c + u * s;
        }
    }

    /// Qubit excitation `p → q` without parity: rotates `(1_p 0_q) ↔ (0_p 1_q)` pairs.
    pub fn apply_qubit_single(&mut self, p: usize, q: usize, theta: f64) -> Result<()> {
        self.apply_excitation(&Excitation::single(p, q, Flavor::Qubit)?, theta)
    }

    /// Qubit excitation `(p, q) → (r, s)` without parity.
    pub fn apply_qubit_double(
        &mut self,
        p: usize,
        q: usize,
        r: usize,
        s: usize,
        theta: f64,
    ) -> Result<()> {
        self.apply_excitation(&Excitation::double([p, q], [r, s], Flavor::Qubit)?, theta)
    }

    /// Fermionic evolution of `e` regardless of its declared flavor.
    pub fn apply_fermionic_excitation(&mut self, e: &Excitation, theta: f64) -> Result<()> {
        self.apply_excitation(&e.clone().with_flavor(Flavor::Fermionic), theta)
    }

    /// `exp(θ(T − T†))` with `T` of the excitation's flavor.
    pub fn apply_excitation(&mut self, e: &Excitation, theta: f64) -> Result<()> {
        self.check_index(&[e.max_index()])?;
        let ops = ladder_order(e);
        let ops = (e.flavor() == Flavor::Fermionic).then_some(ops.as_slice());
        self.rotate_pairs(e.occupied_mask(), e.virtual_mask(), theta, ops);
        Ok(())
    }

    /// `(T − T†)|self⟩` as a new state (not normalized).
    pub fn apply_generator(&self, e: &Excitation) -> Result<Statevector> {
        self.check_index(&[e.max_index()])?;
        let (occ, vir) = (e.occupied_mask(), e.virtual_mask());
        let ops = ladder_order(e);
        let fermionic = e.flavor() == Flavor::Fermionic;
        let mut out = vec![Complex64::new(0.0, 0.0); self.amps.len()];
        for i in 0..self.amps.len() {
            let b = i as u64;
            if b & occ != occ || b & vir != 0 {
                continue;
            }
            let j = (b ^ occ ^ vir) as usize;
            let s = if fermionic { jw_sign(b, &ops) } else { 1.0 };
            out[j] += self.amps[i] * s;
            out[i] -= self.amps[j] * s;
        }
        Ok(Statevector {
            n_qubits: self.n_qubits,
            amps: out,
        })
    }

    /// Applies every excitation once, in ansatz order, with its parameter.
    pub fn apply_ansatz(&mut self, ansatz: &AnsatzSpec, theta: &[f64]) -> Result<()> {
        ansatz.check_parameters(theta)?;
        if ansatz.n_qubits() != self.n_qubits {
            return Err(Error::Simulation(format!(
                "ansatz acts on {} qubits, state has {}",
                ansatz.n_qubits(),
                self.n_qubits
            )));
        }
        for e in ansatz.excitations() {
            self.apply_excitation(e, theta[e.parameter_index()])?;
        }
        Ok(())
    }

    /// `⟨self|H|self⟩`, evaluated term by term.
    pub fn expectation(&self, h: &PauliSum) -> Result<f64> {
        if h.n_qubits() != self.n_qubits {
            return Err(Error::Simulation(format!(
                "operator on {} qubits, state on {}",
                h.n_qubits(),
                self.n_qubits
            )));
        }
        let mut by_x: std::collections::BTreeMap<u64, Vec<(u64, Complex64)>> = Default::default();
        let mut scale = 1.0f64;
        for (p, c) in h.iter() {
            let (_, phase) = p.apply_to_basis(0);
            by_x.entry(p.x_mask())
                .or_default()
                .push((p.z_mask(), phase.to_complex() * c));
            scale += c.abs();
        }
        let mut total = Complex64::new(0.0, 0.0);
        for (x, zs) in &by_x {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, a) in self.amps.iter().enumerate() {
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let b = i as u64;
                let mut w = Complex64::new(0.0, 0.0);
                for &(z, c) in zs {
                    if (z & b).count_ones() % 2 == 0 {
                        w += c;
                    } else {
                        w -= c;
                    }
                }
                acc += self.amps[(b ^ x) as usize].conj() * w * a;
            }
            total += acc;
        }
        if total.im.abs() > 1e-10 * scale {
            return Err(Error::Simulation(format!(
                "expectation has imaginary residual {:e}",
                total.im
            )));
        }
        Ok(total.re)
    }
}
