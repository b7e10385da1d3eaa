//! Jordan–Wigner mapping of the molecular Hamiltonian and the Hartree–Fock reference.
//!
//! Spin-orbitals are interleaved: qubit `2p` holds spatial orbital `p` with α
//! spin, qubit `2p + 1` its β partner. `a†_q ↦ ½(X_q − iY_q) ⊗ Z_{q−1} … Z_0`,
//! so `|1⟩` on a qubit means the spin-orbital is occupied. The tapering
//! symmetries found downstream depend on this ordering.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::integrals::IntegralSet;
use crate::pauli::{PauliAccumulator, PauliString, PauliSum, DEFAULT_DROP_TOLERANCE, MAX_QUBITS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpinOrbitalLayout {
    n_spatial: usize,
}

impl SpinOrbitalLayout {
    pub fn new(n_spatial: usize) -> Self {
        Self { n_spatial }
    }

    pub fn n_spatial(&self) -> usize {
        self.n_spatial
    }

    pub fn n_qubits(&self) -> usize {
        2 * self.n_spatial
    }

    pub fn alpha(&self, spatial: usize) -> usize {
        2 * spatial
    }

    pub fn beta(&self, spatial: usize) -> usize {
        2 * spatial + 1
    }

    pub fn spatial_of(spin_orbital: usize) -> usize {
        spin_orbital / 2
    }

    pub fn is_alpha(spin_orbital: usize) -> bool {
        spin_orbital % 2 == 0
    }
}

/// Computational basis state; bit `k` of `bits` is qubit `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BasisState {
    pub bits: u64,
    pub n_qubits: usize,
}

impl BasisState {
    pub fn new(bits: u64, n_qubits: usize) -> Result<Self> {
        if n_qubits > MAX_QUBITS || (n_qubits < 64 && bits >> n_qubits != 0) {
            return Err(Error::Simulation(format!(
                "bitstring {bits:#b} does not fit {n_qubits} qubits"
            )));
        }
        Ok(Self { bits, n_qubits })
    }

    pub fn is_occupied(&self, qubit: usize) -> bool {
        (self.bits >> qubit) & 1 == 1
    }

    pub fn n_particles(&self) -> usize {
        self.bits.count_ones() as usize
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n_qubits {
            write!(f, "{}", if self.is_occupied(q) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl FromStr for BasisState {
    type Err = Error;

    /// Parses `"1100"` (qubit 0 first).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('|').trim_end_matches('⟩').trim_end_matches('>');
        let mut bits = 0u64;
        for (q, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << q,
                _ => return Err(Error::Simulation(format!("invalid bitstring {s:?}"))),
            }
        }
        BasisState::new(bits, s.chars().count())
    }
}

/// Hartree–Fock occupation: the `n_electrons` lowest spin-orbitals.
pub fn hf_state(n_electrons: usize, n_qubits: usize) -> Result<BasisState> {
    if n_electrons > n_qubits {
        return Err(Error::Simulation(format!(
            "{n_electrons} electrons do not fit in {n_qubits} spin-orbitals"
        )));
    }
    let bits = if n_electrons == 64 {
        u64::MAX
    } else {
        (1u64 << n_electrons) - 1
    };
    BasisState::new(bits, n_qubits)
}

/// JW image of `a†_q` (`dagger`) or `a_q` as two weighted Pauli strings.
pub fn ladder_operator(n_qubits: usize, qubit: usize, dagger: bool) -> [(PauliString, Complex64); 2] {
    let z_string = (1u64 << qubit) - 1;
    let bit = 1u64 << qubit;
    let x = PauliString::from_masks(n_qubits, bit, z_string).expect("qubit in range");
    let y = PauliString::from_masks(n_qubits, bit, z_string | bit).expect("qubit in range");
    // Y-with-Z-string: (x: bit, z: zs|bit) is Y_q Z_{<q}.
    let sign = if dagger { -0.5 } else { 0.5 };
    [
        (x, Complex64::new(0.5, 0.0)),
        (y, Complex64::new(0.0, sign)),
    ]
}

/// Multiplies out a product of ladder operators, leftmost first, given as `(qubit, dagger)`.
pub fn ladder_product(n_qubits: usize, ops: &[(usize, bool)]) -> Vec<(PauliString, Complex64)> {
    let mut terms = vec![(PauliString::identity(n_qubits), Complex64::new(1.0, 0.0))];
    for &(q, dagger) in ops {
        let factor = ladder_operator(n_qubits, q, dagger);
        let mut next = Vec::with_capacity(terms.len() * 2);
        for (p, c) in &terms {
            for (f, w) in &factor {
                let prod = p.mul_unchecked(f);
                next.push((prod.unsigned(), c * w * prod.phase().to_complex()));
            }
        }
        terms = next;
    }
    terms
}

/// Jordan–Wigner qubit Hamiltonian over `2 · n_spatial` qubits.
///
/// `H = Σ h_pq a†_p a_q + ½ Σ (pq|rs) a†_p a†_r a_s a_q` with spin summed, plus the
/// constant as an identity coefficient.
pub fn jordan_wigner(s: &IntegralSet) -> Result<PauliSum> {
    jordan_wigner_with_tolerance(s, DEFAULT_DROP_TOLERANCE)
}

pub fn jordan_wigner_with_tolerance(s: &IntegralSet, drop_tolerance: f64) -> Result<PauliSum> {
    let layout = SpinOrbitalLayout::new(s.n_spatial());
    let n = s.n_spatial();
    let nq = layout.n_qubits();
    if nq > MAX_QUBITS {
        return Err(Error::TooLarge {
            what: "Jordan-Wigner mapping",
            needed: nq,
            limit: MAX_QUBITS,
            hint: "freeze core orbitals or select an active space",
        });
    }
    let mut acc = PauliAccumulator::new(nq);
    acc.add(&PauliString::identity(nq), Complex64::new(s.e_constant(), 0.0));

    for p in 0..n {
        for q in 0..n {
            let v = s.h(p, q);
            if v == 0.0 {
                continue;
            }
            for spin in 0..2 {
                let ops = [(2 * p + spin, true), (2 * q + spin, false)];
                for (pauli, w) in ladder_product(nq, &ops) {
                    acc.add(&pauli, w * v);
                }
            }
        }
    }

    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for t in 0..n {
                    let v = s.g(p, q, r, t);
                    if v == 0.0 {
                        continue;
                    }
                    for sigma in 0..2 {
                        for tau in 0..2 {
                            let (pp, qq, rr, tt) =
                                (2 * p + sigma, 2 * q + sigma, 2 * r + tau, 2 * t + tau);
                            if pp == rr || qq == tt {
                                continue;
                            }
                            let ops = [(pp, true), (rr, true), (tt, false), (qq, false)];
                            for (pauli, w) in ladder_product(nq, &ops) {
                                acc.add(&pauli, w * (0.5 * v));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(acc.into_sum(drop_tolerance)?)
}

/// `Σ_q a†_q a_q` = `Σ_q (I − Z_q)/2`.
pub fn number_operator(n_qubits: usize) -> PauliSum {
    let mut sum = PauliSum::new(n_qubits);
    sum.add_term(&PauliString::identity(n_qubits), n_qubits as f64 / 2.0)
        .expect("same size");
    for q in 0..n_qubits {
        let z = PauliString::from_masks(n_qubits, 0, 1 << q).expect("in range");
        sum.add_term(&z, -0.5).expect("same size");
    }
    sum
}

/// `Σ_p (n_pα − n_pβ)/2` in the interleaved layout.
pub fn sz_operator(n_qubits: usize) -> PauliSum {
    let mut sum = PauliSum::new(n_qubits);
    for q in 0..n_qubits {
        let z = PauliString::from_masks(n_qubits, 0, 1 << q).expect("in range");
        let sign = if SpinOrbitalLayout::is_alpha(q) { -0.25 } else { 0.25 };
        sum.add_term(&z, sign).expect("same size");
    }
    sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integrals::tests::random_integrals;

    #[test]
    fn hf_state_fills_lowest_orbitals() {
        let s = hf_state(2, 4).unwrap();
        assert_eq!(s.to_string(), "1100");
        assert_eq!(hf_state(0, 5).unwrap().bits, 0);
        assert!(hf_state(5, 4).is_err());
    }

    #[test]
    fn basis_state_parse() {
        let s: BasisState = "|0110⟩".parse().unwrap();
        assert_eq!(s.bits, 0b0110);
        assert_eq!(s.n_qubits, 4);
    }

    #[test]
    fn number_operator_from_ladders() {
        let mut acc = PauliAccumulator::new(1);
        for (p, w) in ladder_product(1, &[(0, true), (0, false)]) {
            acc.add(&p, w * 0.7);
        }
        let sum = acc.into_sum(1e-14).unwrap();
        assert!((sum.constant() - 0.35).abs() < 1e-15);
        assert!((sum.coefficient(&"Z".parse().unwrap()) + 0.35).abs() < 1e-15);
        assert_eq!(sum.len(), 2);
    }

    #[test]
    fn jw_conserves_particle_number_and_sz() {
        let s = random_integrals(3, 2, 5);
        let h = jordan_wigner(&s).unwrap();
        for op in [number_operator(6), sz_operator(6)] {
            // [H, N] = 0 exactly when the product of the two Hermitian sums is Hermitian
            assert!(h.multiply(&op).is_ok());
        }
    }

    #[test]
    fn hf_expectation_from_diagonal_terms() {
        let s = random_integrals(4, 4, 8);
        let h = jordan_wigner(&s).unwrap();
        let hf = hf_state(4, 8).unwrap();
        let mut e = 0.0;
        for (p, c) in h.iter() {
            if p.x_mask() == 0 {
                let (_, phase) = p.apply_to_basis(hf.bits);
                e += c * phase.to_complex().re;
            }
        }
        assert!((e - s.hf_energy()).abs() < 1e-10);
    }
}
