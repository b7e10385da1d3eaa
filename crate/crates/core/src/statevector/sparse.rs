use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;

use super::Statevector;
use crate::error::{Error, Result};
use crate::pauli::PauliSum;

/// Register size above which sparse matrices are not assembled.
pub const MAX_SPARSE_QUBITS: usize = 24;

/// All `n_qubits`-bit states with `n_particles` bits set, ascending.
pub fn sector_basis(n_qubits: usize, n_particles: usize) -> Vec<u64> {
    if n_particles > n_qubits {
        return Vec::new();
    }
    // Gosper's hack
    let mut out = Vec::new();
    if n_particles == 0 {
        return vec![0];
    }
    let mut v: u64 = (1 << n_particles) - 1;
    let end = 1u64 << n_qubits;
    while v < end {
        out.push(v);
        let t = v | (v - 1);
        v = (t + 1) | (((!t & (t + 1)) - 1) >> (v.trailing_zeros() + 1));
    }
    out
}

/// Hermitian operator in CSR form over a list of basis states.
///
/// Built from a [`PauliSum`] by acting with every term on every basis state; entries
/// leading outside the basis are dropped, i.e. the result is the projection onto the
/// span of the basis.
#[derive(Debug, Clone)]
pub struct SparseOperator {
    n_qubits: usize,
    basis: Option<Vec<u64>>,
    row_ptr: Vec<usize>,
    cols: Vec<u32>,
    vals: Vec<Complex64>,
    real: bool,
}

impl SparseOperator {
    /// Matrix over the full `2^n` space.
    pub fn from_pauli_sum(h: &PauliSum) -> Result<Self> {
        Self::build(h, None)
    }

    /// Matrix restricted to `basis` (sorted, duplicate-free bitstrings).
    pub fn from_pauli_sum_in_basis(h: &PauliSum, basis: Vec<u64>) -> Result<Self> {
        if basis.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Simulation("basis must be strictly ascending".into()));
        }
        if let Some(&last) = basis.last() {
            if h.n_qubits() < 64 && last >> h.n_qubits() != 0 {
                return Err(Error::Simulation(format!(
                    "basis state {last:#b} outside {} qubits",
                    h.n_qubits()
                )));
            }
        }
        Self::build(h, Some(basis))
    }

    /// Fixed particle-number sector.
    pub fn in_sector(h: &PauliSum, n_particles: usize) -> Result<Self> {
        Self::from_pauli_sum_in_basis(h, sector_basis(h.n_qubits(), n_particles))
    }

    fn build(h: &PauliSum, basis: Option<Vec<u64>>) -> Result<Self> {
        let n = h.n_qubits();
        if n > MAX_SPARSE_QUBITS {
            return Err(Error::TooLarge {
                what: "sparse Hamiltonian",
                needed: n,
                limit: MAX_SPARSE_QUBITS,
                hint: "reduce the problem with --freeze or --active",
            });
        }
        let mut by_x: BTreeMap<u64, Vec<(u64, Complex64)>> = BTreeMap::new();
        for (p, c) in h.iter() {
            let (_, phase) = p.apply_to_basis(0);
            by_x.entry(p.x_mask())
                .or_default()
                .push((p.z_mask(), phase.to_complex() * c));
        }
        let dim = basis.as_ref().map_or(1usize << n, Vec::len);
        let mut lookup = Vec::new();
        if let Some(b) = &basis {
            lookup = vec![u32::MAX; 1 << n];
            for (k, &s) in b.iter().enumerate() {
                lookup[s as usize] = k as u32;
            }
        }
        let state_of = |k: usize| basis.as_ref().map_or(k as u64, |b| b[k]);

        let rows: Vec<Vec<(u32, Complex64)>> = (0..dim)
            .into_par_iter()
            .map(|k| {
                let b = state_of(k);
                let mut row = Vec::new();
                for (x, zs) in &by_x {
                    let target = b ^ x;
                    let col = if basis.is_some() {
                        match lookup[target as usize] {
                            u32::MAX => continue,
                            c => c,
                        }
                    } else {
                        target as u32
                    };
                    // ⟨target|H|b⟩
                    let mut w = Complex64::new(0.0, 0.0);
                    for &(z, c) in zs {
                        if (z & b).count_ones() % 2 == 0 {
                            w += c;
                        } else {
                            w -= c;
                        }
                    }
                    if w.norm() > 1e-14 {
                        // H[b][target] = conj(H[target][b])
                        row.push((col, w.conj()));
                    }
                }
                row.sort_by_key(|e| e.0);
                row
            })
            .collect();

        let mut row_ptr = Vec::with_capacity(dim + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        let mut real = true;
        row_ptr.push(0);
        for row in rows {
            for (c, v) in row {
                if v.im.abs() > 1e-14 {
                    real = false;
                }
                cols.push(c);
                vals.push(v);
            }
            row_ptr.push(cols.len());
        }
        Ok(Self {
            n_qubits: n,
            basis,
            row_ptr,
            cols,
            vals,
            real,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.row_ptr.len() - 1
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    /// `None` for the full computational basis.
    pub fn basis(&self) -> Option<&[u64]> {
        self.basis.as_deref()
    }

    /// True when every stored entry is real.
    pub fn is_real(&self) -> bool {
        self.real
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Complex64)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()]
            .iter()
            .zip(&self.vals[r])
            .map(|(&c, &v)| (c as usize, v))
    }

    /// `y = H x` in the operator's own basis.
    pub fn apply(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (i, yi) in y.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for k in self.row_ptr[i]..self.row_ptr[i + 1] {
                acc += self.vals[k] * x[self.cols[k] as usize];
            }
            *yi = acc;
        }
    }

    fn gather(&self, v: &Statevector) -> Vec<Complex64> {
        match &self.basis {
            None => v.amplitudes().to_vec(),
            Some(b) => b.iter().map(|&s| v.amplitudes()[s as usize]).collect(),
        }
    }

    fn check_state(&self, v: &Statevector) -> Result<()> {
        if v.n_qubits() != self.n_qubits {
            return Err(Error::Simulation(format!(
                "operator on {} qubits, state on {}",
                self.n_qubits,
                v.n_qubits()
            )));
        }
        Ok(())
    }

    /// `⟨v|H|v⟩`, counting only the components of `v` inside the basis.
    pub fn expectation(&self, v: &Statevector) -> Result<f64> {
        self.check_state(v)?;
        let x = self.gather(v);
        let mut y = vec![Complex64::new(0.0, 0.0); x.len()];
        self.apply(&x, &mut y);
        let e: Complex64 = x.iter().zip(&y).map(|(a, b)| a.conj() * b).sum();
        Ok(e.re)
    }

    /// `H|v⟩` as a full-register state; components outside the basis are zero.
    pub fn apply_to_state(&self, v: &Statevector) -> Result<Statevector> {
        self.check_state(v)?;
        let x = self.gather(v);
        let mut y = vec![Complex64::new(0.0, 0.0); x.len()];
        self.apply(&x, &mut y);
        let amps = match &self.basis {
            None => y,
            Some(b) => {
                let mut full = vec![Complex64::new(0.0, 0.0); 1 << self.n_qubits];
                for (&s, a) in b.iter().zip(y) {
                    full[s as usize] = a;
                }
                full
            }
        };
        Statevector::from_amplitudes(self.n_qubits, amps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mapping::hf_state;

    #[test]
    fn sector_basis_counts() {
        assert_eq!(sector_basis(4, 2), vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        assert_eq!(sector_basis(10, 3).len(), 120);
        assert_eq!(sector_basis(3, 0), vec![0]);
        assert!(sector_basis(2, 3).is_empty());
    }

    #[test]
    fn matches_term_by_term_expectation() {
        let h = PauliSum::from_text("0.5 XY\n-0.25 ZZ\n0.3 YX\n0.1 IZ\n1.5 II").unwrap();
        let mut v = Statevector::prepare_basis("10".parse().unwrap()).unwrap();
        v.apply_qubit_single(0, 1, 0.7).unwrap();
        let op = SparseOperator::from_pauli_sum(&h).unwrap();
        let a = op.expectation(&v).unwrap();
        let b = v.expectation(&h).unwrap();
        assert!((a - b).abs() < 1e-14, "{a} vs {b}");
        assert!(!op.is_real());
    }

    #[test]
    fn sector_restriction_keeps_particle_states() {
        let h = PauliSum::from_text("0.5 XX\n0.5 YY\n-1.0 ZI").unwrap();
        let op = SparseOperator::in_sector(&h, 1).unwrap();
        assert_eq!(op.dim(), 2);
        let v = Statevector::prepare_basis(hf_state(1, 2).unwrap()).unwrap();
        let full = SparseOperator::from_pauli_sum(&h).unwrap();
        assert!((op.expectation(&v).unwrap() - full.expectation(&v).unwrap()).abs() < 1e-15);
    }
}
