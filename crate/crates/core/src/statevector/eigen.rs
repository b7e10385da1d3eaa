//! Lowest eigenvalue of a sparse Hermitian operator.
//!
//! The matrix is split into connected blocks (union-find over its sparsity
//! pattern); small blocks go to a dense symmetric eigensolver, larger ones to
//! Lanczos with full reorthogonalization. Complex blocks are embedded as real
//! symmetric matrices `[[A, −B], [B, A]]` for the dense path.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sparse::SparseOperator;
use crate::error::{Error, Result};
use crate::pauli::PauliSum;

pub const MAX_EXACT_QUBITS: usize = 16;
/// Blocks up to this dimension are diagonalized densely.
pub const DENSE_BLOCK_LIMIT: usize = 400;

const LANCZOS_MAX_KRYLOV: usize = 250;
const LANCZOS_RESIDUAL: f64 = 1e-10;
const LANCZOS_MAX_RESTARTS: usize = 60;

/// Minimum eigenvalue of `h`, optionally within a fixed particle-number sector.
pub fn exact_ground_energy(h: &PauliSum, particle_sector: Option<usize>) -> Result<f64> {
    check_size(h.n_qubits())?;
    let op = match particle_sector {
        Some(n) => SparseOperator::in_sector(h, n)?,
        None => SparseOperator::from_pauli_sum(h)?,
    };
    lowest_eigenvalue(&op)
}

/// Minimum eigenvalue of `h` projected onto the span of `basis` (ascending bitstrings).
pub fn exact_ground_energy_in_basis(h: &PauliSum, basis: Vec<u64>) -> Result<f64> {
    check_size(h.n_qubits())?;
    lowest_eigenvalue(&SparseOperator::from_pauli_sum_in_basis(h, basis)?)
}

fn check_size(n: usize) -> Result<()> {
    if n > MAX_EXACT_QUBITS {
        return Err(Error::TooLarge {
            what: "exact diagonalization",
            needed: n,
            limit: MAX_EXACT_QUBITS,
            hint: "restrict to a particle sector or reduce the active space",
        });
    }
    Ok(())
}

fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn connected_blocks(op: &SparseOperator) -> Vec<Vec<usize>> {
    let n = op.dim();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for (j, _) in op.row(i) {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut index_of_root = vec![usize::MAX; n];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index_of_root[r]].push(i);
    }
    blocks
}

/// Minimum eigenvalue over all connected blocks of `op`.
pub fn lowest_eigenvalue(op: &SparseOperator) -> Result<f64> {
    if op.dim() == 0 {
        return Err(Error::Simulation("empty basis has no eigenvalues".into()));
    }
    let mut best = f64::INFINITY;
    let mut local = vec![usize::MAX; op.dim()];
    for block in connected_blocks(op) {
        for (k, &i) in block.iter().enumerate() {
            local[i] = k;
        }
        let entries: Vec<Vec<(usize, Complex64)>> = block
            .iter()
            .map(|&i| op.row(i).map(|(j, v)| (local[j], v)).collect())
            .collect();
        let e = if block.len() <= DENSE_BLOCK_LIMIT {
            dense_lowest(&entries, op.is_real())
        } else {
            lanczos_lowest(&entries)?
        };
        best = best.min(e);
    }
    Ok(best)
}

fn dense_lowest(rows: &[Vec<(usize, Complex64)>], real: bool) -> f64 {
    let n = rows.len();
    let m = if real {
        let mut m = DMatrix::<f64>::zeros(n, n);
        for (i, row) in rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] += v.re;
            }
        }
        m
    } else {
        let mut m = DMatrix::<f64>::zeros(2 * n, 2 * n);
        for (i, row) in rows.iter().enumerate() {
            for &(j, v) in row {
                m[(i, j)] += v.re;
                m[(n + i, n + j)] += v.re;
                m[(i, n + j)] -= v.im;
                m[(n + i, j)] += v.im;
            }
        }
        m
    };
    SymmetricEigen::new(m).eigenvalues.min()
}

fn matvec(rows: &[Vec<(usize, Complex64)>], x: &[Complex64], y: &mut [Complex64]) {
    for (yi, row) in y.iter_mut().zip(rows) {
        *yi = row.iter().map(|&(j, v)| v * x[j]).sum();
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    for a in v.iter_mut() {
        *a /= n;
    }
    n
}

/// Hermitian Lanczos with full reorthogonalization and explicit restarts on the Ritz vector.
fn lanczos_lowest(rows: &[Vec<(usize, Complex64)>]) -> Result<f64> {
    let n = rows.len();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut start: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, 0.0))
        .collect();
    normalize(&mut start);
    let m_max = LANCZOS_MAX_KRYLOV.min(n);
    let mut last = f64::INFINITY;

    for _ in 0..LANCZOS_MAX_RESTARTS {
        let mut basis: Vec<Vec<Complex64>> = vec![start.clone()];
        let mut alpha: Vec<f64> = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut w = vec![Complex64::new(0.0, 0.0); n];
        loop {
            let j = basis.len() - 1;
            matvec(rows, &basis[j], &mut w);
            alpha.push(dot(&basis[j], &w).re);
            // two passes of Gram-Schmidt against the whole Krylov basis
            for _ in 0..2 {
                for b in &basis {
                    let c = dot(b, &w);
                    for (wi, bi) in w.iter_mut().zip(b) {
                        *wi -= c * bi;
                    }
                }
            }
            let b_next = w.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
            let exhausted = b_next < 1e-12 || basis.len() == n;
            let full = basis.len() == m_max;
            if !(exhausted || full || basis.len() % 10 == 0) {
                beta.push(b_next);
                basis.push(w.iter().map(|a| a / b_next).collect());
                continue;
            }
            let (theta, y) = tridiagonal_lowest(&alpha, &beta);
            let residual = b_next * y[y.len() - 1].abs();
            if residual < LANCZOS_RESIDUAL || exhausted {
                return Ok(theta);
            }
            if full {
                // restart from the current Ritz vector
                let mut ritz = vec![Complex64::new(0.0, 0.0); n];
                for (coef, b) in y.iter().zip(&basis) {
                    for (r, bi) in ritz.iter_mut().zip(b) {
                        *r += bi * *coef;
                    }
                }
                normalize(&mut ritz);
                start = ritz;
                last = theta;
                break;
            }
            beta.push(b_next);
            basis.push(w.iter().map(|a| a / b_next).collect());
        }
    }
    Err(Error::Simulation(format!(
        "Lanczos did not converge in {LANCZOS_MAX_RESTARTS} restarts (last estimate {last})"
    )))
}

/// Lowest eigenpair of the real symmetric tridiagonal matrix (alpha diagonal, beta off-diagonal).
fn tridiagonal_lowest(alpha: &[f64], beta: &[f64]) -> (f64, Vec<f64>) {
    let m = alpha.len();
    let mut t = DMatrix::<f64>::zeros(m, m);
    for i in 0..m {
        t[(i, i)] = alpha[i];
        if i + 1 < m {
            t[(i, i + 1)] = beta[i];
            t[(i + 1, i)] = beta[i];
        }
    }
    let eig = SymmetricEigen::new(t);
    let k = eig.eigenvalues.imin();
    (eig.eigenvalues[k], eig.eigenvectors.column(k).iter().copied().collect())
}
