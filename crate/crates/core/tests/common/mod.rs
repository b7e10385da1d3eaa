//! Shared fixture loading and dense-matrix oracles for integration tests.
//!
//! The dense operators here are built from 2×2 blocks with Kronecker products and
//! never go through the library's symplectic Pauli arithmetic.

#![allow(dead_code)]

use std::path::PathBuf;

use nalgebra::DMatrix;
use num_complex::Complex64;
use symvqe::{IntegralSet, Pauli, PauliString, PauliSum};

pub mod suites;

pub type CMat = DMatrix<Complex64>;

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

pub fn fixture(name: &str) -> IntegralSet {
    let path = root().join("fixtures").join(format!("{name}.fcidump"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    IntegralSet::parse_fcidump(&text).unwrap()
}

pub fn references() -> serde_json::Value {
    let text = std::fs::read_to_string(root().join("fixtures/references.json")).unwrap();
    serde_json::from_str(&text).unwrap()
}

pub fn reference(molecule: &str, key: &str) -> f64 {
    references()[molecule][key]
        .as_f64()
        .unwrap_or_else(|| panic!("references.json has no {molecule}.{key}"))
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn single_qubit(p: Pauli) -> CMat {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match p {
        Pauli::I => CMat::from_row_slice(2, 2, &[o, z, z, o]),
        Pauli::X => CMat::from_row_slice(2, 2, &[z, o, o, z]),
        Pauli::Y => CMat::from_row_slice(2, 2, &[z, -i, i, z]),
        Pauli::Z => CMat::from_row_slice(2, 2, &[o, z, z, -o]),
    }
}

/// `factors[q]` acts on qubit `q`; qubit 0 is the least significant index bit.
pub fn kron_qubits(factors: &[CMat]) -> CMat {
    let mut m = CMat::identity(1, 1);
    for f in factors.iter().rev() {
        m = m.kronecker(f);
    }
    m
}

/// Dense matrix of a Pauli string including its phase.
pub fn dense_pauli(p: &PauliString) -> CMat {
    let factors: Vec<CMat> = p.letters().into_iter().map(single_qubit).collect();
    kron_qubits(&factors) * p.phase().to_complex()
}

pub fn dense_sum(h: &PauliSum) -> CMat {
    let dim = 1usize << h.n_qubits();
    let mut m = CMat::zeros(dim, dim);
    for (p, coeff) in h.iter() {
        m += dense_pauli(&p) * c(coeff, 0.0);
    }
    m
}

pub fn dense_weighted(n_qubits: usize, terms: &[(PauliString, Complex64)]) -> CMat {
    let dim = 1usize << n_qubits;
    let mut m = CMat::zeros(dim, dim);
    for (p, w) in terms {
        m += dense_pauli(p) * *w;
    }
    m
}

/// `|0⟩⟨1|` on `qubit` with identities elsewhere (no parity string).
pub fn lowering(n_qubits: usize, qubit: usize) -> CMat {
    let factors: Vec<CMat> = (0..n_qubits)
        .map(|q| {
            if q == qubit {
                CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            } else {
                CMat::identity(2, 2)
            }
        })
        .collect();
    kron_qubits(&factors)
}

/// Jordan–Wigner annihilator `Z_0 … Z_{q−1} |0⟩⟨1|_q` built from Kronecker factors.
pub fn annihilator(n_qubits: usize, qubit: usize) -> CMat {
    let factors: Vec<CMat> = (0..n_qubits)
        .map(|q| {
            if q < qubit {
                single_qubit(Pauli::Z)
            } else if q == qubit {
                CMat::from_row_slice(2, 2, &[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
            } else {
                CMat::identity(2, 2)
            }
        })
        .collect();
    kron_qubits(&factors)
}

pub fn dagger(m: &CMat) -> CMat {
    m.adjoint()
}

/// Second-quantized Hamiltonian assembled directly on occupation-number bitstrings.
///
/// Applies `a†_p a†_r a_s a_q` with the canonical ordering sign, without any qubit
/// mapping, and returns the dense matrix restricted to `basis`.
pub fn fock_hamiltonian(s: &IntegralSet, basis: &[u64]) -> DMatrix<f64> {
    let n = s.n_spatial();
    let index: std::collections::HashMap<u64, usize> =
        basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut m = DMatrix::<f64>::zeros(basis.len(), basis.len());
    let annihilate = |bits: u64, q: usize| -> Option<(u64, f64)> {
        if bits >> q & 1 == 0 {
            return None;
        }
        let sign = if (bits & ((1u64 << q) - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        Some((bits ^ (1 << q), sign))
    };
    let create = |bits: u64, q: usize| -> Option<(u64, f64)> {
        if bits >> q & 1 == 1 {
            return None;
        }
        let sign = if (bits & ((1u64 << q) - 1)).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        Some((bits | (1 << q), sign))
    };
    let so = |p: usize, spin: usize| 2 * p + spin;
    for (col, &ket) in basis.iter().enumerate() {
        m[(col, col)] += s.e_constant();
        for p in 0..n {
            for q in 0..n {
                let h = s.h(p, q);
                if h == 0.0 {
                    continue;
                }
                for sigma in 0..2 {
                    let Some((b1, s1)) = annihilate(ket, so(q, sigma)) else { continue };
                    let Some((b2, s2)) = create(b1, so(p, sigma)) else { continue };
                    if let Some(&row) = index.get(&b2) {
                        m[(row, col)] += h * s1 * s2;
                    }
                }
            }
        }
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    for t in 0..n {
                        let g = s.g(p, q, r, t);
                        if g == 0.0 {
                            continue;
                        }
                        for sigma in 0..2 {
                            for tau in 0..2 {
                                let Some((b1, s1)) = annihilate(ket, so(q, sigma)) else { continue };
                                let Some((b2, s2)) = annihilate(b1, so(t, tau)) else { continue };
                                let Some((b3, s3)) = create(b2, so(r, tau)) else { continue };
                                let Some((b4, s4)) = create(b3, so(p, sigma)) else { continue };
                                if let Some(&row) = index.get(&b4) {
                                    m[(row, col)] += 0.5 * g * s1 * s2 * s3 * s4;
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    m
}

/// Bitstrings of `n_qubits` with exactly `n_particles` set bits.
pub fn particle_basis(n_qubits: usize, n_particles: usize) -> Vec<u64> {
    (0..1u64 << n_qubits)
        .filter(|b| b.count_ones() as usize == n_particles)
        .collect()
}

pub fn min_eigenvalue(m: DMatrix<f64>) -> f64 {
    m.symmetric_eigen().eigenvalues.min()
}

pub fn sorted_spectrum(m: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = m.symmetric_eigen().eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Random real integrals with the eightfold symmetry, all orbitals in irrep 1.
pub fn random_integrals(n: usize, n_electrons: usize, seed: u64) -> IntegralSet {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut h = vec![0.0; n * n];
    for p in 0..n {
        for q in 0..=p {
            let v = rng.random_range(-1.0..1.0);
            h[p * n + q] = v;
            h[q * n + p] = v;
        }
    }
    let mut g = vec![0.0; n * n * n * n];
    let idx = |p: usize, q: usize, r: usize, s: usize| ((p * n + q) * n + r) * n + s;
    for p in 0..n {
        for q in 0..n {
            for r in 0..n {
                for s in 0..n {
                    if g[idx(p, q, r, s)] != 0.0 {
                        continue;
                    }
                    let v = rng.random_range(-0.5..0.5);
                    for (a, b, cc, d) in [
                        (p, q, r, s),
                        (q, p, r, s),
                        (p, q, s, r),
                        (q, p, s, r),
                        (r, s, p, q),
                        (s, r, p, q),
                        (r, s, q, p),
                        (s, r, q, p),
                    ] {
                        g[idx(a, b, cc, d)] = v;
                    }
                }
            }
        }
    }
    IntegralSet::new(n, n_electrons, h, g, rng.random_range(-1.0..1.0), vec![1; n]).unwrap()
}
