//! Property suites shared by the oracle tests and the acceptance report.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symvqe::excitation::{generate_sd, ExcitationKind};
use symvqe::mapping::ladder_operator;
use symvqe::vqe::{gradient, objective, GradientMethod};
use symvqe::{
    build_ansatz, hf_state, jordan_wigner, minimize, AnsatzContext, AnsatzVariant, Excitation,
    Flavor, MinimizeOptions, Pauli, PauliString, Statevector,
};

use super::*;

pub const LETTERS: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

pub fn all_strings(n: usize) -> Vec<PauliString> {
    (0..4usize.pow(n as u32))
        .map(|mut k| {
            let letters: Vec<Pauli> = (0..n)
                .map(|_| {
                    let l = LETTERS[k % 4];
                    k /= 4;
                    l
                })
                .collect();
            PauliString::from_letters(&letters).unwrap()
        })
        .collect()
}

pub fn random_state(n_qubits: usize, rng: &mut ChaCha8Rng) -> Statevector {
    let mut amps: Vec<Complex64> = (0..1usize << n_qubits)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    Statevector::from_amplitudes(n_qubits, amps).unwrap()
}

pub fn as_vector(s: &Statevector) -> DVector<Complex64> {
    DVector::from_column_slice(s.amplitudes())
}

/// `T − T†` for `e`, built from Kronecker ladder operators.
pub fn dense_generator(n: usize, e: &Excitation, flavor: Flavor) -> CMat {
    let op = |q: usize| match flavor {
        Flavor::Fermionic => annihilator(n, q),
        Flavor::Qubit => lowering(n, q),
    };
    let dim = 1usize << n;
    let mut t = CMat::identity(dim, dim);
    for &v in e.virtuals() {
        t = t * dagger(&op(v));
    }
    for &o in e.occupied().iter().rev() {
        t = t * op(o);
    }
    &t - dagger(&t)
}

pub fn pauli_algebra_exhaustive() {
    for n in 1..=3 {
        let strings = all_strings(n);
        let dense: Vec<CMat> = strings.iter().map(dense_pauli).collect();
        for (a, da) in strings.iter().zip(&dense) {
            for bits in 0..1u64 << n {
                let (out, phase) = a.apply_to_basis(bits);
                let col = da.column(bits as usize);
                assert!((col[out as usize] - phase.to_complex()).norm() < 1e-15);
                assert!((col.norm() - 1.0).abs() < 1e-15);
            }
            for (b, db) in strings.iter().zip(&dense) {
                let prod = a.multiply(b).unwrap();
                assert!(max_abs_diff(&dense_pauli(&prod), &(da * db)) < 1e-14, "{a} * {b}");
                let commute = max_abs_diff(&(da * db), &(db * da)) < 1e-14;
                assert_eq!(a.commutes(b).unwrap(), commute, "{a} vs {b}");
                let qwc = a.letters().iter().zip(b.letters()).all(|(&x, y)| {
                    let (mx, my) = (single_qubit(x), single_qubit(y));
                    max_abs_diff(&(&mx * &my), &(&my * &mx)) < 1e-14
                });
                assert_eq!(a.qubit_wise_commutes(b).unwrap(), qwc, "{a} vs {b}");
            }
        }
    }
}

pub fn jordan_wigner_anticommutation() {
    for n in 1..=6 {
        let ops: Vec<(CMat, CMat)> = (0..n)
            .map(|q| {
                let a = dense_weighted(n, &ladder_operator(n, q, false));
                let ad = dense_weighted(n, &ladder_operator(n, q, true));
                (a, ad)
            })
            .collect();
        let dim = 1usize << n;
        let id = CMat::identity(dim, dim);
        for (q, (a, ad)) in ops.iter().enumerate() {
            assert!(max_abs_diff(a, &annihilator(n, q)) < 1e-14);
            assert!(max_abs_diff(ad, &dagger(a)) < 1e-14);
        }
        for (p, (ap, adp)) in ops.iter().enumerate() {
            for (q, (aq, adq)) in ops.iter().enumerate() {
                let expected = if p == q { id.clone() } else { CMat::zeros(dim, dim) };
                assert!(max_abs_diff(&(ap * adq + adq * ap), &expected) < 1e-14, "{{a_{p}, a†_{q}}}");
                assert!(max_abs_diff(&(ap * aq + aq * ap), &CMat::zeros(dim, dim)) < 1e-14);
                assert!(max_abs_diff(&(adp * adq + adq * adp), &CMat::zeros(dim, dim)) < 1e-14);
            }
        }
    }
}

pub fn excitation_dense_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for n in [4usize, 6] {
        for flavor in [Flavor::Fermionic, Flavor::Qubit] {
            let excitations = generate_sd(n, 2, true, flavor).unwrap();
            assert!(excitations.iter().any(|e| e.kind() == ExcitationKind::Double));
            for e in &excitations {
                let g = dense_generator(n, e, flavor);
                let theta = rng.random_range(-2.0..2.0);
                let u = (&g * Complex64::new(theta, 0.0)).exp();
                let psi = random_state(n, &mut rng);

                let mut evolved = psi.clone();
                evolved.apply_excitation(e, theta).unwrap();
                let want = &u * as_vector(&psi);
                let err = (as_vector(&evolved) - &want).norm();
                assert!(err < 1e-12, "{e:?} at θ={theta}: {err:e}");

                let gen = psi.apply_generator(e).unwrap();
                assert!((as_vector(&gen) - &g * as_vector(&psi)).norm() < 1e-12);
            }
        }
    }
}

pub fn norm_preservation() {
    let s = fixture("lih").freeze_core(1).unwrap();
    let ctx = AnsatzContext::from_integrals(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for variant in [AnsatzVariant::Uccsd, AnsatzVariant::Uccsdq, AnsatzVariant::Uccgsd] {
        let ansatz = build_ansatz(variant, &ctx).unwrap();
        let theta: Vec<f64> = (0..ansatz.n_parameters()).map(|_| rng.random_range(-1.0..1.0)).collect();
        let mut psi = random_state(10, &mut rng);
        psi.apply_ansatz(&ansatz, &theta).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-10, "{variant}: {}", psi.norm());
    }
}

pub fn gradient_vs_central_differences() {
    let s = fixture("lih").freeze_core(1).unwrap();
    let h = jordan_wigner(&s).unwrap();
    let reference = hf_state(s.n_electrons(), h.n_qubits()).unwrap();
    let ctx = AnsatzContext::from_integrals(&s);
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for variant in [AnsatzVariant::Uccsd, AnsatzVariant::Uccsdqs] {
        let ansatz = build_ansatz(variant, &ctx).unwrap();
        let theta: Vec<f64> = (0..ansatz.n_parameters()).map(|_| rng.random_range(-0.3..0.3)).collect();
        let step = 1e-5;
        let oracle: Vec<f64> = (0..theta.len())
            .map(|i| {
                let mut plus = theta.clone();
                let mut minus = theta.clone();
                plus[i] += step;
                minus[i] -= step;
                let fp = objective(&ansatz, &h, reference, &plus).unwrap();
                let fm = objective(&ansatz, &h, reference, &minus).unwrap();
                (fp - fm) / (2.0 * step)
            })
            .collect();
        for method in [GradientMethod::Adjoint, GradientMethod::FiniteDifference { step }] {
            let g = gradient(&ansatz, &h, reference, &theta, method).unwrap();
            for (a, b) in g.iter().zip(&oracle) {
                assert!((a - b).abs() < 1e-6, "{variant} {method:?}: {a} vs {b}");
            }
        }
    }
}

pub fn variational_bound_on_traces() {
    let cases: [(&str, usize, f64); 2] = [
        ("h2", 0, reference("h2", "fci_energy")),
        ("lih", 1, reference("lih", "frozen_core_fci_energy")),
    ];
    for (name, freeze, fci) in cases {
        let s = fixture(name).freeze_core(freeze).unwrap();
        let h = jordan_wigner(&s).unwrap();
        let reference = hf_state(s.n_electrons(), h.n_qubits()).unwrap();
        let ctx = AnsatzContext::from_integrals(&s).with_k(2);
        for variant in AnsatzVariant::ALL {
            let ansatz = build_ansatz(variant, &ctx).unwrap();
            let options = MinimizeOptions {
                gradient: GradientMethod::Adjoint,
                max_iterations: 60,
                ..Default::default()
            };
            let theta0 = symvqe::vqe::perturbed_start(ansatz.n_parameters(), 0.1, 1);
            let trace = minimize(&ansatz, &h, reference, Some(&theta0), &options).unwrap();
            let mut previous = f64::INFINITY;
            for entry in &trace.iterations {
                assert!(entry.energy >= fci - 1e-9, "{name} {variant}: {} < {fci}", entry.energy);
                assert!(entry.energy <= previous + 1e-12, "{name} {variant}: energy rose");
                previous = entry.energy;
            }
        }
    }
}
