//! Acceptance report: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_RED` are reported as FAIL but do not fail the run; any
//! other failure exits non-zero.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::{fixture, reference, suites};
use symvqe::excitation::{
    estimate_resources, generate_paired_doubles, generate_sd, ExcitationKind, HamiltonianSummary,
};
use symvqe::grouping::group_count;
use symvqe::tapering::{find_z2_symmetries, taper};
use symvqe::vqe::{perturbed_start, GradientMethod};
use symvqe::{
    build_ansatz, exact_ground_energy, hf_state, jordan_wigner, minimize, AnsatzContext,
    AnsatzVariant, CostModel, Flavor, GroupingMode, IntegralSet, MinimizeOptions,
    CHEMICAL_ACCURACY,
};

const KNOWN_RED: &[&str] = &["grouping"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(ok: bool, detail: String) -> Outcome {
    Outcome { pass: ok, detail }
}

fn frozen(name: &str, n_frozen: usize) -> IntegralSet {
    fixture(name).freeze_core(n_frozen).unwrap()
}

fn excitation_counts() -> Outcome {
    let start = Instant::now();
    let doubles = |n_qubits, n_electrons| {
        generate_sd(n_qubits, n_electrons, false, Flavor::Fermionic)
            .unwrap()
            .iter()
            .filter(|e| e.kind() == ExcitationKind::Double)
            .count()
    };
    let ch3nh2 = frozen("ch3nh2", 2);
    let ch2o2 = frozen("ch2o2", 3);
    let sd = (
        doubles(ch3nh2.n_spin_orbitals(), ch3nh2.n_electrons()),
        doubles(ch2o2.n_spin_orbitals(), ch2o2.n_electrons()),
    );
    let paired = (
        generate_paired_doubles(ch3nh2.n_spatial(), Flavor::Qubit).unwrap().len(),
        generate_paired_doubles(ch2o2.n_spatial(), Flavor::Qubit).unwrap().len(),
    );
    let elapsed = start.elapsed();
    check(
        sd == (2394, 2745) && paired == (78, 91) && elapsed < Duration::from_secs(1),
        format!(
            "SD doubles {}/{} (want 2394/2745), paired doubles {}/{} (want 78/91), {:.3} s",
            sd.0,
            sd.1,
            paired.0,
            paired.1,
            elapsed.as_secs_f64()
        ),
    )
}

fn qubit_cost_model() -> Outcome {
    let mut got = Vec::new();
    for (name, n_frozen) in [("ch3nh2", 2), ("ch2o2", 3)] {
        let s = frozen(name, n_frozen);
        let ansatz = build_ansatz(AnsatzVariant::KUpGsdq, &AnsatzContext::from_integrals(&s)).unwrap();
        let summary = HamiltonianSummary {
            n_qubits: s.n_spin_orbitals(),
            pauli_terms: 0,
            measurement_circuits: 0,
            grouping: GroupingMode::QubitWise,
        };
        let report = estimate_resources(&ansatz, &CostModel::default(), &summary, false);
        got.push(report.two_qubit_gates);
    }
    check(
        got == [1014, 1183],
        format!("k-UpGSDQ two-qubit gates {}/{} (want 1014/1183)", got[0], got[1]),
    )
}

fn tapering() -> Outcome {
    let tapered_size = |name: &str, n_frozen: usize| {
        let s = frozen(name, n_frozen);
        let h = jordan_wigner(&s).unwrap();
        let sym = find_z2_symmetries(&h).unwrap();
        (h.n_qubits(), h.n_qubits() - sym.len())
    };
    let lih = tapered_size("lih", 1);
    let beh2 = tapered_size("beh2", 1);
    let n_sym = |name: &str, n_frozen: usize| {
        find_z2_symmetries(&jordan_wigner(&frozen(name, n_frozen)).unwrap())
            .unwrap()
            .len()
    };
    let large = (n_sym("ch3nh2", 2), n_sym("ch2o2", 3));

    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (name, n_frozen) in [("h2", 0), ("lih", 1), ("beh2", 1)] {
        let s = frozen(name, n_frozen);
        let h = jordan_wigner(&s).unwrap();
        let hf = hf_state(s.n_electrons(), h.n_qubits()).unwrap();
        let sym = find_z2_symmetries(&h).unwrap().select_sector(hf).unwrap();
        let t = taper(&h, &sym).unwrap();
        let full = exact_ground_energy(&h, Some(s.n_electrons())).unwrap();
        let reduced = exact_ground_energy(&t, None).unwrap();
        worst = worst.max((full - reduced).abs());
    }
    let elapsed = start.elapsed();
    check(
        lih == (10, 6)
            && beh2 == (12, 7)
            && large == (3, 3)
            && worst <= 1e-8
            && elapsed < Duration::from_secs(60),
        format!(
            "LiH {}->{}, BeH2 {}->{}, symmetries CH3NH2/CH2O2 {}/{}, max |E_tapered - E_full| {worst:.1e} over H2/LiH/BeH2 in {:.1} s",
            lih.0,
            lih.1,
            beh2.0,
            beh2.1,
            large.0,
            large.1,
            elapsed.as_secs_f64()
        ),
    )
}

struct VqeCase {
    label: &'static str,
    system: IntegralSet,
    variant: AnsatzVariant,
    k: usize,
    k_up_singles: bool,
    perturb: Option<(f64, u64)>,
    fci: f64,
}

fn vqe_convergence() -> Outcome {
    let lih = || frozen("lih", 1);
    let beh2 = || frozen("beh2", 1);
    let ch3nh2 = || fixture("ch3nh2").select_active_space(6, 6).unwrap();
    let lih_fci = reference("lih", "frozen_core_fci_energy");
    let beh2_fci = reference("beh2", "frozen_core_fci_energy");
    let cas = common::references()["ch3nh2"]["casci"]["6e6o"].as_f64().unwrap();
    let case = |label, system, variant, fci| VqeCase {
        label,
        system,
        variant,
        k: 1,
        k_up_singles: false,
        perturb: None,
        fci,
    };
    let cases = vec![
        case("LiH UCCSD", lih(), AnsatzVariant::Uccsd, lih_fci),
        case("LiH UCCSDQ", lih(), AnsatzVariant::Uccsdq, lih_fci),
        case("LiH UCCSDQs", lih(), AnsatzVariant::Uccsdqs, lih_fci),
        case("BeH2 UCCSDQs", beh2(), AnsatzVariant::Uccsdqs, beh2_fci),
        VqeCase {
            k: 4,
            k_up_singles: true,
            perturb: Some((0.1, 0)),
            ..case("BeH2 4-UpGSDQ", beh2(), AnsatzVariant::KUpGsdq, beh2_fci)
        },
        case("CH3NH2(6e,6o) UCCSDQ", ch3nh2(), AnsatzVariant::Uccsdq, cas),
        case("CH3NH2(6e,6o) UCCSDQs", ch3nh2(), AnsatzVariant::Uccsdqs, cas),
    ];
    let mut all = true;
    let mut parts = Vec::new();
    for c in cases {
        let start = Instant::now();
        let ctx = AnsatzContext::from_integrals(&c.system)
            .with_k(c.k)
            .with_k_up_singles(c.k_up_singles);
        let ansatz = build_ansatz(c.variant, &ctx).unwrap();
        let h = jordan_wigner(&c.system).unwrap();
        let reference = hf_state(c.system.n_electrons(), h.n_qubits()).unwrap();
        let theta0 = c
            .perturb
            .map(|(scale, seed)| perturbed_start(ansatz.n_parameters(), scale, seed));
        let options = MinimizeOptions {
            gradient: GradientMethod::Adjoint,
            ..Default::default()
        };
        let trace = minimize(&ansatz, &h, reference, theta0.as_deref(), &options).unwrap();
        let err = trace.final_energy - c.fci;
        let ok = err.abs() <= CHEMICAL_ACCURACY;
        all &= ok;
        parts.push(format!(
            "{} {:.1e}{} ({:.1} s)",
            c.label,
            err,
            if ok { "" } else { " FAIL" },
            start.elapsed().as_secs_f64()
        ));
    }
    check(all, format!("E - FCI: {}", parts.join("; ")))
}

fn term_counts() -> Outcome {
    let terms = |name, n_frozen| jordan_wigner(&frozen(name, n_frozen)).unwrap().len();
    let got = (terms("ch3nh2", 2), terms("ch2o2", 3));
    check(
        got == (20908, 30423),
        format!("Pauli terms CH3NH2 {} / CH2O2 {} (want 20908/30423)", got.0, got.1),
    )
}

fn grouping() -> Outcome {
    let mut within = true;
    let mut qwc_parts = Vec::new();
    for (name, n_frozen, target) in [("ch3nh2", 2, 4144.0), ("ch2o2", 3, 5103.0)] {
        let h = jordan_wigner(&frozen(name, n_frozen)).unwrap();
        let n = group_count(&h, GroupingMode::QubitWise);
        let rel = (n as f64 - target) / target;
        within &= rel.abs() <= 0.10;
        qwc_parts.push(format!("{name} {n} vs {target} ({:+.0}%)", 100.0 * rel));
    }
    let mut never_exceeds = true;
    let mut general_parts = Vec::new();
    for (name, n_frozen) in [("h2", 0), ("lih", 1), ("beh2", 1), ("ch3nh2", 2), ("ch2o2", 3)] {
        let h = jordan_wigner(&frozen(name, n_frozen)).unwrap();
        let q = group_count(&h, GroupingMode::QubitWise);
        let g = group_count(&h, GroupingMode::General);
        never_exceeds &= g <= q;
        general_parts.push(format!("{name} {g}<={q}"));
    }
    check(
        within && never_exceeds,
        format!(
            "qubit-wise {}; general vs qubit-wise: {}",
            qwc_parts.join(", "),
            general_parts.join(", ")
        ),
    )
}

fn property_suites() -> Outcome {
    let suites: [(&str, fn()); 6] = [
        ("Pauli algebra", suites::pauli_algebra_exhaustive),
        ("JW anticommutation", suites::jordan_wigner_anticommutation),
        ("dense exponentials", suites::excitation_dense_equivalence),
        ("gradient vs FD", suites::gradient_vs_central_differences),
        ("norm", suites::norm_preservation),
        ("variational bound", suites::variational_bound_on_traces),
    ];
    let mut all = true;
    let mut parts = Vec::new();
    for (name, f) in suites {
        let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
        all &= ok;
        parts.push(format!("{name} {}", if ok { "ok" } else { "FAILED" }));
    }
    check(all, parts.join(", "))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("excitation counts", excitation_counts),
        ("qubit cost model", qubit_cost_model),
        ("tapering", tapering),
        ("vqe convergence", vqe_convergence),
        ("term counts", term_counts),
        ("grouping", grouping),
        ("property suites", property_suites),
    ];
    let mut unexpected = Vec::new();
    let mut passed = 0;
    for (name, f) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Outcome {
            pass: false,
            detail: "panicked".into(),
        });
        let tag = if outcome.pass { "PASS" } else { "FAIL" };
        println!("{tag}  {name}: {}", outcome.detail);
        if outcome.pass {
            passed += 1;
        } else if !KNOWN_RED.contains(&name) {
            unexpected.push(name);
        }
    }
    println!("acceptance: {passed}/{} criteria pass", criteria.len());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
