//! Shipped FCIDUMP fixtures against their reference energies and metadata.

mod common;

use common::*;
use symvqe::{exact_ground_energy, jordan_wigner, IntegralSet};

#[test]
fn headers_match_reference_metadata() {
    for name in ["h2", "lih", "beh2", "ch3nh2", "ch2o2"] {
        let s = fixture(name);
        let refs = references();
        assert_eq!(s.n_spatial() as u64, refs[name]["norb"].as_u64().unwrap(), "{name}");
        assert_eq!(s.n_electrons() as u64, refs[name]["nelec"].as_u64().unwrap(), "{name}");
    }
    assert_eq!(fixture("ch3nh2").point_group_order(), 2);
    assert_eq!(fixture("ch2o2").point_group_order(), 2);
}

#[test]
fn fcidump_round_trip_preserves_integrals() {
    for name in ["lih", "ch3nh2"] {
        let s = fixture(name);
        let back = IntegralSet::parse_fcidump(&s.to_fcidump()).unwrap();
        assert_eq!(back.orbsym(), s.orbsym());
        assert!((back.hf_energy() - s.hf_energy()).abs() < 1e-10);
        let n = s.n_spatial();
        for p in 0..n {
            for q in 0..n {
                assert!((back.h(p, q) - s.h(p, q)).abs() < 1e-12);
                for r in 0..n {
                    assert!((back.g(p, q, r, r) - s.g(p, q, r, r)).abs() < 1e-12);
                }
            }
        }
    }
}

#[test]
fn full_and_frozen_core_fci() {
    let cases = [
        ("h2", 0, "fci_energy"),
        ("lih", 0, "fci_energy"),
        ("lih", 1, "frozen_core_fci_energy"),
        ("beh2", 1, "frozen_core_fci_energy"),
    ];
    for (name, freeze, key) in cases {
        let s = fixture(name).freeze_core(freeze).unwrap();
        let h = jordan_wigner(&s).unwrap();
        let e = exact_ground_energy(&h, Some(s.n_electrons())).unwrap();
        let want = reference(name, key);
        assert!((e - want).abs() < 1e-8, "{name} freeze {freeze}: {e} vs {want}");
    }
}

#[test]
fn frozen_core_keeps_the_hartree_fock_energy() {
    for (name, freeze) in [("lih", 1), ("beh2", 1), ("ch3nh2", 2), ("ch2o2", 3)] {
        let s = fixture(name);
        let frozen = s.freeze_core(freeze).unwrap();
        assert!((frozen.hf_energy() - s.hf_energy()).abs() < 1e-8, "{name}");
        assert_eq!(frozen.n_spatial(), s.n_spatial() - freeze);
    }
}

#[test]
fn active_space_casci_energies() {
    let refs = references();
    for name in ["ch3nh2", "ch2o2"] {
        for (label, want) in refs[name]["casci"].as_object().unwrap() {
            let (ne, no) = label.trim_end_matches('o').split_once('e').unwrap();
            let (ne, no): (usize, usize) = (ne.parse().unwrap(), no.parse().unwrap());
            if 2 * no > 12 {
                continue;
            }
            let s = fixture(name).select_active_space(ne, no).unwrap();
            let h = jordan_wigner(&s).unwrap();
            let e = exact_ground_energy(&h, Some(ne)).unwrap();
            let want = want.as_f64().unwrap();
            assert!((e - want).abs() < 1e-8, "{name} {label}: {e} vs {want}");
        }
    }
}

#[test]
fn casci_energies_decrease_with_window_size() {
    let s = fixture("ch3nh2");
    let mut last = s.hf_energy();
    for k in 1..=4 {
        let a = s.select_active_space(2 * k, 2 * k).unwrap();
        let e = exact_ground_energy(&jordan_wigner(&a).unwrap(), Some(2 * k)).unwrap();
        assert!(e <= last + 1e-10, "({0}e,{0}o) raised the energy", 2 * k);
        last = e;
    }
}
