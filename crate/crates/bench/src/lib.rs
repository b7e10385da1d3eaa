//! Inputs shared by the benchmarks.

use std::path::PathBuf;

use symvqe::IntegralSet;

/// Loads `fixtures/<name>.fcidump` and freezes `n_frozen` core orbitals.
pub fn load(name: &str, n_frozen: usize) -> IntegralSet {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(format!("{name}.fcidump"));
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read {}: {e}", path.display()));
    let s = IntegralSet::parse_fcidump(&text).unwrap_or_else(|e| panic!("{name}: {e}"));
    s.freeze_core(n_frozen).unwrap_or_else(|e| panic!("{name}: {e}"))
}
