//! Shared inputs for the criterion benchmarks in `benches/`.

use std::path::PathBuf;

use truncvqe::FermionHamiltonian;

pub fn fixture(name: &str) -> FermionHamiltonian {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.fcidump"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    truncvqe::parse_fcidump(&text).expect("fixture parses")
}

/// Deterministic angles in `[-1, 1)` without pulling in an RNG.
pub fn angles(count: usize) -> Vec<f64> {
    (0..count).map(|i| ((i * 7919) % 2000) as f64 / 1000.0 - 1.0).collect()
}
