//! Command implementations behind the `truncvqe` binary.

pub mod config;
pub mod run;
pub mod tables;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use truncvqe::fermion::class_norm_profile;
use truncvqe::pauli::coefficient_histogram;
use truncvqe::simulator::exact_ground_energy_with_limit;
use truncvqe::{
    build_classification_ladder, classify, expectation, jordan_wigner, parse_fcidump, FermionHamiltonian,
    ImprovementReport, OperatorClass, StateVector,
};

pub use config::{AnsatzChoice, RunConfig, Strategy};

/// Default histogram edges: decades from 1e-4 up to the 0.1 cutoff.
pub const DEFAULT_EDGES: [f64; 4] = [1e-4, 1e-3, 1e-2, 0.1];

/// Default classification budgets (H3, H2, H1, Hq).
pub const CLASSIFICATION_BUDGETS: [usize; 4] = [500, 100, 200, 200];

/// Resolves `h2` to `fixtures/h2.fcidump` when no such file exists.
pub fn resolve_fixture(arg: &Path) -> PathBuf {
    if arg.exists() || arg.extension().is_some() {
        return arg.to_path_buf();
    }
    let candidate = Path::new("fixtures").join(arg).with_extension("fcidump");
    if candidate.exists() {
        candidate
    } else {
        arg.to_path_buf()
    }
}

pub fn load_fixture(path: &Path) -> Result<FermionHamiltonian> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_fcidump(&text).with_context(|| format!("{}", path.display()))
}

fn file_stem(path: &Path) -> String {
    path.file_stem().map_or_else(|| "fixture".into(), |s| s.to_string_lossy().into_owned())
}

/// Coefficient histogram and class profile as CSV text.
pub struct Stats {
    pub histogram: String,
    pub class_profile: String,
}

pub fn stats(h: &FermionHamiltonian, edges: &[f64]) -> Result<Stats> {
    let q = jordan_wigner(h);
    let hist = coefficient_histogram(&q, edges)?;
    let mut histogram = String::from("lower,upper,term_count,norm_sum\n");
    for b in &hist.bins {
        writeln!(histogram, "{},{},{},{:.12e}", b.lower, b.upper, b.term_count, b.norm_sum)?;
    }
    if let Some(c) = hist.identity {
        writeln!(histogram, "identity,,1,{:.12e}", c.abs())?;
    }

    let classified = classify(h);
    let profile = class_norm_profile(&classified);
    let mut class_profile = String::from("class,fermion_terms,l1_norm,qubit_terms\n");
    for &(class, n, norm) in &profile.entries {
        let qubit_terms = jordan_wigner(classified.fragment(class)).measurable_len();
        writeln!(class_profile, "{class},{n},{norm:.12e},{qubit_terms}")?;
    }
    Ok(Stats { histogram, class_profile })
}

pub fn cmd_stats(fixture: &Path, edges: &[f64], out: Option<&Path>) -> Result<String> {
    let h = load_fixture(fixture)?;
    let s = stats(&h, edges)?;
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
            let stem = file_stem(fixture);
            let hist = dir.join(format!("{stem}_histogram.csv"));
            let prof = dir.join(format!("{stem}_classes.csv"));
            std::fs::write(&hist, &s.histogram)?;
            std::fs::write(&prof, &s.class_profile)?;
            Ok(format!("wrote {}\nwrote {}\n", hist.display(), prof.display()))
        }
        None => Ok(format!("{}\n{}", s.histogram, s.class_profile)),
    }
}

pub fn cmd_jw(fixture: &Path, out: Option<&Path>) -> Result<String> {
    let text = jordan_wigner(&load_fixture(fixture)?).to_text();
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir)?;
            let path = dir.join(format!("{}.qubit.txt", file_stem(fixture)));
            std::fs::write(&path, text)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(text),
    }
}

pub fn cmd_classify(fixture: &Path) -> Result<String> {
    let h = load_fixture(fixture)?;
    let c = classify(&h);
    let profile = class_norm_profile(&c);
    let mut out = String::new();
    writeln!(out, "{:<6}{:>14}{:>14}{:>14}", "class", "fermion_terms", "l1_norm", "qubit_terms")?;
    for &(class, n, norm) in &profile.entries {
        let q = jordan_wigner(c.fragment(class));
        writeln!(out, "{:<6}{n:>14}{norm:>14.6}{:>14}", class.label(), q.measurable_len())?;
    }
    let diag = jordan_wigner(&c.combined(&[OperatorClass::Num, OperatorClass::Cou])?).is_diagonal();
    writeln!(out, "num+cou diagonal: {diag}")?;
    let ladder = build_classification_ladder(&c, CLASSIFICATION_BUDGETS)?;
    let report = ImprovementReport::from_schedule(&ladder)?;
    writeln!(out, "\n{:<6}{:>8}{:>8}{:>12}", "stage", "terms", "units", "iterations")?;
    for s in ladder.summaries() {
        writeln!(out, "{:<6}{:>8}{:>8}{:>12}", s.label, s.term_count, s.measurement_units, s.iterations)?;
    }
    writeln!(out, "improvement: {:.2}%", report.improvement_percent)?;
    Ok(out)
}

pub fn cmd_exact(fixture: &Path, max_qubits: usize) -> Result<String> {
    let h = load_fixture(fixture)?;
    let q = jordan_wigner(&h);
    let mut out = String::new();
    writeln!(out, "qubits = {}", q.num_qubits())?;
    writeln!(out, "terms = {}", q.len())?;
    if let Some(n) = h.num_electrons() {
        let hf = StateVector::basis(q.num_qubits(), (1usize << n) - 1)?;
        writeln!(out, "hartree_fock_energy = {:.12}", expectation(&hf, &q)?)?;
    }
    writeln!(out, "exact_ground_energy = {:.12}", exact_ground_energy_with_limit(&q, max_qubits)?)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_hamiltonian_gives_zero_tables() {
        let h = FermionHamiltonian::zero(4).unwrap();
        let s = stats(&h, &DEFAULT_EDGES).unwrap();
        for line in s.histogram.lines().skip(1) {
            assert!(line.ends_with(",0,0.000000000000e0"), "{line}");
        }
        for line in s.class_profile.lines().skip(1) {
            assert!(line.ends_with(",0,0.000000000000e0,0"), "{line}");
        }
    }
}
