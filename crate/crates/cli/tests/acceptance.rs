//! Acceptance criteria 1-7. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any fails.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::io::Write as _;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::oracle::{
    annihilation_matrix, creation_matrix, dense_expectation, fermion_hamiltonian_matrix, hamiltonian_matrix,
    hermitian_eigenvalues, max_abs_diff, string_matrix, CMatrix,
};
use common::{load_fixture, random_fermion_hamiltonian, random_hamiltonian, random_state, FIXTURES};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use truncvqe::fermion::ladder_operator;
use truncvqe::vqe::staged_vqe_with;
use truncvqe::{
    build_cutoff_ladder, classify, expectation, jordan_wigner, truncate_by_cutoff, CutoffSchedule, OperatorClass,
};
use truncvqe_cli::run::{build_ansatz, build_schedule, execute, CHEMICAL_ACCURACY};
use truncvqe_cli::{tables, RunConfig, Strategy};

type Outcome = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Outcome);

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn structural_h2() -> Outcome {
    let q = jordan_wigner(&load_fixture("h2"));
    let truncated = truncate_by_cutoff(&q, 0.1).map_err(|e| e.to_string())?;
    check(q.len() == 15 && truncated.len() == 11, format!("{}/{} terms", truncated.len(), q.len()))
}

fn z_strings() -> Outcome {
    let mut bad = Vec::new();
    for name in FIXTURES {
        let c = classify(&load_fixture(name));
        let q = jordan_wigner(&c.combined(&[OperatorClass::Num, OperatorClass::Cou]).map_err(|e| e.to_string())?);
        if q.strings().any(|s| s.x_bits() != 0) {
            bad.push(name);
        }
    }
    check(bad.is_empty(), format!("{} fixtures, offending: {bad:?}", FIXTURES.len()))
}

fn improvement_tables() -> Outcome {
    let t = tables::compute_tables(&fixtures_dir());
    let worst = t
        .rows
        .iter()
        .flat_map(|r| [r.naive_deviation(), r.classification_deviation()])
        .map(|d| d.unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    check(t.passed(), format!("14 entries, worst deviation {worst:.2} pp"))
}

fn oracle_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=6);
        let terms = rng.random_range(1..=12);
        let h = random_hamiltonian(&mut rng, n, terms);
        let psi = random_state(&mut rng, n);
        let fast = expectation(&psi, &h).map_err(|e| e.to_string())?;
        let dense = dense_expectation(psi.amplitudes(), &hamiltonian_matrix(&h));
        worst = worst.max((fast - dense.re).abs()).max(dense.im.abs());
    }
    let mut worst_anti = 0.0f64;
    for m in 1..=4 {
        let dim = 1 << m;
        let jw = |mode: usize, dagger: bool| {
            ladder_operator(mode, dagger, m)
                .iter()
                .fold(CMatrix::zeros(dim, dim), |acc, (c, s)| acc + string_matrix(s) * *c)
        };
        for i in 0..m {
            let a = jw(i, false);
            worst_anti = worst_anti.max(max_abs_diff(&a, &annihilation_matrix(m, i)));
            for j in 0..m {
                let ad = jw(j, true);
                worst_anti = worst_anti.max(max_abs_diff(&ad, &creation_matrix(m, j)));
                let expected = if i == j { CMatrix::identity(dim, dim) } else { CMatrix::zeros(dim, dim) };
                worst_anti = worst_anti.max(max_abs_diff(&(&a * &ad + &ad * &a), &expected));
            }
        }
    }
    check(
        worst < 1e-10 && worst_anti < 1e-12,
        format!("expectation max err {worst:.1e}, anticommutator max err {worst_anti:.1e}"),
    )
}

fn h2_config(strategy: Strategy, cutoffs: Vec<f64>, iterations: Vec<usize>, out: PathBuf) -> RunConfig {
    let mut c = RunConfig::new(fixtures_dir().join("h2.fcidump"), strategy, cutoffs, iterations);
    c.seeds = 20;
    c.calibration_iterations = 50;
    c.output = out;
    c
}

fn vqe_quality() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let runs = [
        ("standard", h2_config(Strategy::Standard, vec![], vec![800], dir.path().join("standard"))),
        ("naive", h2_config(Strategy::NaiveCutoff, vec![0.1], vec![400, 400], dir.path().join("naive"))),
        (
            "classification",
            h2_config(Strategy::Classification, vec![], vec![500, 100, 200, 200], dir.path().join("class")),
        ),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, config) in runs {
        let summary = execute(&config).map_err(|e| format!("{e:#}"))?;
        let hits = summary.converged(CHEMICAL_ACCURACY).ok_or("no exact reference")?;
        ok &= hits * 10 >= summary.results.len() * 9;
        parts.push(format!("{name} {hits}/{}", summary.results.len()));
    }
    check(ok, format!("within 2 mHa (need >= 90%): {}", parts.join(", ")))
}

fn staging_invariants() -> Outcome {
    let mut failures = Vec::new();

    // warm start at every boundary, and seeded determinism
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let h = load_fixture("h2");
    for (strategy, cutoffs, iterations) in [
        (Strategy::NaiveCutoff, vec![0.1], vec![60, 40]),
        (Strategy::NaiveCutoff, vec![0.15, 0.05], vec![30, 30, 40]),
        (Strategy::Classification, vec![], vec![50, 20, 20, 40]),
    ] {
        let config = h2_config(strategy, cutoffs, iterations, dir.path().join("x"));
        let schedule = build_schedule(&config, &h).map_err(|e| e.to_string())?;
        let ansatz = build_ansatz(&config, &h).map_err(|e| e.to_string())?;
        for seed in 0..3 {
            let a = staged_vqe_with(&schedule, &ansatz, &config.spsa(), seed, config.options())
                .map_err(|e| e.to_string())?;
            if a.stages.windows(2).any(|w| w[0].r#final != w[1].initial) {
                failures.push(format!("{strategy:?} seed {seed}: warm start"));
            }
            let b = staged_vqe_with(&schedule, &ansatz, &config.spsa(), seed, config.options())
                .map_err(|e| e.to_string())?;
            if a.trace.to_csv() != b.trace.to_csv() || a.energy.to_bits() != b.energy.to_bits() {
                failures.push(format!("{strategy:?} seed {seed}: determinism"));
            }
        }
    }

    // re-running from a manifest reproduces every trace bitwise
    let mut config = h2_config(Strategy::NaiveCutoff, vec![0.1], vec![50, 50], dir.path().join("first"));
    config.seeds = 3;
    execute(&config).map_err(|e| format!("{e:#}"))?;
    let manifest = dir.path().join("first/manifest.toml");
    truncvqe_cli::run::cmd_run(&manifest, |c| c.output = dir.path().join("second")).map_err(|e| format!("{e:#}"))?;
    for seed in 0..3 {
        let name = format!("trace_seed{seed}.csv");
        let a = std::fs::read(dir.path().join("first").join(&name)).map_err(|e| e.to_string())?;
        let b = std::fs::read(dir.path().join("second").join(&name)).map_err(|e| e.to_string())?;
        if a != b {
            failures.push(format!("manifest rerun seed {seed}"));
        }
    }

    // cutoff ladders nest
    for name in FIXTURES {
        let q = jordan_wigner(&load_fixture(name));
        let cutoffs = CutoffSchedule::new(vec![0.3, 0.1, 0.03, 0.01]).map_err(|e| e.to_string())?;
        let ladder = build_cutoff_ladder(&q, &cutoffs, &[1; 5]).map_err(|e| e.to_string())?;
        for w in ladder.stages().windows(2) {
            let nested = w[0].hamiltonian.iter().all(|t| w[1].hamiltonian.coefficient(&t.string) == t.coefficient);
            if !nested {
                failures.push(format!("{name}: nesting"));
            }
        }
    }

    // classification fragments re-sum to the direct map
    for name in FIXTURES {
        let f = load_fixture(name);
        let c = classify(&f);
        let direct = jordan_wigner(&f);
        let resum = OperatorClass::ALL
            .iter()
            .map(|&k| jordan_wigner(c.fragment(k)))
            .reduce(|a, b| a.add(&b).unwrap())
            .unwrap();
        let worst = direct
            .strings()
            .chain(resum.strings())
            .map(|s| (direct.coefficient(s) - resum.coefficient(s)).abs())
            .fold(0.0, f64::max);
        if worst > 1e-12 {
            failures.push(format!("{name}: re-sum {worst:.1e}"));
        }
    }
    check(failures.is_empty(), if failures.is_empty() { "all hold".into() } else { failures.join("; ") })
}

fn spectral_preservation() -> Outcome {
    let mut worst = 0.0f64;
    for seed in 0..10 {
        let m = 2 + (seed as usize % 3);
        let h = random_fermion_hamiltonian(0x5bec + seed, m);
        let fermionic = hermitian_eigenvalues(&fermion_hamiltonian_matrix(&h));
        let qubit = hermitian_eigenvalues(&hamiltonian_matrix(&jordan_wigner(&h)));
        worst = fermionic.iter().zip(&qubit).map(|(a, b)| (a - b).abs()).fold(worst, f64::max);
    }
    check(worst < 1e-10, format!("10 instances, max eigenvalue gap {worst:.1e}"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("H2 structural reproduction", Duration::from_secs(1), structural_h2),
        ("Z-string property", Duration::from_secs(10), z_strings),
        ("improvement arithmetic", Duration::from_secs(1), improvement_tables),
        ("oracle equivalence", Duration::from_secs(30), oracle_equivalence),
        ("end-to-end VQE quality", Duration::from_secs(600), vqe_quality),
        ("staging invariants", Duration::from_secs(60), staging_invariants),
        ("spectral preservation", Duration::from_secs(30), spectral_preservation),
    ];
    let mut failed = 0;
    let mut stdout = std::io::stdout();
    for (n, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let (status, detail) = match outcome {
            Ok(d) if elapsed <= limit => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; took {elapsed:.2?}, limit {limit:?}")),
            Err(d) => ("FAIL", d),
        };
        if status == "FAIL" {
            failed += 1;
        }
        let _ = writeln!(stdout, "criterion {}: {status} {name}: {detail} [{elapsed:.2?}]", n + 1);
    }
    let _ = writeln!(stdout, "{} of 7 criteria passed", 7 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
