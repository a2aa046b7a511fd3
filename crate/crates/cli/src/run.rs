//! Seeded staged-VQE runs and their output directory.
//!
//! A run directory holds:
//! * `manifest.toml`: the resolved config under `[config]` plus conventions and stages
//! * `trace_seed<N>.csv`: one convergence trace per seed
//! * `mean_trace.csv`: pointwise mean over seeds
//! * `report.toml`: measurement-cost report
//! * `exact.toml`: exact ground-state reference (when the register is small enough)
//! * `summary.csv`: final energy per seed

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use log::info;
use rayon::prelude::*;
use serde::Serialize;
use truncvqe::simulator::exact_ground_energy_with_limit;
use truncvqe::truncation::StageSummary;
use truncvqe::vqe::{mean_trace, staged_vqe_with};
use truncvqe::{
    build_classification_ladder, build_cutoff_ladder, classify, jordan_wigner, Ansatz, ConvergenceTrace,
    CutoffSchedule, FermionHamiltonian, ImprovementReport, StageSchedule,
};

use crate::config::{AnsatzChoice, RunConfig, Strategy};
use crate::load_fixture;

/// Energies within this distance of the exact reference count as converged.
pub const CHEMICAL_ACCURACY: f64 = 2e-3;

pub fn build_schedule(config: &RunConfig, h: &FermionHamiltonian) -> Result<StageSchedule> {
    let q = jordan_wigner(h);
    let schedule = match config.strategy {
        Strategy::Standard => StageSchedule::single(q, config.iterations[0])?,
        Strategy::NaiveCutoff => {
            build_cutoff_ladder(&q, &CutoffSchedule::new(config.cutoffs.clone())?, &config.iterations)?
        }
        Strategy::Classification => {
            let budgets: [usize; 4] = config.iterations.as_slice().try_into().context("need 4 budgets")?;
            build_classification_ladder(&classify(h), budgets)?
        }
    };
    Ok(schedule)
}

pub fn build_ansatz(config: &RunConfig, h: &FermionHamiltonian) -> Result<Ansatz> {
    let n = h.num_modes();
    Ok(match config.ansatz {
        AnsatzChoice::TwoLocal => Ansatz::two_local(n, config.repetitions, config.entanglement)?,
        AnsatzChoice::Uccsd => {
            let Some(electrons) = h.num_electrons() else {
                bail!("UCCSD needs the electron count (NELEC) in the fixture");
            };
            Ansatz::uccsd(n, electrons)?
        }
    })
}

#[derive(Debug, Clone)]
pub struct SeedResult {
    pub seed: u64,
    /// Readout of the final Hamiltonian at the final parameters.
    pub energy: f64,
    pub trace: ConvergenceTrace,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub output: PathBuf,
    pub results: Vec<SeedResult>,
    pub mean: ConvergenceTrace,
    pub report: ImprovementReport,
    pub exact: Option<f64>,
}

impl RunSummary {
    /// Seeds whose final energy is within `tolerance` of the exact reference.
    pub fn converged(&self, tolerance: f64) -> Option<usize> {
        let exact = self.exact?;
        Some(self.results.iter().filter(|r| (r.energy - exact).abs() <= tolerance).count())
    }

    pub fn mean_energy(&self) -> f64 {
        self.results.iter().map(|r| r.energy).sum::<f64>() / self.results.len() as f64
    }
}

#[derive(Serialize)]
struct Conventions {
    ansatz: String,
    entanglement: &'static str,
    cutoff_rule: &'static str,
    measurement_units: &'static str,
    improvement: &'static str,
    iteration: &'static str,
    stage_restart: &'static str,
    initial_parameters: &'static str,
    seed_streams: &'static str,
    final_energy: &'static str,
    spin_orbital_order: &'static str,
}

#[derive(Serialize)]
struct Manifest<'a> {
    version: &'static str,
    config: &'a RunConfig,
    conventions: Conventions,
    exact_ground_energy: Option<f64>,
    stages: Vec<StageSummary>,
}

fn conventions(ansatz: &Ansatz, config: &RunConfig) -> Conventions {
    Conventions {
        ansatz: ansatz.label(),
        entanglement: match config.ansatz {
            AnsatzChoice::TwoLocal => config.entanglement.label(),
            AnsatzChoice::Uccsd => "none",
        },
        cutoff_rule: "keep |c| >= cutoff; identity always kept",
        measurement_units: "Pauli terms including identity; classification H3 stage = 1",
        improvement: "100 * (1 - sum(k_n * i_n) / (K * I)); calibration excluded from I",
        iteration: "one SPSA step = two objective evaluations",
        stage_restart: match config.stage_restart {
            truncvqe::vqe::StageRestart::Continue => "continue",
            truncvqe::vqe::StageRestart::ResetSchedule => "reset_schedule",
            truncvqe::vqe::StageRestart::Recalibrate => "recalibrate",
        },
        initial_parameters: "uniform [-pi, pi) from ChaCha8(seed), stream 0",
        seed_streams: "run k uses seed + k; perturbations stream 1, shots stream 2",
        final_energy: "final-stage Hamiltonian at final parameters, not part of the trace",
        spin_orbital_order: "interleaved: 2p alpha, 2p+1 beta; qubit 0 first in labels",
    }
}

/// Runs every seed and writes the run directory.
pub fn execute(config: &RunConfig) -> Result<RunSummary> {
    config.validate()?;
    let mut config = config.clone();
    config.fixture = config
        .fixture
        .canonicalize()
        .with_context(|| format!("fixture {}", config.fixture.display()))?;
    let h = load_fixture(&config.fixture)?;
    let schedule = build_schedule(&config, &h)?;
    let ansatz = build_ansatz(&config, &h)?;
    let spsa = config.spsa();
    let options = config.options();
    let out = config.output.clone();
    std::fs::create_dir_all(&out).with_context(|| format!("creating {}", out.display()))?;

    let exact = match exact_ground_energy_with_limit(schedule.final_hamiltonian(), config.exact_max_qubits) {
        Ok(e) => Some(e),
        Err(truncvqe::SimulatorError::QubitBudget { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    let report = ImprovementReport::from_schedule(&schedule)?;

    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION"),
        config: &config,
        conventions: conventions(&ansatz, &config),
        exact_ground_energy: exact,
        stages: schedule.summaries(),
    };
    std::fs::write(out.join("manifest.toml"), toml::to_string(&manifest)?)?;

    let seeds: Vec<u64> = (0..config.seeds as u64).map(|k| config.seed + k).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.workers).build()?;
    let results: Vec<SeedResult> = pool.install(|| {
        seeds
            .par_iter()
            .map(|&seed| -> Result<SeedResult> {
                let outcome = staged_vqe_with(&schedule, &ansatz, &spsa, seed, options)?;
                std::fs::write(out.join(format!("trace_seed{seed}.csv")), outcome.trace.to_csv())?;
                info!("seed {seed}: {:.10}", outcome.energy);
                Ok(SeedResult { seed, energy: outcome.energy, trace: outcome.trace })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let traces: Vec<ConvergenceTrace> = results.iter().map(|r| r.trace.clone()).collect();
    let mean = mean_trace(&traces).context("seed traces have different lengths")?;
    std::fs::write(out.join("mean_trace.csv"), mean.to_csv())?;
    std::fs::write(out.join("report.toml"), report.to_toml())?;
    let exact_text = match exact {
        Some(e) => format!("exact_ground_energy = {e:.17e}\n"),
        None => format!("skipped = \"register above {} qubits\"\n", config.exact_max_qubits),
    };
    std::fs::write(out.join("exact.toml"), exact_text)?;

    let mut summary = String::from("seed,final_energy,error\n");
    for r in &results {
        let error = exact.map_or(String::new(), |e| format!("{:.6e}", r.energy - e));
        writeln!(summary, "{},{:.17e},{error}", r.seed, r.energy)?;
    }
    std::fs::write(out.join("summary.csv"), summary)?;

    Ok(RunSummary { output: out, results, mean, report, exact })
}

pub fn describe(summary: &RunSummary) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "output: {}", summary.output.display());
    let _ = writeln!(s, "seeds: {}", summary.results.len());
    let _ = writeln!(s, "mean final energy: {:.10}", summary.mean_energy());
    if let Some(e) = summary.exact {
        let n = summary.converged(CHEMICAL_ACCURACY).unwrap_or(0);
        let _ = writeln!(s, "exact ground energy: {e:.10}");
        let _ = writeln!(s, "within 2 mHa: {n}/{}", summary.results.len());
    }
    let _ = writeln!(s, "improvement: {:.2}%", summary.report.improvement_percent);
    s
}

/// Loads a config or manifest and runs it.
pub fn cmd_run(path: &Path, apply: impl FnOnce(&mut RunConfig)) -> Result<RunSummary> {
    let mut config = RunConfig::load(path)?;
    apply(&mut config);
    execute(&config)
}
