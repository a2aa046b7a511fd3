//! Run configuration files.
//!
//! Every hyperparameter is a required key; nothing is filled in silently, so
//! a config (or the copy embedded in a run manifest) fully determines a run.

use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use truncvqe::simulator::Entanglement;
use truncvqe::vqe::{Estimator, StageRestart, StagedOptions};
use truncvqe::SpsaConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    /// Plain VQE on the full Hamiltonian.
    Standard,
    /// One stage per coefficient cutoff, then the full Hamiltonian.
    NaiveCutoff,
    /// The four operator-classification stages.
    Classification,
}

impl Strategy {
    pub fn stage_count(self, cutoffs: usize) -> usize {
        match self {
            Strategy::Standard => 1,
            Strategy::NaiveCutoff => cutoffs + 1,
            Strategy::Classification => 4,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AnsatzChoice {
    TwoLocal,
    Uccsd,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// FCIDUMP file; relative paths are resolved against the config's directory.
    pub fixture: PathBuf,
    pub strategy: Strategy,
    /// Descending cutoffs; must be empty unless the strategy is `naive_cutoff`.
    pub cutoffs: Vec<f64>,
    /// SPSA steps per stage.
    pub iterations: Vec<usize>,
    pub ansatz: AnsatzChoice,
    /// Entangling layers of the two-local circuit (ignored by UCCSD).
    pub repetitions: usize,
    pub entanglement: Entanglement,
    /// Number of seeded runs; run `k` uses `seed + k`.
    pub seeds: usize,
    pub seed: u64,
    /// Parallel runs; 0 lets the thread pool decide.
    pub workers: usize,
    pub output: PathBuf,
    /// Shots per commuting group; 0 selects the exact statevector estimator.
    pub shots: usize,
    pub stage_restart: StageRestart,
    /// Largest register for which the exact reference energy is computed.
    pub exact_max_qubits: usize,
    pub calibration_iterations: usize,
    pub alpha: f64,
    pub gamma: f64,
    pub perturbation: f64,
    pub stability_fraction: f64,
    pub target_step: f64,
}

impl RunConfig {
    /// Library defaults for everything but the fixture, strategy and budgets.
    pub fn new(fixture: impl Into<PathBuf>, strategy: Strategy, cutoffs: Vec<f64>, iterations: Vec<usize>) -> Self {
        let spsa = SpsaConfig::default();
        Self {
            fixture: fixture.into(),
            strategy,
            cutoffs,
            iterations,
            ansatz: AnsatzChoice::TwoLocal,
            repetitions: 3,
            entanglement: Entanglement::Linear,
            seeds: 1,
            seed: 0,
            workers: 0,
            output: PathBuf::from("runs/out"),
            shots: 0,
            stage_restart: StageRestart::default(),
            exact_max_qubits: truncvqe::simulator::DEFAULT_MAX_QUBITS,
            calibration_iterations: spsa.calibration_iterations,
            alpha: spsa.alpha,
            gamma: spsa.gamma,
            perturbation: spsa.perturbation,
            stability_fraction: spsa.stability_fraction,
            target_step: spsa.target_step,
        }
    }

    /// Reads a config file, or the `[config]` table of a run manifest.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let value: toml::Table = toml::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        let table = match value.get("config") {
            Some(toml::Value::Table(t)) => t.clone(),
            _ => value,
        };
        let mut config: RunConfig =
            table.try_into().with_context(|| format!("invalid run config in {}", path.display()))?;
        if config.fixture.is_relative() {
            if let Some(dir) = path.parent() {
                config.fixture = dir.join(&config.fixture);
            }
        }
        config.validate()?;
        Ok(config)
    }

    pub fn to_toml(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        match self.strategy {
            Strategy::NaiveCutoff if self.cutoffs.is_empty() => bail!("naive_cutoff needs at least one cutoff"),
            Strategy::Standard | Strategy::Classification if !self.cutoffs.is_empty() => {
                bail!("cutoffs are only used by the naive_cutoff strategy")
            }
            _ => {}
        }
        let expected = self.strategy.stage_count(self.cutoffs.len());
        if self.iterations.len() != expected {
            bail!(
                "strategy {:?} with {} cutoff(s) needs {expected} iteration budgets, got {}",
                self.strategy,
                self.cutoffs.len(),
                self.iterations.len()
            );
        }
        if self.seeds == 0 {
            bail!("seeds must be at least 1");
        }
        self.spsa().validate()?;
        Ok(())
    }

    /// SPSA settings; the step budget is taken from the stage schedule.
    pub fn spsa(&self) -> SpsaConfig {
        SpsaConfig {
            max_iterations: self.iterations.iter().sum(),
            calibration_iterations: self.calibration_iterations,
            alpha: self.alpha,
            gamma: self.gamma,
            perturbation: self.perturbation,
            stability_fraction: self.stability_fraction,
            target_step: self.target_step,
            gain: None,
            seed: self.seed,
        }
    }

    pub fn options(&self) -> StagedOptions {
        let estimator = if self.shots == 0 { Estimator::Statevector } else { Estimator::Shots(self.shots) };
        StagedOptions { estimator, restart: self.stage_restart }
    }
}
