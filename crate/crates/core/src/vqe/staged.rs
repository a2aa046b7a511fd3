//! Warm-started multi-stage VQE.
//!
//! Stage 0 starts from angles drawn uniformly in `[-pi, pi)`; every later
//! stage starts from the previous stage's final parameters. One SPSA
//! instance serves the whole run and is calibrated once, on the first stage.
//! By default each stage then restarts the gain sequence over its own budget
//! (see [`StageRestart`]).

use std::f64::consts::PI;
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{ImprovementReport, Spsa, SpsaConfig, VqeError};
use crate::simulator::{prepare_state, sampled_expectation, Ansatz, Observable};
use crate::truncation::StageSchedule;

/// How each objective evaluation is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Estimator {
    #[default]
    Statevector,
    /// Finite-shot estimate, this many shots per commuting group.
    Shots(usize),
}

/// What the optimizer carries over a stage boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StageRestart {
    /// Keep the calibrated gain and the step counter.
    Continue,
    /// Restart the step counter with `A` from the stage budget, keeping the
    /// calibrated size of the first step.
    #[default]
    ResetSchedule,
    /// Calibrate again and restart the counter at every stage.
    Recalibrate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct StagedOptions {
    pub estimator: Estimator,
    pub restart: StageRestart,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub evaluation_index: usize,
    pub stage_index: usize,
    pub energy: f64,
    pub cumulative_measurement_units: u64,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceTrace {
    pub records: Vec<TraceRecord>,
    /// Evaluation index of the first record of each stage after the first.
    pub stage_boundaries: Vec<usize>,
    pub final_parameters: Vec<f64>,
}

const CSV_HEADER: &str = "evaluation_index,stage_index,energy,cumulative_measurement_units";

impl ConvergenceTrace {
    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn energies(&self) -> impl Iterator<Item = f64> + '_ {
        self.records.iter().map(|r| r.energy)
    }

    pub fn total_measurement_units(&self) -> u64 {
        self.records.last().map_or(0, |r| r.cumulative_measurement_units)
    }

    /// Running minimum of the energies recorded in `stage`.
    pub fn best_so_far(&self, stage: usize) -> Vec<f64> {
        let mut best = f64::INFINITY;
        self.records
            .iter()
            .filter(|r| r.stage_index == stage)
            .map(|r| {
                best = best.min(r.energy);
                best
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.records {
            writeln!(
                out,
                "{},{},{:.17e},{}",
                r.evaluation_index, r.stage_index, r.energy, r.cumulative_measurement_units
            )
            .expect("writing to a String");
        }
        out
    }

    /// Reads the table written by [`ConvergenceTrace::to_csv`]. Stage
    /// boundaries are recovered from the stage column; parameters are not
    /// part of the table.
    pub fn from_csv(text: &str) -> Result<Self, VqeError> {
        let mut lines = text.lines();
        if lines.next().map(str::trim) != Some(CSV_HEADER) {
            return Err(VqeError::Trace("missing header".into()));
        }
        let mut trace = ConvergenceTrace::default();
        for (n, line) in lines.enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let bad = || VqeError::Trace(format!("line {}: {line}", n + 2));
            let f: Vec<&str> = line.trim().split(',').collect();
            if f.len() != 4 {
                return Err(bad());
            }
            let record = TraceRecord {
                evaluation_index: f[0].parse().map_err(|_| bad())?,
                stage_index: f[1].parse().map_err(|_| bad())?,
                energy: f[2].parse().map_err(|_| bad())?,
                cumulative_measurement_units: f[3].parse().map_err(|_| bad())?,
            };
            if let Some(prev) = trace.records.last() {
                if record.stage_index != prev.stage_index {
                    trace.stage_boundaries.push(record.evaluation_index);
                }
            }
            trace.records.push(record);
        }
        Ok(trace)
    }
}

/// Pointwise mean of equally shaped traces; `None` if they differ in length
/// or stage layout.
pub fn mean_trace(traces: &[ConvergenceTrace]) -> Option<ConvergenceTrace> {
    let first = traces.first()?;
    if traces.iter().any(|t| t.len() != first.len() || t.stage_boundaries != first.stage_boundaries) {
        return None;
    }
    let n = traces.len() as f64;
    let records = first
        .records
        .iter()
        .enumerate()
        .map(|(i, r)| TraceRecord { energy: traces.iter().map(|t| t.records[i].energy).sum::<f64>() / n, ..*r })
        .collect();
    Some(ConvergenceTrace { records, stage_boundaries: first.stage_boundaries.clone(), final_parameters: Vec::new() })
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageParameters {
    pub initial: Vec<f64>,
    pub r#final: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StagedOutcome {
    /// Final-stage Hamiltonian evaluated at the final parameters.
    pub energy: f64,
    pub parameters: Vec<f64>,
    pub trace: ConvergenceTrace,
    pub report: ImprovementReport,
    pub stages: Vec<StageParameters>,
}

/// Angles drawn uniformly from `[-pi, pi)` with the run's seed.
pub fn initial_parameters(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| rng.random_range(-PI..PI)).collect()
}

pub fn staged_vqe(
    schedule: &StageSchedule,
    ansatz: &Ansatz,
    config: &SpsaConfig,
    seed: u64,
) -> Result<StagedOutcome, VqeError> {
    staged_vqe_with(schedule, ansatz, config, seed, StagedOptions::default())
}

/// `seed` replaces `config.seed`; it drives the initial angles, the SPSA
/// perturbations and, in shot mode, the sampler, each on its own stream.
/// `config.max_iterations` is ignored in favour of the stage budgets.
pub fn staged_vqe_with(
    schedule: &StageSchedule,
    ansatz: &Ansatz,
    config: &SpsaConfig,
    seed: u64,
    options: StagedOptions,
) -> Result<StagedOutcome, VqeError> {
    let estimator = options.estimator;
    let n = ansatz.num_qubits();
    for (i, stage) in schedule.stages().iter().enumerate() {
        if stage.hamiltonian.num_qubits() != n {
            return Err(VqeError::QubitMismatch { stage: i, expected: n, found: stage.hamiltonian.num_qubits() });
        }
    }
    if estimator == Estimator::Shots(0) {
        return Err(VqeError::InvalidConfig("shot count must be positive".into()));
    }
    let report = ImprovementReport::from_schedule(schedule)?;
    let config = SpsaConfig { seed, ..config.clone() };
    let first_budget = match options.restart {
        StageRestart::Continue => schedule.total_iterations(),
        _ => schedule.stages()[0].iterations,
    };
    let mut spsa = Spsa::new(&config, first_budget)?;
    let mut shot_rng = ChaCha8Rng::seed_from_u64(seed);
    shot_rng.set_stream(2);

    let mut theta = initial_parameters(ansatz.num_parameters(), seed);
    let mut trace = ConvergenceTrace::default();
    let mut stages = Vec::with_capacity(schedule.len());
    let mut cumulative: u64 = 0;
    let mut failure: Option<VqeError> = None;

    for (index, stage) in schedule.stages().iter().enumerate() {
        let observable = Observable::new(&stage.hamiltonian)?;
        let hamiltonian = &stage.hamiltonian;
        let units = stage.measurement_units as u64;
        if index > 0 {
            trace.stage_boundaries.push(trace.records.len());
        }
        let mut objective = |p: &[f64]| -> f64 {
            let state = match prepare_state(ansatz, p) {
                Ok(s) => s,
                Err(e) => {
                    failure.get_or_insert(e.into());
                    return f64::NAN;
                }
            };
            let value = match estimator {
                Estimator::Statevector => observable.expectation(&state),
                Estimator::Shots(shots) => sampled_expectation(&state, hamiltonian, shots, &mut shot_rng),
            };
            value.unwrap_or_else(|e| {
                failure.get_or_insert(e.into());
                f64::NAN
            })
        };
        let records = &mut trace.records;
        let mut sink = |energy: f64| {
            cumulative += units;
            records.push(TraceRecord {
                evaluation_index: records.len(),
                stage_index: index,
                energy,
                cumulative_measurement_units: cumulative,
            });
        };
        let initial = theta.clone();
        let run = (|| {
            match options.restart {
                _ if index == 0 => {}
                StageRestart::Continue => {}
                StageRestart::ResetSchedule => spsa.restart(stage.iterations, false),
                StageRestart::Recalibrate => spsa.restart(stage.iterations, true),
            }
            spsa.calibrate(&mut objective, &theta, &mut sink)?;
            for _ in 0..stage.iterations {
                spsa.step(&mut objective, &mut theta, &mut sink)?;
            }
            Ok::<(), VqeError>(())
        })();
        if let Err(e) = run {
            return Err(failure.take().unwrap_or(e));
        }
        stages.push(StageParameters { initial, r#final: theta.clone() });
    }

    let final_observable = Observable::new(schedule.final_hamiltonian())?;
    let energy = final_observable.expectation(&prepare_state(ansatz, &theta)?)?;
    trace.final_parameters = theta.clone();
    Ok(StagedOutcome { energy, parameters: theta, trace, report, stages })
}
