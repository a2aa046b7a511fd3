//! SPSA, the staged VQE driver and measurement-cost accounting.

mod metrics;
mod spsa;
mod staged;

use thiserror::Error;

use crate::simulator::SimulatorError;
use crate::truncation::TruncationError;

pub use metrics::{improvement, ImprovementReport, StageCost};
pub use spsa::{spsa_minimize, Spsa, SpsaConfig, SpsaOutcome};
pub use staged::{
    initial_parameters, mean_trace, staged_vqe, staged_vqe_with, ConvergenceTrace, Estimator, StageRestart, StagedOptions,
    StageParameters, StagedOutcome, TraceRecord,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum VqeError {
    #[error("objective returned {value} at evaluation {evaluation}")]
    NonFinite { evaluation: usize, value: f64 },
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("stage {stage} acts on {found} qubits, ansatz has {expected}")]
    QubitMismatch { stage: usize, expected: usize, found: usize },
    #[error("improvement inputs: {0}")]
    Improvement(String),
    #[error("malformed trace: {0}")]
    Trace(String),
    #[error(transparent)]
    Simulator(#[from] SimulatorError),
    #[error(transparent)]
    Truncation(#[from] TruncationError),
}
