//! Staged Hamiltonian sequences.
//!
//! A [`StageSchedule`] is the ordered list of Hamiltonians a staged VQE run
//! optimizes, each with an iteration budget and the number of measurement
//! units one evaluation of it costs. Two ladders are provided: hard
//! coefficient cutoffs, and cumulative fermionic operator classes
//! (`num + cou`, `+ exc`, `+ nex`, `+ dex`).
//!
//! Measurement units count Pauli terms of the stage Hamiltonian, identity
//! included, except for the first classification stage: `num + cou` maps to
//! `Z` strings only, which are measured together in one basis, so it costs 1.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::fermion::{jordan_wigner, ClassifiedHamiltonian, FermionError, OperatorClass};
use crate::pauli::QubitHamiltonian;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TruncationError {
    #[error("cutoff must be positive and finite, got {0}")]
    NonPositiveCutoff(f64),
    #[error("cutoff schedule is empty")]
    EmptySchedule,
    #[error("cutoffs must be strictly descending")]
    NotDescending,
    #[error("expected {expected} iteration budgets, got {found}")]
    BudgetMismatch { expected: usize, found: usize },
    #[error("iteration budgets must be positive")]
    ZeroIterations,
    #[error(transparent)]
    Fermion(#[from] FermionError),
}

/// Strictly descending, positive coefficient thresholds.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffSchedule {
    cutoffs: Vec<f64>,
}

impl CutoffSchedule {
    pub fn new(cutoffs: Vec<f64>) -> Result<Self, TruncationError> {
        if cutoffs.is_empty() {
            return Err(TruncationError::EmptySchedule);
        }
        if let Some(bad) = cutoffs.iter().find(|c| !(c.is_finite() && **c > 0.0)) {
            return Err(TruncationError::NonPositiveCutoff(*bad));
        }
        if cutoffs.windows(2).any(|w| w[0] <= w[1]) {
            return Err(TruncationError::NotDescending);
        }
        Ok(Self { cutoffs })
    }

    pub fn cutoffs(&self) -> &[f64] {
        &self.cutoffs
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Stage {
    pub label: String,
    pub hamiltonian: QubitHamiltonian,
    pub iterations: usize,
    pub measurement_units: usize,
}

/// Manifest row for one stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StageSummary {
    pub label: String,
    pub term_count: usize,
    pub measurement_units: usize,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageSchedule {
    stages: Vec<Stage>,
}

impl StageSchedule {
    pub fn new(stages: Vec<Stage>) -> Result<Self, TruncationError> {
        if stages.is_empty() {
            return Err(TruncationError::EmptySchedule);
        }
        if stages.iter().any(|s| s.iterations == 0) {
            return Err(TruncationError::ZeroIterations);
        }
        Ok(Self { stages })
    }

    /// Plain VQE: the full Hamiltonian for the whole budget.
    pub fn single(h: QubitHamiltonian, iterations: usize) -> Result<Self, TruncationError> {
        let units = term_units(&h);
        Self::new(vec![Stage { label: "Hq".into(), hamiltonian: h, iterations, measurement_units: units }])
    }

    pub fn stages(&self) -> &[Stage] {
        &self.stages
    }

    pub fn len(&self) -> usize {
        self.stages.len()
    }

    pub fn is_empty(&self) -> bool {
        self.stages.is_empty()
    }

    pub fn final_hamiltonian(&self) -> &QubitHamiltonian {
        &self.stages.last().expect("schedule is non-empty").hamiltonian
    }

    pub fn total_iterations(&self) -> usize {
        self.stages.iter().map(|s| s.iterations).sum()
    }

    pub fn summaries(&self) -> Vec<StageSummary> {
        self.stages
            .iter()
            .map(|s| StageSummary {
                label: s.label.clone(),
                term_count: s.hamiltonian.len(),
                measurement_units: s.measurement_units,
                iterations: s.iterations,
            })
            .collect()
    }
}

/// Measurement cost of evaluating `h` term by term.
pub fn term_units(h: &QubitHamiltonian) -> usize {
    h.len().max(1)
}

/// Keeps terms with `|c_k| >= cutoff`; the identity term is always kept.
pub fn truncate_by_cutoff(h: &QubitHamiltonian, cutoff: f64) -> Result<QubitHamiltonian, TruncationError> {
    if !(cutoff.is_finite() && cutoff > 0.0) {
        return Err(TruncationError::NonPositiveCutoff(cutoff));
    }
    Ok(h.filtered(|t| t.string.is_identity() || t.coefficient.abs() >= cutoff))
}

/// One stage per cutoff, in schedule order, followed by the full Hamiltonian.
///
/// `iterations` holds one budget per cutoff plus one for the final stage.
pub fn build_cutoff_ladder(
    h: &QubitHamiltonian,
    schedule: &CutoffSchedule,
    iterations: &[usize],
) -> Result<StageSchedule, TruncationError> {
    let expected = schedule.cutoffs.len() + 1;
    if iterations.len() != expected {
        return Err(TruncationError::BudgetMismatch { expected, found: iterations.len() });
    }
    let mut stages = Vec::with_capacity(expected);
    for (&cutoff, &iters) in schedule.cutoffs.iter().zip(iterations) {
        let truncated = truncate_by_cutoff(h, cutoff)?;
        stages.push(Stage {
            label: format!("cutoff {cutoff}"),
            measurement_units: term_units(&truncated),
            hamiltonian: truncated,
            iterations: iters,
        });
    }
    stages.push(Stage {
        label: "Hq".into(),
        measurement_units: term_units(h),
        hamiltonian: h.clone(),
        iterations: iterations[expected - 1],
    });
    StageSchedule::new(stages)
}

/// Labels and cumulative class sets of the four classification stages.
pub const CLASSIFICATION_STAGES: [(&str, &[OperatorClass]); 4] = [
    ("H3", &[OperatorClass::Num, OperatorClass::Cou]),
    ("H2", &[OperatorClass::Num, OperatorClass::Cou, OperatorClass::Exc]),
    ("H1", &[OperatorClass::Num, OperatorClass::Cou, OperatorClass::Exc, OperatorClass::Nex]),
    ("Hq", &OperatorClass::ALL),
];

/// `H3 = num + cou`, `H2 = H3 + exc`, `H1 = H2 + nex`, `Hq = H1 + dex`, each
/// mapped through Jordan-Wigner.
pub fn build_classification_ladder(
    c: &ClassifiedHamiltonian,
    iterations: [usize; 4],
) -> Result<StageSchedule, TruncationError> {
    let mut stages = Vec::with_capacity(4);
    for (n, ((label, classes), iters)) in CLASSIFICATION_STAGES.iter().zip(iterations).enumerate() {
        let hamiltonian = jordan_wigner(&c.combined(classes)?);
        let measurement_units = if n == 0 { 1 } else { term_units(&hamiltonian) };
        stages.push(Stage { label: (*label).into(), hamiltonian, iterations: iters, measurement_units });
    }
    StageSchedule::new(stages)
}
