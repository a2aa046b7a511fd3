//! Weighted measurement cost of a staged run relative to plain VQE.
//!
//! `S = sum_n k_n i_n / (K I)` where stage `n` costs `k_n` measurement units
//! per evaluation for `i_n` iterations, `K` is the cost of the full
//! Hamiltonian and `I` the total iteration count. The improvement is
//! `100 (1 - S)` percent. Calibration is not part of `I`.

use serde::{Deserialize, Serialize};

use super::VqeError;
use crate::truncation::{StageSchedule, StageSummary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCost {
    pub measurement_units: usize,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImprovementReport {
    pub stages: Vec<StageCost>,
    pub full_units: usize,
    pub total_iterations: usize,
    pub s_ratio: f64,
    pub improvement_percent: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub manifest: Vec<StageSummary>,
}

pub fn improvement(stages: &[StageCost], full_units: usize, total_iterations: usize) -> Result<ImprovementReport, VqeError> {
    if full_units == 0 || total_iterations == 0 {
        return Err(VqeError::Improvement("K and I must be positive".into()));
    }
    let summed: usize = stages.iter().map(|s| s.iterations).sum();
    if summed != total_iterations {
        return Err(VqeError::Improvement(format!("stage iterations sum to {summed}, I = {total_iterations}")));
    }
    if let Some(s) = stages.iter().find(|s| s.measurement_units > full_units) {
        return Err(VqeError::Improvement(format!("stage cost {} exceeds K = {full_units}", s.measurement_units)));
    }
    let weighted: usize = stages.iter().map(|s| s.measurement_units * s.iterations).sum();
    let s_ratio = weighted as f64 / (full_units as f64 * total_iterations as f64);
    Ok(ImprovementReport {
        stages: stages.to_vec(),
        full_units,
        total_iterations,
        s_ratio,
        improvement_percent: 100.0 * (1.0 - s_ratio),
        manifest: Vec::new(),
    })
}

impl ImprovementReport {
    /// Report for a schedule, with `K` taken from its final stage.
    pub fn from_schedule(schedule: &StageSchedule) -> Result<Self, VqeError> {
        let stages: Vec<StageCost> = schedule
            .stages()
            .iter()
            .map(|s| StageCost { measurement_units: s.measurement_units, iterations: s.iterations })
            .collect();
        let full = schedule.stages().last().map_or(0, |s| s.measurement_units);
        let mut report = improvement(&stages, full, schedule.total_iterations())?;
        report.manifest = schedule.summaries();
        Ok(report)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("report fields are TOML-representable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn costs(v: &[(usize, usize)]) -> Vec<StageCost> {
        v.iter().map(|&(k, i)| StageCost { measurement_units: k, iterations: i }).collect()
    }

    #[test]
    fn single_full_stage_is_zero() {
        let r = improvement(&costs(&[(15, 800)]), 15, 800).unwrap();
        assert_eq!(r.s_ratio, 1.0);
        assert_eq!(r.improvement_percent, 0.0);
    }

    #[test]
    fn two_stage_h6_counts() {
        let r = improvement(&costs(&[(55, 400), (1819, 400)]), 1819, 800).unwrap();
        assert!((r.improvement_percent - 48.488).abs() < 1e-3, "{}", r.improvement_percent);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(improvement(&costs(&[(1, 10)]), 0, 10).is_err());
        assert!(improvement(&costs(&[(1, 10)]), 1, 0).is_err());
        assert!(improvement(&costs(&[(1, 10)]), 1, 11).is_err());
        assert!(improvement(&costs(&[(5, 10)]), 4, 10).is_err());
    }
}
