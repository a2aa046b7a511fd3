//! Simultaneous perturbation stochastic approximation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::VqeError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpsaConfig {
    pub max_iterations: usize,
    pub calibration_iterations: usize,
    pub alpha: f64,
    pub gamma: f64,
    /// Perturbation scale `c` in radians.
    pub perturbation: f64,
    /// Stability constant `A` as a fraction of the iteration budget.
    pub stability_fraction: f64,
    /// Desired magnitude of the first update, used by calibration.
    pub target_step: f64,
    /// Fixed gain `a`; when set, calibration is skipped.
    pub gain: Option<f64>,
    pub seed: u64,
}

impl Default for SpsaConfig {
    fn default() -> Self {
        Self {
            max_iterations: 800,
            calibration_iterations: 50,
            alpha: 0.602,
            gamma: 0.101,
            perturbation: 0.05,
            stability_fraction: 0.4,
            target_step: 0.1,
            gain: None,
            seed: 0,
        }
    }
}

impl SpsaConfig {
    pub fn validate(&self) -> Result<(), VqeError> {
        let bad = |m: &str| Err(VqeError::InvalidConfig(m.into()));
        if !(self.gamma > 0.0 && self.alpha > self.gamma && self.alpha.is_finite()) {
            return bad("SPSA exponents must satisfy alpha > gamma > 0");
        }
        if !(self.perturbation > 0.0 && self.perturbation.is_finite()) {
            return bad("perturbation scale must be positive");
        }
        if !(self.target_step > 0.0 && self.target_step.is_finite()) {
            return bad("target step must be positive");
        }
        if !(self.stability_fraction >= 0.0 && self.stability_fraction.is_finite()) {
            return bad("stability fraction must be non-negative");
        }
        if matches!(self.gain, Some(a) if !(a > 0.0 && a.is_finite())) {
            return bad("gain must be positive");
        }
        Ok(())
    }

    /// `A` for a run of `total_iterations` steps.
    pub fn stability_for(&self, total_iterations: usize) -> f64 {
        self.stability_fraction * total_iterations as f64
    }
}

/// Optimizer state: gain, step counter and perturbation stream.
///
/// The counter keeps running across calls to [`Spsa::step`], so a staged run
/// that reuses one instance continues the gain sequence where the previous
/// stage stopped.
#[derive(Debug, Clone)]
pub struct Spsa {
    alpha: f64,
    gamma: f64,
    c: f64,
    stability: f64,
    stability_fraction: f64,
    target_step: f64,
    calibration_iterations: usize,
    gain: Option<f64>,
    iteration: usize,
    evaluations: usize,
    rng: ChaCha8Rng,
}

impl Spsa {
    pub fn new(config: &SpsaConfig, total_iterations: usize) -> Result<Self, VqeError> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(1);
        Ok(Self {
            alpha: config.alpha,
            gamma: config.gamma,
            c: config.perturbation,
            stability: config.stability_for(total_iterations),
            stability_fraction: config.stability_fraction,
            target_step: config.target_step,
            calibration_iterations: config.calibration_iterations,
            gain: config.gain,
            iteration: 0,
            evaluations: 0,
            rng,
        })
    }

    /// Restarts the gain sequence for a new budget of `iterations` steps,
    /// rescaling `a` so the first step keeps its calibrated size. With
    /// `recalibrate` the gain is estimated again on the next call to
    /// [`Spsa::calibrate`]. The perturbation stream continues.
    pub fn restart(&mut self, iterations: usize, recalibrate: bool) {
        // keep the size of the first step: a / (A + 1)^alpha is invariant
        let first_step = self.gain.map(|a| a / (self.stability + 1.0).powf(self.alpha));
        self.iteration = 0;
        self.stability = self.stability_fraction * iterations as f64;
        self.gain = first_step.map(|s| s * (self.stability + 1.0).powf(self.alpha));
        if recalibrate {
            self.gain = None;
        }
    }

    pub fn gain(&self) -> Option<f64> {
        self.gain
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn evaluations(&self) -> usize {
        self.evaluations
    }

    fn perturbation(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| if self.rng.random::<bool>() { 1.0 } else { -1.0 }).collect()
    }

    fn evaluate<F, S>(&mut self, objective: &mut F, theta: &[f64], sink: &mut S) -> Result<f64, VqeError>
    where
        F: FnMut(&[f64]) -> f64,
        S: FnMut(f64),
    {
        let value = objective(theta);
        if !value.is_finite() {
            return Err(VqeError::NonFinite { evaluation: self.evaluations, value });
        }
        self.evaluations += 1;
        sink(value);
        Ok(value)
    }

    fn symmetric_pair<F, S>(
        &mut self,
        objective: &mut F,
        theta: &[f64],
        delta: &[f64],
        ck: f64,
        sink: &mut S,
    ) -> Result<(f64, f64), VqeError>
    where
        F: FnMut(&[f64]) -> f64,
        S: FnMut(f64),
    {
        let plus: Vec<f64> = theta.iter().zip(delta).map(|(t, d)| t + ck * d).collect();
        let minus: Vec<f64> = theta.iter().zip(delta).map(|(t, d)| t - ck * d).collect();
        let fp = self.evaluate(objective, &plus, sink)?;
        let fm = self.evaluate(objective, &minus, sink)?;
        Ok((fp, fm))
    }

    /// Chooses `a` so the first update has roughly the target magnitude.
    ///
    /// Does nothing if the gain is already known. Each calibration probe costs
    /// two evaluations, all passed to `sink`.
    pub fn calibrate<F, S>(&mut self, objective: &mut F, theta: &[f64], sink: &mut S) -> Result<f64, VqeError>
    where
        F: FnMut(&[f64]) -> f64,
        S: FnMut(f64),
    {
        if let Some(a) = self.gain {
            return Ok(a);
        }
        let mut magnitude = 0.0;
        for _ in 0..self.calibration_iterations {
            let delta = self.perturbation(theta.len());
            let (fp, fm) = self.symmetric_pair(objective, theta, &delta, self.c, sink)?;
            magnitude += (fp - fm).abs() / (2.0 * self.c);
        }
        let scale = self.target_step * (self.stability + 1.0).powf(self.alpha);
        let a = if self.calibration_iterations > 0 && magnitude > 0.0 {
            scale / (magnitude / self.calibration_iterations as f64)
        } else {
            scale
        };
        self.gain = Some(a);
        Ok(a)
    }

    /// One update of `theta` in place (two evaluations).
    pub fn step<F, S>(&mut self, objective: &mut F, theta: &mut [f64], sink: &mut S) -> Result<(), VqeError>
    where
        F: FnMut(&[f64]) -> f64,
        S: FnMut(f64),
    {
        let a = match self.gain {
            Some(a) => a,
            None => self.calibrate(objective, theta, sink)?,
        };
        let k = self.iteration as f64;
        let ak = a / (self.stability + k + 1.0).powf(self.alpha);
        let ck = self.c / (k + 1.0).powf(self.gamma);
        let delta = self.perturbation(theta.len());
        let (fp, fm) = self.symmetric_pair(objective, theta, &delta, ck, sink)?;
        let g = (fp - fm) / (2.0 * ck);
        // Rademacher entries are their own inverses
        for (t, d) in theta.iter_mut().zip(&delta) {
            *t -= ak * g * d;
        }
        self.iteration += 1;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpsaOutcome {
    /// Final iterate.
    pub parameters: Vec<f64>,
    /// Objective at the final iterate (one extra evaluation, not sent to the sink).
    pub value: f64,
    /// Lowest value among the evaluations sent to the sink.
    pub best_evaluated: Option<f64>,
}

/// Calibrates, then runs `config.max_iterations` SPSA steps from `initial`.
pub fn spsa_minimize<F, S>(
    mut objective: F,
    initial: &[f64],
    config: &SpsaConfig,
    mut sink: S,
) -> Result<SpsaOutcome, VqeError>
where
    F: FnMut(&[f64]) -> f64,
    S: FnMut(f64),
{
    if initial.iter().any(|t| !t.is_finite()) {
        return Err(VqeError::InvalidConfig("initial parameters must be finite".into()));
    }
    let mut spsa = Spsa::new(config, config.max_iterations)?;
    let mut theta = initial.to_vec();
    let mut best: Option<f64> = None;
    let mut tracking = |v: f64| {
        best = Some(best.map_or(v, |b: f64| b.min(v)));
        sink(v);
    };
    if config.max_iterations > 0 {
        spsa.calibrate(&mut objective, &theta, &mut tracking)?;
    }
    for _ in 0..config.max_iterations {
        spsa.step(&mut objective, &mut theta, &mut tracking)?;
    }
    let value = objective(&theta);
    if !value.is_finite() {
        return Err(VqeError::NonFinite { evaluation: spsa.evaluations(), value });
    }
    Ok(SpsaOutcome { parameters: theta, value, best_evaluated: best })
}
