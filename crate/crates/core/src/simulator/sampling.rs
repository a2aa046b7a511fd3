//! Shot-based expectation estimates.
//!
//! Terms are measured group by group: each qubit-wise commuting group is
//! rotated into the computational basis, `shots` bitstrings are drawn from the
//! resulting distribution, and every member term is estimated from the parity
//! of its support. Exact simulation remains the default everywhere else.

use num_complex::Complex64;
use rand::Rng;

use super::{SimulatorError, StateVector};
use crate::pauli::{qubitwise_commuting_groups, Pauli, QubitHamiltonian};

pub fn sampled_expectation<R: Rng + ?Sized>(
    state: &StateVector,
    h: &QubitHamiltonian,
    shots: usize,
    rng: &mut R,
) -> Result<f64, SimulatorError> {
    if state.num_qubits() != h.num_qubits() {
        return Err(SimulatorError::QubitMismatch { state: state.num_qubits(), operator: h.num_qubits() });
    }
    if shots == 0 {
        return Err(SimulatorError::InvalidAnsatz("shot count must be positive".into()));
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let c = |re: f64, im: f64| Complex64::new(re, im);
    let hadamard = [[c(r, 0.0), c(r, 0.0)], [c(r, 0.0), c(-r, 0.0)]];
    // H S+ takes the Y eigenbasis to the Z eigenbasis
    let y_to_z = [[c(r, 0.0), c(0.0, -r)], [c(r, 0.0), c(0.0, r)]];
    let mut total = h.identity_coefficient();
    for group in qubitwise_commuting_groups(h) {
        let mut rotated = state.clone();
        for q in 0..h.num_qubits() {
            match group.iter().map(|t| t.string.get(q)).find(|p| *p != Pauli::I) {
                Some(Pauli::X) => rotated.apply_single(q, hadamard),
                Some(Pauli::Y) => rotated.apply_single(q, y_to_z),
                _ => {}
            }
        }
        let mut cumulative = rotated.probabilities();
        for i in 1..cumulative.len() {
            cumulative[i] += cumulative[i - 1];
        }
        let top = *cumulative.last().expect("non-empty state");
        let mut parity_sums = vec![0i64; group.len()];
        for _ in 0..shots {
            let u = rng.random::<f64>() * top;
            let outcome = cumulative.partition_point(|&p| p <= u).min(cumulative.len() - 1) as u64;
            for (sum, t) in parity_sums.iter_mut().zip(&group) {
                *sum += if (outcome & t.string.support()).count_ones().is_multiple_of(2) { 1 } else { -1 };
            }
        }
        for (sum, t) in parity_sums.iter().zip(&group) {
            total += t.coefficient * (*sum as f64 / shots as f64);
        }
    }
    Ok(total)
}
