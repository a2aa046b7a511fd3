//! Exact statevector simulation.
//!
//! Amplitudes are stored densely; basis index bit `q` is qubit `q`, matching
//! the Jordan-Wigner mode order. Hamiltonians are compiled once into an
//! [`Observable`] so repeated expectation values during optimization only
//! touch the statevector.

mod ansatz;
mod exact;
mod sampling;

use num_complex::Complex64;
use thiserror::Error;

use crate::pauli::{QubitHamiltonian, DROP_TOLERANCE};

pub use ansatz::{parameter_shift_gradient, prepare_state, Ansatz, AnsatzKind, Entanglement, Excitation};
pub use exact::{exact_ground_energy, exact_ground_energy_with_limit, DEFAULT_MAX_QUBITS};
pub use sampling::sampled_expectation;

/// Tolerance on `||psi|| = 1`.
pub const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimulatorError {
    #[error("qubit count mismatch: state has {state}, operator has {operator}")]
    QubitMismatch { state: usize, operator: usize },
    #[error("expected {expected} parameters, got {found}")]
    ParameterLength { expected: usize, found: usize },
    #[error("{requested} qubits exceeds the simulation limit of {limit}")]
    QubitBudget { requested: usize, limit: usize },
    #[error("state is not normalized (norm {0})")]
    NotNormalized(f64),
    #[error("invalid ansatz: {0}")]
    InvalidAnsatz(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

fn parity(bits: u64) -> f64 {
    if bits.count_ones().is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

impl StateVector {
    /// Computational basis state `|index>`.
    pub fn basis(num_qubits: usize, index: usize) -> Result<Self, SimulatorError> {
        if num_qubits == 0 || num_qubits > exact::HARD_QUBIT_LIMIT {
            return Err(SimulatorError::QubitBudget { requested: num_qubits, limit: exact::HARD_QUBIT_LIMIT });
        }
        let dim = 1usize << num_qubits;
        if index >= dim {
            return Err(SimulatorError::InvalidAnsatz(format!("basis index {index} outside {dim}")));
        }
        let mut amplitudes = vec![zero(); dim];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(Self { num_qubits, amplitudes })
    }

    pub fn zero_state(num_qubits: usize) -> Result<Self, SimulatorError> {
        Self::basis(num_qubits, 0)
    }

    pub fn from_amplitudes(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self, SimulatorError> {
        if amplitudes.len() != 1usize << num_qubits {
            return Err(SimulatorError::QubitMismatch { state: amplitudes.len().trailing_zeros() as usize, operator: num_qubits });
        }
        let s = Self { num_qubits, amplitudes };
        let n = s.norm();
        if (n - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimulatorError::NotNormalized(n));
        }
        Ok(s)
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// Arbitrary single-qubit gate `[[m00, m01], [m10, m11]]` on `qubit`.
    pub fn apply_single(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) {
        let bit = 1usize << qubit;
        for b in 0..self.amplitudes.len() {
            if b & bit == 0 {
                let a0 = self.amplitudes[b];
                let a1 = self.amplitudes[b | bit];
                self.amplitudes[b] = m[0][0] * a0 + m[0][1] * a1;
                self.amplitudes[b | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// `Ry(theta) = exp(-i theta Y / 2)`.
    pub fn apply_ry(&mut self, qubit: usize, theta: f64) {
        let (s, c) = (theta / 2.0).sin_cos();
        let bit = 1usize << qubit;
        for b in 0..self.amplitudes.len() {
            if b & bit == 0 {
                let a0 = self.amplitudes[b];
                let a1 = self.amplitudes[b | bit];
                self.amplitudes[b] = a0 * c - a1 * s;
                self.amplitudes[b | bit] = a0 * s + a1 * c;
            }
        }
    }

    pub fn apply_cz(&mut self, a: usize, b: usize) {
        let mask = (1usize << a) | (1usize << b);
        for (idx, amp) in self.amplitudes.iter_mut().enumerate() {
            if idx & mask == mask {
                *amp = -*amp;
            }
        }
    }

    pub fn apply_x(&mut self, qubit: usize) {
        let bit = 1usize << qubit;
        for b in 0..self.amplitudes.len() {
            if b & bit == 0 {
                self.amplitudes.swap(b, b | bit);
            }
        }
    }

    /// Writes `(index, real, imag)` lines, a debugging sibling of the Pauli text format.
    pub fn to_text(&self) -> String {
        let mut out = format!("# qubits: {}\n", self.num_qubits);
        for (i, a) in self.amplitudes.iter().enumerate() {
            out.push_str(&format!("{} {:.16e} {:.16e}\n", i, a.re, a.im));
        }
        out
    }
}

/// A Hamiltonian compiled for repeated evaluation against statevectors.
///
/// Diagonal (`I`/`Z`) terms are folded into one energy per basis state; the
/// rest are grouped by their `X` mask, since `P|b> = phase(b) |b ^ x>`.
#[derive(Debug, Clone)]
pub struct Observable {
    num_qubits: usize,
    diagonal: Option<Vec<f64>>,
    flips: Vec<(usize, Vec<(u64, Complex64)>)>,
}

impl Observable {
    pub fn new(h: &QubitHamiltonian) -> Result<Self, SimulatorError> {
        let n = h.num_qubits();
        if n > exact::HARD_QUBIT_LIMIT {
            return Err(SimulatorError::QubitBudget { requested: n, limit: exact::HARD_QUBIT_LIMIT });
        }
        let dim = 1usize << n;
        let mut diagonal: Option<Vec<f64>> = None;
        let mut flips: Vec<(usize, Vec<(u64, Complex64)>)> = Vec::new();
        for t in h.iter() {
            let s = t.string;
            if s.is_diagonal() {
                let d = diagonal.get_or_insert_with(|| vec![0.0; dim]);
                let z = s.z_bits();
                for (b, e) in d.iter_mut().enumerate() {
                    *e += t.coefficient * parity(b as u64 & z);
                }
            } else {
                // P = i^(#Y) X^x Z^z
                let coef = Complex64::new(t.coefficient, 0.0) * crate::pauli::Phase::from_power(s.y_count()).to_complex();
                let x = s.x_bits() as usize;
                match flips.iter_mut().find(|(fx, _)| *fx == x) {
                    Some((_, zs)) => zs.push((s.z_bits(), coef)),
                    None => flips.push((x, vec![(s.z_bits(), coef)])),
                }
            }
        }
        Ok(Self { num_qubits: n, diagonal, flips })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    fn check(&self, state: &StateVector) -> Result<(), SimulatorError> {
        if state.num_qubits != self.num_qubits {
            return Err(SimulatorError::QubitMismatch { state: state.num_qubits, operator: self.num_qubits });
        }
        Ok(())
    }

    /// `<psi|H|psi>` including the (ideally zero) imaginary residue.
    pub fn expectation_complex(&self, state: &StateVector) -> Result<Complex64, SimulatorError> {
        self.check(state)?;
        let psi = &state.amplitudes;
        let mut total = zero();
        if let Some(d) = &self.diagonal {
            let e: f64 = psi.iter().zip(d).map(|(a, e)| a.norm_sqr() * e).sum();
            total += e;
        }
        for (x, zs) in &self.flips {
            let mut acc = zero();
            for (b, amp) in psi.iter().enumerate() {
                let w: Complex64 = zs.iter().map(|(z, c)| c * parity(b as u64 & z)).sum();
                acc += psi[b ^ x].conj() * w * amp;
            }
            total += acc;
        }
        Ok(total)
    }

    pub fn expectation(&self, state: &StateVector) -> Result<f64, SimulatorError> {
        Ok(self.expectation_complex(state)?.re)
    }

    /// `H|v>` for an arbitrary (not necessarily normalized) vector.
    pub fn apply(&self, v: &[Complex64], out: &mut [Complex64]) {
        out.iter_mut().for_each(|o| *o = zero());
        if let Some(d) = &self.diagonal {
            for ((o, a), e) in out.iter_mut().zip(v).zip(d) {
                *o += a * e;
            }
        }
        for (x, zs) in &self.flips {
            for (b, amp) in v.iter().enumerate() {
                let w: Complex64 = zs.iter().map(|(z, c)| c * parity(b as u64 & z)).sum();
                out[b ^ x] += w * amp;
            }
        }
    }
}

/// Exact `sum_k c_k <psi|P_k|psi>`.
pub fn expectation(state: &StateVector, h: &QubitHamiltonian) -> Result<f64, SimulatorError> {
    let obs = Observable::new(h)?;
    let e = obs.expectation_complex(state)?;
    debug_assert!(e.im.abs() < 1e-10 * (1.0 + h.l1_norm()), "imaginary expectation residue {}", e.im);
    if e.im.abs() >= DROP_TOLERANCE * (1.0 + h.l1_norm()) * 100.0 {
        log::warn!("expectation has imaginary residue {:e}", e.im);
    }
    Ok(e.re)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::{PauliString, PauliTerm};

    fn ham(n: usize, terms: &[(f64, &str)]) -> QubitHamiltonian {
        QubitHamiltonian::from_terms(
            n,
            terms.iter().map(|(c, l)| PauliTerm::new(*c, l.parse::<PauliString>().unwrap())),
        )
        .unwrap()
    }

    #[test]
    fn z_on_zero_state() {
        let s = StateVector::zero_state(1).unwrap();
        assert_eq!(expectation(&s, &ham(1, &[(1.0, "Z")])).unwrap(), 1.0);
    }

    #[test]
    fn empty_number_operator() {
        let s = StateVector::zero_state(2).unwrap();
        let h = ham(2, &[(0.5, "II"), (-0.5, "ZI")]);
        assert_eq!(expectation(&s, &h).unwrap(), 0.0);
    }

    #[test]
    fn qubit_mismatch_is_rejected() {
        let s = StateVector::zero_state(2).unwrap();
        assert!(matches!(
            expectation(&s, &ham(1, &[(1.0, "Z")])),
            Err(SimulatorError::QubitMismatch { state: 2, operator: 1 })
        ));
    }

    #[test]
    fn gates_act_on_the_right_bit() {
        let mut s = StateVector::zero_state(3).unwrap();
        s.apply_x(1);
        assert_eq!(s.amplitudes()[0b010], Complex64::new(1.0, 0.0));
        assert_eq!(expectation(&s, &ham(3, &[(1.0, "IZI")])).unwrap(), -1.0);
        s.apply_x(2);
        s.apply_cz(1, 2);
        assert_eq!(s.amplitudes()[0b110], Complex64::new(-1.0, 0.0));
    }

    #[test]
    fn ry_pi_flips() {
        let mut s = StateVector::zero_state(1).unwrap();
        s.apply_ry(0, std::f64::consts::PI);
        assert!((s.amplitudes()[1].norm() - 1.0).abs() < 1e-15);
        assert!(s.amplitudes()[0].norm() < 1e-15);
    }

    #[test]
    fn y_expectation_on_plus_i_state() {
        // |+i> = (|0> + i|1>)/sqrt(2) has <Y> = 1
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let s = StateVector::from_amplitudes(1, vec![Complex64::new(r, 0.0), Complex64::new(0.0, r)]).unwrap();
        assert!((expectation(&s, &ham(1, &[(1.0, "Y")])).unwrap() - 1.0).abs() < 1e-15);
        assert!(expectation(&s, &ham(1, &[(1.0, "X")])).unwrap().abs() < 1e-15);
    }

    #[test]
    fn unnormalized_amplitudes_rejected() {
        assert!(matches!(
            StateVector::from_amplitudes(1, vec![Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)]),
            Err(SimulatorError::NotNormalized(_))
        ));
    }
}
