//! Parameterized trial circuits.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4};

use serde::{Deserialize, Serialize};

use super::{Observable, SimulatorError, StateVector};

/// CZ pattern between rotation layers of the two-local circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Entanglement {
    /// `CZ(i, i+1)` for every neighbouring pair.
    #[default]
    Linear,
    /// `CZ(i, j)` for every pair `i < j`.
    Full,
}

impl Entanglement {
    pub fn label(self) -> &'static str {
        match self {
            Entanglement::Linear => "linear",
            Entanglement::Full => "full",
        }
    }

    fn pairs(self, n: usize) -> Vec<(usize, usize)> {
        match self {
            Entanglement::Linear => (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect(),
            Entanglement::Full => (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        }
    }
}

/// `a+_create... a_annihilate... - h.c.`; both lists ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Excitation {
    pub annihilate: Vec<usize>,
    pub create: Vec<usize>,
}

impl Excitation {
    /// Applies `exp(theta * (A - A+))` where `A = a+_c1 a+_c2 ... a_a2 a_a1`.
    ///
    /// `A` maps each basis state with the annihilated modes occupied and the
    /// created modes empty to a single partner state with sign `s`; on that
    /// two-dimensional subspace the generator is a plane rotation.
    fn apply(&self, state: &mut StateVector, theta: f64) {
        let (sin, cos) = theta.sin_cos();
        let occ_mask: usize = self.annihilate.iter().map(|m| 1usize << m).sum();
        let emp_mask: usize = self.create.iter().map(|m| 1usize << m).sum();
        let amps = &mut state.amplitudes;
        for b in 0..amps.len() {
            if b & occ_mask != occ_mask || b & emp_mask != 0 {
                continue;
            }
            let (partner, sign) = self.act(b);
            let a = amps[b];
            let p = amps[partner];
            amps[b] = a * cos - p * (sign * sin);
            amps[partner] = p * cos + a * (sign * sin);
        }
    }

    /// `A|b> = sign |partner>`, operators applied right to left.
    fn act(&self, mut b: usize) -> (usize, f64) {
        let mut sign = 1.0;
        let mut flip = |b: &mut usize, mode: usize| {
            if (*b & ((1usize << mode) - 1)).count_ones() % 2 == 1 {
                sign = -sign;
            }
            *b ^= 1usize << mode;
        };
        for &m in &self.annihilate {
            flip(&mut b, m);
        }
        for &m in self.create.iter().rev() {
            flip(&mut b, m);
        }
        (b, sign)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AnsatzKind {
    /// `Ry` layer, then `repetitions` x (CZ entanglers, `Ry` layer).
    TwoLocal { repetitions: usize, entanglement: Entanglement },
    /// Hartree-Fock reference followed by one Trotter step over spin-conserving
    /// singles then doubles.
    Uccsd { num_electrons: usize, excitations: Vec<Excitation> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Ansatz {
    num_qubits: usize,
    kind: AnsatzKind,
}

impl Ansatz {
    pub fn two_local(num_qubits: usize, repetitions: usize, entanglement: Entanglement) -> Result<Self, SimulatorError> {
        if num_qubits == 0 {
            return Err(SimulatorError::InvalidAnsatz("two-local needs at least one qubit".into()));
        }
        Ok(Self { num_qubits, kind: AnsatzKind::TwoLocal { repetitions, entanglement } })
    }

    /// UCCSD over interleaved spin-orbitals (`2p` alpha, `2p + 1` beta) with
    /// the lowest `num_electrons` modes occupied in the reference.
    pub fn uccsd(num_spin_orbitals: usize, num_electrons: usize) -> Result<Self, SimulatorError> {
        if num_spin_orbitals == 0 || num_electrons > num_spin_orbitals {
            return Err(SimulatorError::InvalidAnsatz(format!(
                "{num_electrons} electrons in {num_spin_orbitals} spin-orbitals"
            )));
        }
        let occ: Vec<usize> = (0..num_electrons).collect();
        let virt: Vec<usize> = (num_electrons..num_spin_orbitals).collect();
        let spin = |m: usize| m % 2;
        let mut excitations = Vec::new();
        for &i in &occ {
            for &a in &virt {
                if spin(i) == spin(a) {
                    excitations.push(Excitation { annihilate: vec![i], create: vec![a] });
                }
            }
        }
        for (x, &i) in occ.iter().enumerate() {
            for &j in &occ[x + 1..] {
                for (y, &a) in virt.iter().enumerate() {
                    for &b in &virt[y + 1..] {
                        let mut from = [spin(i), spin(j)];
                        let mut to = [spin(a), spin(b)];
                        from.sort_unstable();
                        to.sort_unstable();
                        if from == to {
                            excitations.push(Excitation { annihilate: vec![i, j], create: vec![a, b] });
                        }
                    }
                }
            }
        }
        Ok(Self { num_qubits: num_spin_orbitals, kind: AnsatzKind::Uccsd { num_electrons, excitations } })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn kind(&self) -> &AnsatzKind {
        &self.kind
    }

    pub fn num_parameters(&self) -> usize {
        match &self.kind {
            AnsatzKind::TwoLocal { repetitions, .. } => self.num_qubits * (repetitions + 1),
            AnsatzKind::Uccsd { excitations, .. } => excitations.len(),
        }
    }

    pub fn label(&self) -> String {
        match &self.kind {
            AnsatzKind::TwoLocal { repetitions, entanglement } => {
                format!("two_local(ry, cz, reps={repetitions}, {})", entanglement.label())
            }
            AnsatzKind::Uccsd { num_electrons, excitations } => {
                format!("uccsd(electrons={num_electrons}, generators={})", excitations.len())
            }
        }
    }
}

/// `U(theta)|0...0>`, or `U(theta)|HF>` for UCCSD.
pub fn prepare_state(ansatz: &Ansatz, parameters: &[f64]) -> Result<StateVector, SimulatorError> {
    let expected = ansatz.num_parameters();
    if parameters.len() != expected {
        return Err(SimulatorError::ParameterLength { expected, found: parameters.len() });
    }
    let n = ansatz.num_qubits;
    match &ansatz.kind {
        AnsatzKind::TwoLocal { repetitions, entanglement } => {
            let mut state = StateVector::zero_state(n)?;
            let pairs = entanglement.pairs(n);
            for layer in 0..=*repetitions {
                if layer > 0 {
                    for &(a, b) in &pairs {
                        state.apply_cz(a, b);
                    }
                }
                for q in 0..n {
                    state.apply_ry(q, parameters[layer * n + q]);
                }
            }
            Ok(state)
        }
        AnsatzKind::Uccsd { num_electrons, excitations } => {
            let mut state = StateVector::basis(n, (1usize << num_electrons) - 1)?;
            for (ex, &theta) in excitations.iter().zip(parameters) {
                ex.apply(&mut state, theta);
            }
            Ok(state)
        }
    }
}

/// Analytic gradient of `<H>` by parameter shifts.
///
/// `Ry` angles enter with a single frequency (two-term rule at `+-pi/2`).
/// Excitation angles enter with frequencies 1 and 2, handled by the
/// four-term rule at `+-pi/4` and `+-3pi/4`.
pub fn parameter_shift_gradient(
    ansatz: &Ansatz,
    parameters: &[f64],
    observable: &Observable,
) -> Result<Vec<f64>, SimulatorError> {
    let mut work = parameters.to_vec();
    let energy_at = |k: usize, shift: f64, work: &mut Vec<f64>| -> Result<f64, SimulatorError> {
        work[k] = parameters[k] + shift;
        let e = observable.expectation(&prepare_state(ansatz, work)?);
        work[k] = parameters[k];
        e
    };
    let mut grad = Vec::with_capacity(parameters.len());
    for k in 0..parameters.len() {
        let g = match ansatz.kind {
            AnsatzKind::TwoLocal { .. } => {
                0.5 * (energy_at(k, FRAC_PI_2, &mut work)? - energy_at(k, -FRAC_PI_2, &mut work)?)
            }
            AnsatzKind::Uccsd { .. } => {
                let near = energy_at(k, FRAC_PI_4, &mut work)? - energy_at(k, -FRAC_PI_4, &mut work)?;
                let far = energy_at(k, 3.0 * FRAC_PI_4, &mut work)? - energy_at(k, -3.0 * FRAC_PI_4, &mut work)?;
                let r = FRAC_1_SQRT_2 / 2.0;
                near * (r + 0.5) + far * (r - 0.5)
            }
        };
        grad.push(g);
    }
    Ok(grad)
}
