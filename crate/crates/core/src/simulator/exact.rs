//! Ground-state energies by exact diagonalization.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Observable, SimulatorError};
use crate::pauli::QubitHamiltonian;

/// Default register ceiling for [`exact_ground_energy`].
pub const DEFAULT_MAX_QUBITS: usize = 16;

/// Absolute ceiling for any dense statevector in this crate.
pub(crate) const HARD_QUBIT_LIMIT: usize = 26;

/// Registers up to this size are diagonalized densely; larger ones use Lanczos.
const DENSE_LIMIT: usize = 8;

const LANCZOS_MAX_STEPS: usize = 300;
const LANCZOS_TOLERANCE: f64 = 1e-11;

/// Smallest eigenvalue of `h` on the full `2^N` space, up to [`DEFAULT_MAX_QUBITS`].
pub fn exact_ground_energy(h: &QubitHamiltonian) -> Result<f64, SimulatorError> {
    exact_ground_energy_with_limit(h, DEFAULT_MAX_QUBITS)
}

pub fn exact_ground_energy_with_limit(h: &QubitHamiltonian, max_qubits: usize) -> Result<f64, SimulatorError> {
    let n = h.num_qubits();
    let limit = max_qubits.min(HARD_QUBIT_LIMIT);
    if n > limit {
        return Err(SimulatorError::QubitBudget { requested: n, limit });
    }
    let obs = Observable::new(h)?;
    if n <= DENSE_LIMIT {
        Ok(dense_ground(&obs))
    } else {
        Ok(lanczos_ground(&obs))
    }
}

fn dense_ground(obs: &Observable) -> f64 {
    let dim = 1usize << obs.num_qubits();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    let mut basis = vec![Complex64::new(0.0, 0.0); dim];
    let mut column = vec![Complex64::new(0.0, 0.0); dim];
    for b in 0..dim {
        basis[b] = Complex64::new(1.0, 0.0);
        obs.apply(&basis, &mut column);
        m.set_column(b, &DVector::from_column_slice(&column));
        basis[b] = Complex64::new(0.0, 0.0);
    }
    m.symmetric_eigenvalues().iter().copied().fold(f64::INFINITY, f64::min)
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn normalize(v: &mut [Complex64]) -> f64 {
    let n = v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    v.iter_mut().for_each(|a| *a /= n);
    n
}

/// Lanczos with full reorthogonalization from a fixed pseudo-random start.
fn lanczos_ground(obs: &Observable) -> f64 {
    let dim = 1usize << obs.num_qubits();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a2c_2057);
    let mut v: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
        .collect();
    normalize(&mut v);
    let mut basis: Vec<Vec<Complex64>> = vec![v];
    let mut alphas: Vec<f64> = Vec::new();
    let mut betas: Vec<f64> = Vec::new();
    let mut w = vec![Complex64::new(0.0, 0.0); dim];
    let mut estimate = f64::INFINITY;
    for step in 0..LANCZOS_MAX_STEPS.min(dim) {
        obs.apply(&basis[step], &mut w);
        alphas.push(dot(&basis[step], &w).re);
        // two passes of Gram-Schmidt against the whole Krylov basis
        for _ in 0..2 {
            for q in &basis {
                let overlap = dot(q, &w);
                w.iter_mut().zip(q).for_each(|(a, b)| *a -= overlap * b);
            }
        }
        let beta = w.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let k = alphas.len();
        let mut t = DMatrix::<f64>::zeros(k, k);
        for i in 0..k {
            t[(i, i)] = alphas[i];
            if i + 1 < k {
                t[(i, i + 1)] = betas[i];
                t[(i + 1, i)] = betas[i];
            }
        }
        let eig = t.symmetric_eigen();
        let (idx, &lowest) = eig
            .eigenvalues
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .expect("non-empty tridiagonal");
        estimate = lowest;
        let residual = (beta * eig.eigenvectors[(k - 1, idx)]).abs();
        if residual < LANCZOS_TOLERANCE || beta < 1e-13 {
            break;
        }
        betas.push(beta);
        w.iter_mut().for_each(|a| *a /= beta);
        basis.push(std::mem::replace(&mut w, vec![Complex64::new(0.0, 0.0); dim]));
    }
    estimate
}
