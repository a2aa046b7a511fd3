//! Dense-matrix reference constructions.
//!
//! Everything here builds explicit `2^N x 2^N` matrices from first principles
//! (Kronecker products of 2x2 Paulis, occupation-number ladder operators) and
//! shares no code with the bitplane Pauli algebra or the statevector kernels.
//! Test suites use these as independent oracles; they are only practical for
//! small registers.
//!
//! Basis index bit `q` is the state of qubit `q` (equivalently, the occupation
//! of fermionic mode `q`).

use nalgebra::DMatrix;
use num_complex::Complex64;

use truncvqe::FermionHamiltonian;
use truncvqe::{Pauli, PauliString, QubitHamiltonian};

pub type CMatrix = DMatrix<Complex64>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn pauli_matrix(p: Pauli) -> CMatrix {
    let (a, b, cc, d) = match p {
        Pauli::I => (c(1., 0.), c(0., 0.), c(0., 0.), c(1., 0.)),
        Pauli::X => (c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)),
        Pauli::Y => (c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)),
        Pauli::Z => (c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)),
    };
    CMatrix::from_row_slice(2, 2, &[a, b, cc, d])
}

/// Kronecker product with qubit `N-1` as the leftmost (most significant) factor.
pub fn kron_qubits(factors_by_qubit: &[CMatrix]) -> CMatrix {
    let mut m = CMatrix::identity(1, 1);
    for f in factors_by_qubit.iter().rev() {
        m = m.kronecker(f);
    }
    m
}

pub fn string_matrix(s: &PauliString) -> CMatrix {
    let factors: Vec<CMatrix> = s.factors().into_iter().map(pauli_matrix).collect();
    kron_qubits(&factors)
}

pub fn hamiltonian_matrix(h: &QubitHamiltonian) -> CMatrix {
    let dim = 1usize << h.num_qubits();
    let mut m = CMatrix::zeros(dim, dim);
    for t in h.iter() {
        m += string_matrix(&t.string) * c(t.coefficient, 0.0);
    }
    m
}

/// `gate` on `qubit`, identity elsewhere.
pub fn embed_single_qubit(num_qubits: usize, qubit: usize, gate: &CMatrix) -> CMatrix {
    let factors: Vec<CMatrix> = (0..num_qubits)
        .map(|q| if q == qubit { gate.clone() } else { CMatrix::identity(2, 2) })
        .collect();
    kron_qubits(&factors)
}

pub fn ry_matrix(theta: f64) -> CMatrix {
    let (s, co) = (theta / 2.0).sin_cos();
    CMatrix::from_row_slice(2, 2, &[c(co, 0.), c(-s, 0.), c(s, 0.), c(co, 0.)])
}

/// `CZ = (I + Z_a + Z_b - Z_a Z_b) / 2`.
pub fn cz_matrix(num_qubits: usize, a: usize, b: usize) -> CMatrix {
    let z = pauli_matrix(Pauli::Z);
    let id = CMatrix::identity(1 << num_qubits, 1 << num_qubits);
    let za = embed_single_qubit(num_qubits, a, &z);
    let zb = embed_single_qubit(num_qubits, b, &z);
    let zz = &za * &zb;
    (id + za + zb - zz) * c(0.5, 0.0)
}

/// Annihilation operator for `mode` on `num_modes` modes, built in the
/// occupation-number basis with the sign `(-1)^(occupied modes below mode)`.
pub fn annihilation_matrix(num_modes: usize, mode: usize) -> CMatrix {
    let dim = 1usize << num_modes;
    let mut m = CMatrix::zeros(dim, dim);
    for s in 0..dim {
        if s >> mode & 1 == 1 {
            let below = (0..mode).filter(|&p| s >> p & 1 == 1).count();
            let sign = if below % 2 == 0 { 1.0 } else { -1.0 };
            m[(s ^ (1 << mode), s)] = c(sign, 0.0);
        }
    }
    m
}

pub fn creation_matrix(num_modes: usize, mode: usize) -> CMatrix {
    annihilation_matrix(num_modes, mode).adjoint()
}

/// Dense matrix of `H_f` assembled directly from its integral tensors.
pub fn fermion_hamiltonian_matrix(h: &FermionHamiltonian) -> CMatrix {
    let m = h.num_modes();
    let dim = 1usize << m;
    let ann: Vec<CMatrix> = (0..m).map(|p| annihilation_matrix(m, p)).collect();
    let cre: Vec<CMatrix> = ann.iter().map(|a| a.adjoint()).collect();
    let mut out = CMatrix::identity(dim, dim) * c(h.constant(), 0.0);
    for i in 0..m {
        for j in 0..m {
            let v = h.one_body(i, j);
            if v != 0.0 {
                out += &cre[i] * &ann[j] * c(v, 0.0);
            }
        }
    }
    for i in 0..m {
        for j in 0..m {
            let cc = &cre[i] * &cre[j];
            for k in 0..m {
                for l in 0..m {
                    let v = h.two_body(i, j, k, l);
                    if v != 0.0 {
                        out += &cc * &ann[k] * &ann[l] * c(0.5 * v, 0.0);
                    }
                }
            }
        }
    }
    out
}

/// Ascending eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `exp(theta * g)` for an anti-Hermitian `g`, via the spectral decomposition of `i g`.
pub fn expm_anti_hermitian(g: &CMatrix, theta: f64) -> CMatrix {
    let herm = g * c(0.0, 1.0);
    let eig = herm.symmetric_eigen();
    let v = &eig.eigenvectors;
    let phases = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        eig.eigenvalues.len(),
        eig.eigenvalues.iter().map(|&l| Complex64::from_polar(1.0, -theta * l)),
    ));
    v * phases * v.adjoint()
}

/// `<psi| m |psi>` for a dense vector.
pub fn dense_expectation(psi: &[Complex64], m: &CMatrix) -> Complex64 {
    let v = nalgebra::DVector::from_column_slice(psi);
    (v.adjoint() * m * &v)[(0, 0)]
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
