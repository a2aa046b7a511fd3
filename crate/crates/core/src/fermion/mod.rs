//! Second-quantized molecular Hamiltonians.
//!
//! `H_f = c + sum_ij h_ij a+_i a_j + 1/2 sum_ijkl h_ijkl a+_i a+_j a_k a_l`
//! over `M` spin-orbitals. Spin-orbitals are interleaved: spatial orbital `p`
//! maps to modes `2p` (alpha) and `2p + 1` (beta).

mod classify;
mod fcidump;
mod jw;

use std::fmt;

use thiserror::Error;

use crate::pauli::DROP_TOLERANCE;

pub use classify::{class_norm_profile, classify, ClassProfile, ClassifiedHamiltonian};
pub use fcidump::{parse_fcidump, write_fcidump, FcidumpError, SpatialIntegrals};
pub use jw::{jordan_wigner, jordan_wigner_complex, jordan_wigner_terms, ladder_operator};

/// Tolerance on `h_ij = h_ji` and `h_ijkl = h_lkji`.
pub const SYMMETRY_TOLERANCE: f64 = 1e-10;

/// Mode count ceiling; the qubit image must fit a 64-qubit Pauli string.
pub const MAX_MODES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FermionError {
    #[error("mode count must be between 1 and {MAX_MODES}, got {0}")]
    ModeCount(usize),
    #[error("{tensor} tensor has {found} entries, expected {expected}")]
    Dimension { tensor: &'static str, expected: usize, found: usize },
    #[error("one-body tensor is not symmetric (max deviation {0:e})")]
    NotSymmetric(f64),
    #[error("two-body tensor violates h_ijkl = h_lkji (max deviation {0:e})")]
    NotHermitian(f64),
    #[error("non-finite integral value")]
    NonFinite,
}

/// Integral tensors of a fermionic Hamiltonian in the physicist ordering above.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionHamiltonian {
    num_modes: usize,
    num_electrons: Option<usize>,
    constant: f64,
    one_body: Vec<f64>,
    two_body: Vec<f64>,
}

impl FermionHamiltonian {
    /// Validates tensor shapes and the Hermiticity conditions.
    ///
    /// `one_body` is row-major `M x M`; `two_body` is row-major `M^4` indexed `[i][j][k][l]`.
    pub fn new(
        num_modes: usize,
        constant: f64,
        one_body: Vec<f64>,
        two_body: Vec<f64>,
    ) -> Result<Self, FermionError> {
        if num_modes == 0 || num_modes > MAX_MODES {
            return Err(FermionError::ModeCount(num_modes));
        }
        let m = num_modes;
        if one_body.len() != m * m {
            return Err(FermionError::Dimension { tensor: "one-body", expected: m * m, found: one_body.len() });
        }
        if two_body.len() != m.pow(4) {
            return Err(FermionError::Dimension { tensor: "two-body", expected: m.pow(4), found: two_body.len() });
        }
        if !constant.is_finite() || one_body.iter().chain(&two_body).any(|v| !v.is_finite()) {
            return Err(FermionError::NonFinite);
        }
        let h = Self { num_modes, num_electrons: None, constant, one_body, two_body };
        let asym = h.one_body_asymmetry();
        if asym >= SYMMETRY_TOLERANCE {
            return Err(FermionError::NotSymmetric(asym));
        }
        let herm = h.two_body_hermiticity_violation();
        if herm >= SYMMETRY_TOLERANCE {
            return Err(FermionError::NotHermitian(herm));
        }
        Ok(h)
    }

    /// All-zero Hamiltonian on `num_modes` modes.
    pub fn zero(num_modes: usize) -> Result<Self, FermionError> {
        Self::new(num_modes, 0.0, vec![0.0; num_modes * num_modes], vec![0.0; num_modes.pow(4)])
    }

    pub fn with_num_electrons(mut self, n: usize) -> Self {
        self.num_electrons = Some(n);
        self
    }

    pub fn num_modes(&self) -> usize {
        self.num_modes
    }

    pub fn num_electrons(&self) -> Option<usize> {
        self.num_electrons
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    pub fn one_body(&self, i: usize, j: usize) -> f64 {
        self.one_body[i * self.num_modes + j]
    }

    pub fn two_body(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.two_body[self.index4(i, j, k, l)]
    }

    pub fn one_body_tensor(&self) -> &[f64] {
        &self.one_body
    }

    pub fn two_body_tensor(&self) -> &[f64] {
        &self.two_body
    }

    fn index4(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        let m = self.num_modes;
        ((i * m + j) * m + k) * m + l
    }

    pub fn one_body_asymmetry(&self) -> f64 {
        let m = self.num_modes;
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..i {
                worst = worst.max((self.one_body(i, j) - self.one_body(j, i)).abs());
            }
        }
        worst
    }

    pub fn two_body_hermiticity_violation(&self) -> f64 {
        let m = self.num_modes;
        let mut worst = 0.0f64;
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        worst = worst.max((self.two_body(i, j, k, l) - self.two_body(l, k, j, i)).abs());
                    }
                }
            }
        }
        worst
    }

    /// Tensor-wise sum. The electron count is kept when both sides agree.
    pub fn add(&self, other: &FermionHamiltonian) -> Result<FermionHamiltonian, FermionError> {
        if self.num_modes != other.num_modes {
            return Err(FermionError::Dimension {
                tensor: "mode",
                expected: self.num_modes,
                found: other.num_modes,
            });
        }
        let zip = |a: &[f64], b: &[f64]| a.iter().zip(b).map(|(x, y)| x + y).collect::<Vec<_>>();
        Ok(FermionHamiltonian {
            num_modes: self.num_modes,
            num_electrons: if self.num_electrons == other.num_electrons { self.num_electrons } else { None },
            constant: self.constant + other.constant,
            one_body: zip(&self.one_body, &other.one_body),
            two_body: zip(&self.two_body, &other.two_body),
        })
    }

    /// Copy with tensor entries kept only where the predicates hold and the
    /// constant replaced.
    pub(crate) fn masked<F, G>(&self, constant: f64, keep_one: F, keep_two: G) -> FermionHamiltonian
    where
        F: Fn(usize, usize) -> bool,
        G: Fn(usize, usize, usize, usize) -> bool,
    {
        let m = self.num_modes;
        let mut out = FermionHamiltonian {
            num_modes: m,
            num_electrons: self.num_electrons,
            constant,
            one_body: vec![0.0; m * m],
            two_body: vec![0.0; m.pow(4)],
        };
        for i in 0..m {
            for j in 0..m {
                if keep_one(i, j) {
                    out.one_body[i * m + j] = self.one_body(i, j);
                }
            }
        }
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    for l in 0..m {
                        if keep_two(i, j, k, l) {
                            let idx = self.index4(i, j, k, l);
                            out.two_body[idx] = self.two_body[idx];
                        }
                    }
                }
            }
        }
        out
    }

    /// Non-zero operator terms in canonical normal order, excluding the constant.
    ///
    /// One-body terms are `h_ij a+_i a_j`. Two-body terms are written
    /// `a+_i a+_j a_k a_l` with `i > j` and `k > l`; the antisymmetric
    /// equivalents of each operator are folded into one coefficient, and
    /// products that vanish identically (`a+_i a+_i`, `a_k a_k`) never appear.
    pub fn canonical_terms(&self) -> Vec<FermionTerm> {
        let m = self.num_modes;
        let mut terms = Vec::new();
        for i in 0..m {
            for j in 0..m {
                let v = self.one_body(i, j);
                if v.abs() >= DROP_TOLERANCE {
                    terms.push(FermionTerm::one_body(v, i, j));
                }
            }
        }
        for i in 0..m {
            for j in 0..i {
                for k in 0..m {
                    for l in 0..k {
                        let v = 0.5
                            * (self.two_body(i, j, k, l) - self.two_body(j, i, k, l) - self.two_body(i, j, l, k)
                                + self.two_body(j, i, l, k));
                        if v.abs() >= DROP_TOLERANCE {
                            terms.push(FermionTerm::two_body(v, i, j, k, l));
                        }
                    }
                }
            }
        }
        terms
    }
}

/// One of the five fermionic operator families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OperatorClass {
    /// `a+_i a_i`
    Num,
    /// `a+_i a+_j a_j a_i`
    Cou,
    /// `a+_i a_j`, `i != j`
    Exc,
    /// `a+_i a+_k a_l a_i`, three distinct modes
    Nex,
    /// `a+_i a+_j a_k a_l`, four distinct modes
    Dex,
}

impl OperatorClass {
    pub const ALL: [OperatorClass; 5] =
        [OperatorClass::Num, OperatorClass::Cou, OperatorClass::Exc, OperatorClass::Nex, OperatorClass::Dex];

    pub fn label(self) -> &'static str {
        match self {
            OperatorClass::Num => "num",
            OperatorClass::Cou => "cou",
            OperatorClass::Exc => "exc",
            OperatorClass::Nex => "nex",
            OperatorClass::Dex => "dex",
        }
    }

    pub fn of_one_body(i: usize, j: usize) -> OperatorClass {
        if i == j {
            OperatorClass::Num
        } else {
            OperatorClass::Exc
        }
    }

    /// `None` when all four indices coincide (the operator is identically zero).
    pub fn of_two_body(i: usize, j: usize, k: usize, l: usize) -> Option<OperatorClass> {
        let mut idx = [i, j, k, l];
        idx.sort_unstable();
        let distinct = 1 + idx.windows(2).filter(|w| w[0] != w[1]).count();
        match distinct {
            2 => Some(OperatorClass::Cou),
            3 => Some(OperatorClass::Nex),
            4 => Some(OperatorClass::Dex),
            _ => None,
        }
    }
}

impl fmt::Display for OperatorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// A single operator product `coefficient * op_1 op_2 ...`, each op `(mode, dagger)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FermionTerm {
    pub coefficient: f64,
    pub operators: Vec<(usize, bool)>,
}

impl FermionTerm {
    pub fn one_body(coefficient: f64, i: usize, j: usize) -> Self {
        Self { coefficient, operators: vec![(i, true), (j, false)] }
    }

    pub fn two_body(coefficient: f64, i: usize, j: usize, k: usize, l: usize) -> Self {
        Self { coefficient, operators: vec![(i, true), (j, true), (k, false), (l, false)] }
    }

    /// All creation operators precede all annihilation operators.
    pub fn is_normal_ordered(&self) -> bool {
        let first_annihilator = self.operators.iter().position(|(_, d)| !d).unwrap_or(self.operators.len());
        self.operators[first_annihilator..].iter().all(|(_, d)| !d)
    }

    /// Class of a normal-ordered one- or two-body term.
    pub fn class(&self) -> Option<OperatorClass> {
        match self.operators.as_slice() {
            [(i, true), (j, false)] => Some(OperatorClass::of_one_body(*i, *j)),
            [(i, true), (j, true), (k, false), (l, false)] => OperatorClass::of_two_body(*i, *j, *k, *l),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classes_of_named_operators() {
        assert_eq!(FermionTerm::one_body(1.0, 0, 0).class(), Some(OperatorClass::Num));
        assert_eq!(FermionTerm::one_body(1.0, 0, 1).class(), Some(OperatorClass::Exc));
        assert_eq!(FermionTerm::two_body(1.0, 0, 1, 1, 0).class(), Some(OperatorClass::Cou));
        assert_eq!(FermionTerm::two_body(1.0, 0, 2, 1, 0).class(), Some(OperatorClass::Nex));
        assert_eq!(FermionTerm::two_body(1.0, 3, 2, 1, 0).class(), Some(OperatorClass::Dex));
        assert_eq!(OperatorClass::of_two_body(1, 1, 1, 1), None);
    }

    #[test]
    fn normal_order_check() {
        assert!(FermionTerm::two_body(1.0, 0, 1, 1, 0).is_normal_ordered());
        let t = FermionTerm { coefficient: 1.0, operators: vec![(0, false), (1, true)] };
        assert!(!t.is_normal_ordered());
    }

    #[test]
    fn constructor_validates() {
        assert_eq!(FermionHamiltonian::zero(0), Err(FermionError::ModeCount(0)));
        assert!(matches!(
            FermionHamiltonian::new(2, 0.0, vec![0.0; 3], vec![0.0; 16]),
            Err(FermionError::Dimension { .. })
        ));
        let mut one = vec![0.0; 4];
        one[1] = 0.5;
        assert!(matches!(
            FermionHamiltonian::new(2, 0.0, one, vec![0.0; 16]),
            Err(FermionError::NotSymmetric(_))
        ));
        let mut two = vec![0.0; 16];
        two[1] = 0.3; // (0,0,0,1) without its (1,0,0,0) partner
        assert!(matches!(
            FermionHamiltonian::new(2, 0.0, vec![0.0; 4], two),
            Err(FermionError::NotHermitian(_))
        ));
    }

    #[test]
    fn canonical_terms_fold_antisymmetric_partners() {
        // h_0110 = h_1001 = 2 is 2 n_0 n_1, which is -2 a+_1 a+_0 a_1 a_0 in canonical order
        let mut two = vec![0.0; 16];
        two[0b0110] = 2.0;
        two[0b1001] = 2.0;
        let h = FermionHamiltonian::new(2, 0.0, vec![0.0; 4], two).unwrap();
        let terms = h.canonical_terms();
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].operators, vec![(1, true), (0, true), (1, false), (0, false)]);
        assert_eq!(terms[0].coefficient, -2.0);
    }
}
