//! Five-way operator classification of a fermionic Hamiltonian.

use super::{FermionError, FermionHamiltonian, OperatorClass};

/// `H_f` split into number, Coulomb, excitation, number-excitation and
/// double-excitation fragments. The constant lives on the number fragment.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassifiedHamiltonian {
    pub num: FermionHamiltonian,
    pub cou: FermionHamiltonian,
    pub exc: FermionHamiltonian,
    pub nex: FermionHamiltonian,
    pub dex: FermionHamiltonian,
}

impl ClassifiedHamiltonian {
    pub fn num_modes(&self) -> usize {
        self.num.num_modes()
    }

    pub fn fragment(&self, class: OperatorClass) -> &FermionHamiltonian {
        match class {
            OperatorClass::Num => &self.num,
            OperatorClass::Cou => &self.cou,
            OperatorClass::Exc => &self.exc,
            OperatorClass::Nex => &self.nex,
            OperatorClass::Dex => &self.dex,
        }
    }

    /// Tensor sum of the listed fragments.
    pub fn combined(&self, classes: &[OperatorClass]) -> Result<FermionHamiltonian, FermionError> {
        let mut acc = FermionHamiltonian::zero(self.num_modes())?;
        if let Some(n) = self.num.num_electrons() {
            acc = acc.with_num_electrons(n);
        }
        for c in classes {
            acc = acc.add(self.fragment(*c))?;
        }
        Ok(acc)
    }
}

/// Splits every integral entry by the class of the operator it multiplies.
///
/// Two-body entries with a single distinct index are dropped: `a+_i a+_i a_i a_i`
/// vanishes identically.
pub fn classify(h: &FermionHamiltonian) -> ClassifiedHamiltonian {
    let fragment = |class: OperatorClass| {
        let constant = if class == OperatorClass::Num { h.constant() } else { 0.0 };
        h.masked(
            constant,
            |i, j| OperatorClass::of_one_body(i, j) == class,
            |i, j, k, l| OperatorClass::of_two_body(i, j, k, l) == Some(class),
        )
    };
    ClassifiedHamiltonian {
        num: fragment(OperatorClass::Num),
        cou: fragment(OperatorClass::Cou),
        exc: fragment(OperatorClass::Exc),
        nex: fragment(OperatorClass::Nex),
        dex: fragment(OperatorClass::Dex),
    }
}

/// Per-class count of canonical fermionic terms and the L1 norm of their coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassProfile {
    pub entries: Vec<(OperatorClass, usize, f64)>,
}

impl ClassProfile {
    pub fn get(&self, class: OperatorClass) -> (usize, f64) {
        self.entries
            .iter()
            .find(|(c, _, _)| *c == class)
            .map(|(_, n, s)| (*n, *s))
            .unwrap_or((0, 0.0))
    }
}

pub fn class_norm_profile(c: &ClassifiedHamiltonian) -> ClassProfile {
    let entries = OperatorClass::ALL
        .iter()
        .map(|&class| {
            let terms = c.fragment(class).canonical_terms();
            let norm = terms.iter().fold(0.0, |acc, t| acc + t.coefficient.abs());
            (class, terms.len(), norm)
        })
        .collect();
    ClassProfile { entries }
}
