//! Jordan-Wigner transformation.
//!
//! `a+_j = (X_j - i Y_j)/2 * Z_0 ... Z_{j-1}` and `a_j = (X_j + i Y_j)/2 * Z_0 ... Z_{j-1}`,
//! so mode `j` maps to qubit `j` and `|1>` means occupied.

use std::collections::HashMap;

use num_complex::Complex64;

use super::{FermionHamiltonian, FermionTerm};
use crate::pauli::{multiply_unchecked, PauliString, PauliTerm, QubitHamiltonian, DROP_TOLERANCE};

/// Pauli expansion of a single ladder operator on `num_modes` qubits.
pub fn ladder_operator(mode: usize, dagger: bool, num_modes: usize) -> [(Complex64, PauliString); 2] {
    assert!(mode < num_modes, "mode {mode} outside {num_modes} modes");
    let parity = (1u64 << mode) - 1;
    let bit = 1u64 << mode;
    let x = PauliString::from_bits(num_modes, bit, parity).expect("mode within register");
    let y = PauliString::from_bits(num_modes, bit, parity | bit).expect("mode within register");
    let y_coef = if dagger { -0.5 } else { 0.5 };
    [(Complex64::new(0.5, 0.0), x), (Complex64::new(0.0, y_coef), y)]
}

fn accumulate_term(term: &FermionTerm, num_modes: usize, acc: &mut HashMap<PauliString, Complex64>) {
    let mut expansion = vec![(
        Complex64::new(term.coefficient, 0.0),
        PauliString::identity(num_modes).expect("valid register"),
    )];
    for &(mode, dagger) in &term.operators {
        let ladder = ladder_operator(mode, dagger, num_modes);
        let mut next = Vec::with_capacity(expansion.len() * 2);
        for (c, s) in &expansion {
            for (lc, ls) in &ladder {
                let (phase, p) = multiply_unchecked(s, ls);
                next.push((c * lc * phase.to_complex(), p));
            }
        }
        expansion = next;
    }
    for (c, s) in expansion {
        *acc.entry(s).or_insert(Complex64::new(0.0, 0.0)) += c;
    }
}

/// Complex Pauli expansion of an arbitrary sum of operator products, with
/// entries below the drop tolerance (in modulus) removed and the result
/// sorted by string.
pub fn jordan_wigner_terms(terms: &[FermionTerm], num_modes: usize) -> Vec<(PauliString, Complex64)> {
    let mut acc = HashMap::new();
    for t in terms {
        accumulate_term(t, num_modes, &mut acc);
    }
    let mut out: Vec<_> = acc.into_iter().filter(|(_, c)| c.norm() >= DROP_TOLERANCE).collect();
    out.sort_by_key(|a| a.0);
    out
}

/// Complex image of a full Hamiltonian, constant included on the identity.
pub fn jordan_wigner_complex(h: &FermionHamiltonian) -> Vec<(PauliString, Complex64)> {
    let m = h.num_modes();
    let mut terms = h.canonical_terms();
    terms.push(FermionTerm { coefficient: h.constant(), operators: Vec::new() });
    jordan_wigner_terms(&terms, m)
}

/// Qubit Hamiltonian of `h`. The imaginary parts of a Hermitian source cancel
/// to floating-point residue and are discarded.
pub fn jordan_wigner(h: &FermionHamiltonian) -> QubitHamiltonian {
    let complex = jordan_wigner_complex(h);
    let residue = complex.iter().map(|(_, c)| c.im.abs()).fold(0.0, f64::max);
    if residue >= DROP_TOLERANCE {
        log::warn!("Jordan-Wigner image has imaginary residue {residue:e}");
    }
    QubitHamiltonian::from_terms(
        h.num_modes(),
        complex.into_iter().map(|(s, c)| PauliTerm::new(c.re, s)),
    )
    .expect("Jordan-Wigner terms share the register size")
}
