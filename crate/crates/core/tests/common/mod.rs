#![allow(dead_code)]

pub mod oracle;

use std::path::PathBuf;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use truncvqe::{FermionHamiltonian, Pauli, PauliString, PauliTerm, QubitHamiltonian};

pub const FIXTURES: [&str; 7] = ["h2", "h4", "h6", "lih", "nh3", "beh2", "h2o"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(format!("{name}.fcidump"))
}

pub fn load_fixture(name: &str) -> FermionHamiltonian {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture present");
    truncvqe::parse_fcidump(&text).expect("fixture parses")
}

pub fn pauli_strategy(n: usize) -> impl Strategy<Value = PauliString> {
    proptest::collection::vec(0u8..4, n).prop_map(|v| {
        let factors: Vec<Pauli> =
            v.into_iter().map(|p| [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z][p as usize]).collect();
        PauliString::from_factors(&factors).unwrap()
    })
}

pub fn hamiltonian_strategy(n: usize, max_terms: usize) -> impl Strategy<Value = QubitHamiltonian> {
    proptest::collection::vec((pauli_strategy(n), -1.0f64..1.0), 0..=max_terms).prop_map(move |terms| {
        QubitHamiltonian::from_terms(n, terms.into_iter().map(|(s, c)| PauliTerm::new(c, s))).unwrap()
    })
}

pub fn random_hamiltonian(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> QubitHamiltonian {
    let items = (0..terms).map(|_| {
        let x = rng.random::<u64>() & ((1u64 << n) - 1);
        let z = rng.random::<u64>() & ((1u64 << n) - 1);
        PauliTerm::new(rng.random_range(-1.0..1.0), PauliString::from_bits(n, x, z).unwrap())
    });
    QubitHamiltonian::from_terms(n, items).unwrap()
}

/// Random real integrals with `h_ij = h_ji` and `h_ijkl = h_lkji`.
pub fn random_fermion_hamiltonian(seed: u64, m: usize) -> FermionHamiltonian {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut one = vec![0.0; m * m];
    for i in 0..m {
        for j in i..m {
            let v = rng.random_range(-1.0..1.0);
            one[i * m + j] = v;
            one[j * m + i] = v;
        }
    }
    let idx = |i: usize, j: usize, k: usize, l: usize| ((i * m + j) * m + k) * m + l;
    let mut two = vec![0.0; m.pow(4)];
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for l in 0..m {
                    if idx(i, j, k, l) <= idx(l, k, j, i) {
                        let v = rng.random_range(-0.5..0.5);
                        two[idx(i, j, k, l)] = v;
                        two[idx(l, k, j, i)] = v;
                    }
                }
            }
        }
    }
    FermionHamiltonian::new(m, rng.random_range(-1.0..1.0), one, two).unwrap()
}

pub fn random_state(rng: &mut ChaCha8Rng, n: usize) -> truncvqe::StateVector {
    let mut amps: Vec<num_complex::Complex64> = (0..1usize << n)
        .map(|_| num_complex::Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    amps.iter_mut().for_each(|a| *a /= norm);
    truncvqe::StateVector::from_amplitudes(n, amps).unwrap()
}
