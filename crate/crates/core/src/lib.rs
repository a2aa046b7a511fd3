//! Staged-truncation variational quantum eigensolver.
//!
//! The pipeline runs from precomputed molecular integrals (FCIDUMP) to a
//! fermionic Hamiltonian, through the Jordan-Wigner map to a weighted Pauli
//! sum, and into a multi-stage VQE loop that optimizes a sequence of
//! progressively less truncated Hamiltonians with warm-started parameters.
//!
//! * [`pauli`]: Pauli strings, real-weighted Pauli sums, grouping and statistics.
//! * [`fermion`]: second-quantized Hamiltonians, FCIDUMP I/O, operator
//!   classification and the Jordan-Wigner transformation.
//! * [`truncation`]: cutoff and operator-classification stage ladders.
//! * [`simulator`]: exact statevector simulation of the ansatz circuits.
//! * [`vqe`]: SPSA, the staged driver and measurement-cost accounting.

pub mod fermion;
pub mod pauli;
pub mod simulator;
pub mod truncation;
pub mod vqe;

pub use fermion::{
    classify, jordan_wigner, parse_fcidump, ClassifiedHamiltonian, FcidumpError, FermionHamiltonian,
    FermionTerm, OperatorClass, SpatialIntegrals,
};
pub use pauli::{Pauli, PauliError, PauliString, PauliTerm, Phase, QubitHamiltonian, DROP_TOLERANCE};
pub use simulator::{exact_ground_energy, expectation, prepare_state, Ansatz, SimulatorError, StateVector};
pub use truncation::{
    build_classification_ladder, build_cutoff_ladder, truncate_by_cutoff, CutoffSchedule, Stage,
    StageSchedule, TruncationError,
};
pub use vqe::{
    improvement, spsa_minimize, staged_vqe, ConvergenceTrace, ImprovementReport, SpsaConfig, VqeError,
};
