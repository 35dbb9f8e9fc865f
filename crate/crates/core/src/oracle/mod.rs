//! Dense exact diagonalization in the `2^N` Fock space.
//!
//! Independent of the momentum-space formulas, and used to check them.

pub mod extremal;
pub mod fock;
pub mod generator;
pub mod hamiltonian;
pub mod operator;
pub mod trials;

pub use extremal::{bogoliubov_coefficients, verify_extremal_states, BogoliubovPair, ExtremalReport};
pub use fock::{FockBasis, Sector, MAX_SITES};
pub use generator::{exact_generator, exact_qfi, exact_qfi_in, Eigensystem, GeneratorResult, GeneratorSummary};
pub use hamiltonian::{
    build_dtheta_h, build_dtheta_h_with, build_hamiltonian, build_hamiltonian_with, BuildOptions,
    PairingForm, Representation,
};
pub use operator::ManyBodyOperator;
pub use trials::{run_oracle_trials, OracleReport, TrialConfig, TrialOutcome};
