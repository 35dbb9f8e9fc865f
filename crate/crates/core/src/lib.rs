//! Quantum Fisher information for Hamiltonian parameter estimation in the
//! long-range Kitaev (LRK) chain.
//!
//! The crate is organised in four layers:
//!
//! * [`chain`]: decay kernels, the antiperiodic momentum grid and the
//!   closed-form per-mode quantities (structure factor, dispersion, channel
//!   derivatives, generator spectrum).
//! * [`qfi`]: assembly of the per-mode spectrum into the uncontrolled QFI
//!   `I(θ) = [Σ_k 𝓔_θ(k)]²` and the optimally controlled bound `I₀(θ)`.
//! * [`asymptotics`]: Euler–Maclaurin machinery, singular integrals, scaling
//!   predictors and fitters for empirical exponents.
//! * [`oracle`]: dense exact diagonalization in the `2^N` Fock space, used as
//!   ground truth for every momentum-space formula.

pub mod asymptotics;
pub mod chain;
pub mod error;
pub mod oracle;
pub mod qfi;
pub(crate) mod sum;

pub use chain::{
    dispersion, kernel_value, make_grid, mode_quantities, structure_factor, structure_factors,
    validate_kernel,
    Channel, ChainParams, DecayKernel, KernelReport, MomentumGrid, ModeQuantities,
};
pub use error::{Error, Result};
pub use qfi::{gamma, qfi_optimal, qfi_uncontrolled, ProbeSpec, QfiResult};
