//! Decay kernels, the antiperiodic momentum grid and closed-form per-mode
//! quantities of the long-range Kitaev chain.

mod grid;
mod kernel;
mod modes;
mod params;
mod regularity;
mod structure;

pub use grid::{make_grid, MomentumGrid};
pub use kernel::{kernel_value, DecayKernel, KernelKind};
pub use modes::{dispersion, mode_quantities, ModeQuantities};
pub use params::{ChainParams, Channel};
pub use regularity::{validate_kernel, ConditionCheck, KernelReport};
pub use structure::{structure_factor, structure_factors};

pub(crate) use grid::{check_sites, grid_cos};
pub(crate) use modes::check_time;
