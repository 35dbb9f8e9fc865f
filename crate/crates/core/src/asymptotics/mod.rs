//! Asymptotic analysis: Euler–Maclaurin summation, oscillatory integrals,
//! continuum predictions and scaling fits.

pub mod euler_maclaurin;
pub mod fit;
pub mod predict;
pub mod quadrature;
pub mod remainder;
pub mod sine_integral;
pub mod window;

pub use euler_maclaurin::{
    bernoulli_numbers, bernoulli_polynomial, euler_maclaurin_sum, periodic_bernoulli, EmConfig,
    EmEstimate, Polynomial, SmoothFunction,
};
pub use fit::{fit_polylog, fit_power, FitModel, ScalingFit};
pub use predict::{kernel_log_integral, predict_delta_scaling};
pub use quadrature::{integrate, integrate_partitioned, Quadrature, QuadratureOptions};
pub use remainder::{remainder_scaling_probe, RemainderReport, RemainderRow, REMAINDER_EXPONENT_TOL};
pub use sine_integral::{
    sine_power_integral, sine_power_integral_closed_form, sine_power_integral_quadrature,
};
pub use window::{attenuation, finite_size_window, FiniteSizeWindow, PerturbedFamily};
