//! Continuum surrogate `N²·[∫₁^N κ_x/x dx]²` for the growth of `I₀(Δ)`.

use super::window::exprel;
use crate::chain::DecayKernel;
use crate::error::{Error, Result};

/// `∫₁^N κ_x / x dx`.
///
/// Closed forms for the analytic families; tables are integrated exactly
/// as the piecewise-linear interpolant they define.
pub fn kernel_log_integral(kernel: &DecayKernel, n_sites: usize) -> Result<f64> {
    if n_sites < 2 {
        return Err(Error::domain(format!("prediction needs N >= 2, got {n_sites}")));
    }
    let ln_n = (n_sites as f64).ln();
    match kernel {
        // (1 − N^{−α})/α, which tends to ln N as α → 0.
        DecayKernel::PowerLaw { alpha } => Ok(ln_n * exprel(-alpha * ln_n)),
        // Substituting s = 1 + ln x: ∫₁^{1+ln N} s^{−α} ds.
        DecayKernel::LogLaw { alpha } => {
            let m = ln_n.ln_1p();
            Ok(m * exprel((1.0 - alpha) * m))
        }
        DecayKernel::CustomTable { values, .. } => {
            if values.len() < n_sites {
                return Err(Error::domain(format!(
                    "kernel table has {} entries, prediction at N = {n_sites} needs {n_sites}",
                    values.len()
                )));
            }
            let mut acc = 0.0;
            for l in 1..n_sites {
                let (k0, k1) = (values[l - 1], values[l]);
                let d = k1 - k0;
                let lf = l as f64;
                acc += (k0 - lf * d) * (1.0 / lf).ln_1p() + d;
            }
            Ok(acc)
        }
    }
}

/// `N²·[∫₁^N κ_x/x dx]²`.
pub fn predict_delta_scaling(kernel: &DecayKernel, n_sites: usize) -> Result<f64> {
    let n = n_sites as f64;
    let i = kernel_log_integral(kernel, n_sites)?;
    Ok(n * n * i * i)
}
