use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::grid::{check_sites, grid_index, sin_rational};
use super::kernel::DecayKernel;
use crate::error::Result;

/// Above this size the full-grid structure factor is computed by FFT.
const DIRECT_MAX_SITES: usize = 2048;

/// `f_α(k)` at a grid momentum.
///
/// Evaluated as the full symmetric sum `Σ_{l=1}^{N-1} κ̃_l sin(kl)` with
/// `κ̃_l = κ_{min(l, N-l)}`. On the grid this is
/// `2 Σ_{l<N/2} κ_l sin(kl) + κ_{N/2} sin(kN/2)`.
pub fn structure_factor(k: f64, n_sites: usize, kernel: &DecayKernel) -> Result<f64> {
    let index = grid_index(k, n_sites)?;
    let weights = kernel.symmetric_weights(n_sites)?;
    Ok(structure_factor_at(index, n_sites, &weights))
}

/// Direct sum at grid index `n`; `weights[l - 1] = κ̃_l`.
pub(crate) fn structure_factor_at(index: usize, n_sites: usize, weights: &[f64]) -> f64 {
    let step = 2 * index + 1;
    weights
        .iter()
        .enumerate()
        .map(|(i, w)| w * sin_rational(step * (i + 1), n_sites))
        .sum()
}

/// `f_α(k_n)` for every grid momentum, in grid order.
///
/// The result is exactly odd under `k ↔ 2π - k`.
pub fn structure_factors(n_sites: usize, kernel: &DecayKernel) -> Result<Vec<f64>> {
    check_sites(n_sites)?;
    let weights = kernel.symmetric_weights(n_sites)?;
    let half = n_sites / 2;
    let mut f = vec![0.0; n_sites];
    if n_sites <= DIRECT_MAX_SITES {
        let table: Vec<f64> = (0..2 * n_sites).map(|m| sin_rational(m, n_sites)).collect();
        for (n, out) in f.iter_mut().enumerate().take(half) {
            let step = 2 * n + 1;
            *out = weights
                .iter()
                .enumerate()
                .map(|(i, w)| w * table[(step * (i + 1)) % (2 * n_sites)])
                .sum();
        }
    } else {
        // f(k_n) = Im Σ_l [κ̃_l e^{iπl/N}] e^{2πi nl/N}
        let mut buf: Vec<Complex64> = std::iter::once(Complex64::new(0.0, 0.0))
            .chain(weights.iter().enumerate().map(|(i, w)| {
                let phase = PI * (i + 1) as f64 / n_sites as f64;
                Complex64::new(w * phase.cos(), w * phase.sin())
            }))
            .collect();
        FftPlanner::new().plan_fft_inverse(n_sites).process(&mut buf);
        for (out, y) in f.iter_mut().zip(&buf).take(half) {
            *out = y.im;
        }
    }
    for n in 0..half {
        f[n_sites - 1 - n] = -f[n];
    }
    Ok(f)
}
