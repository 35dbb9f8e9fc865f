//! Splits `γ_α(N)` into its continuum integral and the Euler–Maclaurin
//! remainder, and measures how each grows with `N`.

use serde::Serialize;

use super::fit::fit_power;
use super::quadrature::{integrate_partitioned, QuadratureOptions};
use crate::chain::{check_sites, DecayKernel};
use crate::error::{Error, Result};
use crate::qfi::gamma;

/// Largest remainder growth exponent accepted as "at most linear".
pub const REMAINDER_EXPONENT_TOL: f64 = 1.05;

const REANCHOR: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RemainderRow {
    pub n_sites: usize,
    pub gamma: f64,
    /// `(N/2π) ∫_{π/N}^{2π−π/N} |f_c(k)| dk`.
    pub main: f64,
    /// `γ − main`.
    pub remainder: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RemainderReport {
    pub rows: Vec<RemainderRow>,
    pub remainder_exponent: f64,
    pub main_exponent: f64,
    /// Least-squares line `main/N = slope·ln N + intercept`.
    pub main_log_slope: f64,
    pub main_log_intercept: f64,
    /// RMS deviation of `main/N` from that line, relative to its mean.
    pub main_log_rms: f64,
    pub passed: bool,
}

/// Continuum structure factor `2 Σ_{l=1}^{N/2−1} κ_l sin(kl)` at any `k`.
fn continuum_factor(k: f64, weights: &[f64]) -> f64 {
    let (ds, dc) = k.sin_cos();
    let mut acc = 0.0;
    for (block, chunk) in weights.chunks(REANCHOR).enumerate() {
        let l0 = (block * REANCHOR + 1) as f64;
        let (mut s, mut c) = (k * l0).sin_cos();
        for w in chunk {
            acc += w * s;
            let s_next = s * dc + c * ds;
            c = c * dc - s * ds;
            s = s_next;
        }
    }
    2.0 * acc
}

fn main_integral(n: usize, kernel: &DecayKernel) -> Result<f64> {
    let weights: Vec<f64> = (1..n / 2).map(|l| kernel.value(l)).collect::<Result<_>>()?;
    let pi = std::f64::consts::PI;
    let nf = n as f64;
    let mut points: Vec<f64> = (0..n / 2).map(|j| (2 * j + 1) as f64 * pi / nf).collect();
    points.push(pi);
    let opts = QuadratureOptions {
        abs_tol: 1e-12,
        rel_tol: 1e-11,
        max_intervals: 40 * n,
    };
    let q = integrate_partitioned(|k| continuum_factor(k, &weights).abs(), &points, opts)
        .map_err(|e| Error::numeric(format!("main integral at N = {n}: {e}")))?;
    // The integrand is symmetric about π.
    Ok(nf / pi * q.value)
}

/// Computes `γ`, the main integral and the remainder for every `N`, and
/// fits growth exponents to the latter two.
pub fn remainder_scaling_probe(kernel: &DecayKernel, n_list: &[usize]) -> Result<RemainderReport> {
    if n_list.len() < 3 {
        return Err(Error::domain(format!(
            "remainder probe needs at least 3 sizes, got {}",
            n_list.len()
        )));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::domain("remainder probe sizes must be strictly increasing"));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        check_sites(n)?;
        let g = gamma(n, kernel)?;
        let main = main_integral(n, kernel)?;
        rows.push(RemainderRow {
            n_sites: n,
            gamma: g,
            main,
            remainder: g - main,
        });
    }
    let rem: Vec<(f64, f64)> = rows.iter().map(|r| (r.n_sites as f64, r.remainder.abs())).collect();
    let main: Vec<(f64, f64)> = rows.iter().map(|r| (r.n_sites as f64, r.main)).collect();
    let remainder_exponent = fit_power(&rem)?.exponent();
    let main_exponent = fit_power(&main)?.exponent();
    let (slope, intercept, rms) = nlogn_line(&rows);
    Ok(RemainderReport {
        passed: remainder_exponent <= REMAINDER_EXPONENT_TOL && remainder_exponent < main_exponent,
        rows,
        remainder_exponent,
        main_exponent,
        main_log_slope: slope,
        main_log_intercept: intercept,
        main_log_rms: rms,
    })
}

fn nlogn_line(rows: &[RemainderRow]) -> (f64, f64, f64) {
    let u: Vec<f64> = rows.iter().map(|r| (r.n_sites as f64).ln()).collect();
    let v: Vec<f64> = rows.iter().map(|r| r.main / r.n_sites as f64).collect();
    let n = u.len() as f64;
    let mu = u.iter().sum::<f64>() / n;
    let mv = v.iter().sum::<f64>() / n;
    let suu: f64 = u.iter().map(|a| (a - mu).powi(2)).sum();
    let suv: f64 = u.iter().zip(&v).map(|(a, b)| (a - mu) * (b - mv)).sum();
    let slope = suv / suu;
    let intercept = mv - slope * mu;
    let ss: f64 = u.iter().zip(&v).map(|(a, b)| (b - slope * a - intercept).powi(2)).sum();
    (slope, intercept, (ss / n).sqrt() / mv.abs())
}
