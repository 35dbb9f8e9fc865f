//! Attenuation of the logarithmic enhancement when the decay exponent is a
//! small positive `ε` instead of zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `s_factor` at or above which the enhancement counts as intact.
pub const EFFECTIVE_THRESHOLD: f64 = 0.95;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PerturbedFamily {
    /// `κ_l = l^{-ε}`; window argument `ε ln N`.
    PowerPerturbed,
    /// `κ_l = (1 + ln l)^{-ε}`; window argument `ε ln(1 + ln N)`.
    LogPerturbed,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FiniteSizeWindow {
    pub epsilon: f64,
    pub n_sites: usize,
    pub family: PerturbedFamily,
    /// Argument `a` of `𝓢(a)`.
    pub argument: f64,
    pub s_factor: f64,
    pub super_hs_effective: bool,
}

/// `expm1(t)/t`, equal to 1 at `t = 0`.
pub(crate) fn exprel(t: f64) -> f64 {
    if t.abs() < 1e-5 {
        1.0 + t / 2.0 + t * t / 6.0
    } else {
        t.exp_m1() / t
    }
}

/// `𝓢(a) = (1 − e^{−a})/a`, with `𝓢(0) = 1`.
pub fn attenuation(a: f64) -> f64 {
    exprel(-a)
}

pub fn finite_size_window(epsilon: f64, n_sites: usize, family: PerturbedFamily) -> Result<FiniteSizeWindow> {
    if !(epsilon.is_finite() && epsilon > 0.0) {
        return Err(Error::domain(format!("window exponent must be > 0, got {epsilon}")));
    }
    if n_sites < 2 {
        return Err(Error::domain(format!("window needs N >= 2, got {n_sites}")));
    }
    let ln_n = (n_sites as f64).ln();
    let argument = epsilon
        * match family {
            PerturbedFamily::PowerPerturbed => ln_n,
            PerturbedFamily::LogPerturbed => ln_n.ln_1p(),
        };
    let s_factor = attenuation(argument);
    Ok(FiniteSizeWindow {
        epsilon,
        n_sites,
        family,
        argument,
        s_factor,
        super_hs_effective: s_factor >= EFFECTIVE_THRESHOLD,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn series(a: f64, terms: usize) -> f64 {
        let mut term = 1.0;
        let mut acc = 0.0;
        for n in 0..terms {
            acc += term;
            term *= -a / (n + 2) as f64;
        }
        acc
    }

    #[test]
    fn series_agrees_with_closed_form() {
        // Twenty terms reach 1e-12 up to a = 2; further out the truncation
        // error a^20/21! dominates, so forty terms are used on [0, 5].
        for i in 0..=500 {
            let a = i as f64 * 0.01;
            if a <= 2.0 {
                assert!((series(a, 20) - attenuation(a)).abs() < 1e-12, "a={a}");
            }
            assert!((series(a, 40) - attenuation(a)).abs() < 1e-12, "a={a}");
        }
    }

    #[test]
    fn reference_points() {
        assert_eq!(attenuation(0.0), 1.0);
        assert_relative_eq!(attenuation(1.0), 1.0 - (-1f64).exp(), max_relative = 1e-15);
        let w = finite_size_window(0.01, 100, PerturbedFamily::PowerPerturbed).unwrap();
        assert_relative_eq!(w.argument, 0.01 * 100f64.ln(), max_relative = 1e-15);
        assert!((w.s_factor - 0.977).abs() < 1e-3);
        assert!(w.super_hs_effective);
        let w = finite_size_window(0.5, 100, PerturbedFamily::PowerPerturbed).unwrap();
        assert!(!w.super_hs_effective);
    }

    #[test]
    fn log_family_is_more_tolerant() {
        let p = finite_size_window(0.1, 10_000, PerturbedFamily::PowerPerturbed).unwrap();
        let l = finite_size_window(0.1, 10_000, PerturbedFamily::LogPerturbed).unwrap();
        assert!(l.s_factor > p.s_factor);
        assert!(l.s_factor > 0.0 && l.s_factor <= 1.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(finite_size_window(0.0, 100, PerturbedFamily::PowerPerturbed).is_err());
        assert!(finite_size_window(0.1, 1, PerturbedFamily::LogPerturbed).is_err());
    }
}
