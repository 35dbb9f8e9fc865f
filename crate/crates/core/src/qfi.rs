//! Assembly of per-mode quantities into the quantum Fisher information.
//!
//! Without control the generator is diagonal in the `ψ(k)` modes with
//! eigenvalues `𝓔_θ(k)`, so the QFI maximised over initial states is
//! `I(θ) = [Σ_k 𝓔_θ(k)]²`. With optimal control the bound is
//! `I₀(θ) = T² (χ_max − χ_min)²` where `χ` are the eigenvalues of `∂_θ H`.
//! All sums run over the full grid of `N` momenta.

use serde::{Deserialize, Serialize};

use crate::chain::{
    check_sites, check_time, grid_cos, make_grid, structure_factors, ChainParams, Channel,
    DecayKernel, ModeQuantities,
};
use crate::error::Result;
use crate::sum::pairwise_sum;

/// Which parameter is probed and for how long.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbeSpec {
    pub channel: Channel,
    pub time: f64,
}

impl ProbeSpec {
    pub fn new(channel: Channel, time: f64) -> Result<Self> {
        check_time(time)?;
        Ok(Self { channel, time })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QfiResult {
    pub value: f64,
    pub controlled: bool,
    pub params: ChainParams,
    pub probe: ProbeSpec,
    /// `γ_α(N)`, populated for the controlled `Δ` channel.
    pub gamma: Option<f64>,
}

/// `𝓔_θ(k)` bundle for every grid momentum, in grid order.
pub fn mode_spectrum(p: &ChainParams, probe: &ProbeSpec) -> Result<Vec<ModeQuantities>> {
    check_time(probe.time)?;
    let n = p.n_sites();
    let f = structure_factors(n, &p.kernel)?;
    let grid = make_grid(n)?;
    grid.momenta()
        .iter()
        .zip(&f)
        .enumerate()
        .map(|(i, (&k, &fk))| {
            ModeQuantities::from_structure(k, grid.cos(i), fk, p, probe.channel, probe.time)
        })
        .collect()
}

/// `I(θ) = [Σ_k 𝓔_θ(k)]²`, the QFI without control.
pub fn qfi_uncontrolled(p: &ChainParams, probe: &ProbeSpec) -> Result<QfiResult> {
    let modes = mode_spectrum(p, probe)?;
    let spectrum: Vec<f64> = modes.iter().map(|m| m.script_e).collect();
    let total = pairwise_sum(&spectrum);
    Ok(QfiResult {
        value: total * total,
        controlled: false,
        params: p.clone(),
        probe: *probe,
        gamma: None,
    })
}

/// `γ_α(N) = Σ_k |f_α(k)|`.
pub fn gamma(n_sites: usize, kernel: &DecayKernel) -> Result<f64> {
    let f: Vec<f64> = structure_factors(n_sites, kernel)?
        .into_iter()
        .map(f64::abs)
        .collect();
    Ok(pairwise_sum(&f))
}

/// `Σ_k |cos k|` over the grid: the eigenvalue spread of `∂_J H`.
pub fn cosine_spread(n_sites: usize) -> Result<f64> {
    check_sites(n_sites)?;
    let c: Vec<f64> = (0..n_sites).map(|i| grid_cos(i, n_sites).abs()).collect();
    Ok(pairwise_sum(&c))
}

/// Eigenvalue spread `χ_max − χ_min` of `∂_θ H` at finite `N`.
pub fn derivative_spread(p: &ChainParams, channel: Channel) -> Result<f64> {
    let n = p.n_sites();
    match channel {
        Channel::J => cosine_spread(n),
        Channel::Mu => Ok(n as f64),
        Channel::Delta => Ok(0.5 * gamma(n, &p.kernel)?),
    }
}

/// `I₀(θ)`, the QFI bound reached under optimal control.
///
/// Exact at finite `N`: `(Σ_k|cos k|)² T²` for `J`, `N² T²` for `μ` and
/// `(γ_α(N)/2)² T²` for `Δ`.
pub fn qfi_optimal(p: &ChainParams, probe: &ProbeSpec) -> Result<QfiResult> {
    check_time(probe.time)?;
    let n = p.n_sites();
    let (spread, gamma) = match probe.channel {
        Channel::Delta => {
            let g = gamma(n, &p.kernel)?;
            (0.5 * g, Some(g))
        }
        ch => (derivative_spread(p, ch)?, None),
    };
    let value = (spread * probe.time).powi(2);
    Ok(QfiResult {
        value,
        controlled: true,
        params: p.clone(),
        probe: *probe,
        gamma,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn flat() -> DecayKernel {
        DecayKernel::power_law(0.0).unwrap()
    }

    fn probe(ch: Channel, t: f64) -> ProbeSpec {
        ProbeSpec::new(ch, t).unwrap()
    }

    #[test]
    fn gamma_reference_values() {
        // |cot(π/8)| + |cot(3π/8)| + |cot(5π/8)| + |cot(7π/8)|
        assert_relative_eq!(gamma(4, &flat()).unwrap(), 4.0 * 2f64.sqrt(), max_relative = 1e-14);
        for k in [flat(), DecayKernel::log_law(0.3).unwrap(), DecayKernel::power_law(2.0).unwrap()] {
            assert_relative_eq!(gamma(2, &k).unwrap(), 2.0, max_relative = 1e-15);
        }
    }

    #[test]
    fn gamma_superlinear_for_flat_kernel() {
        let mut prev = gamma(16, &flat()).unwrap();
        for n in [32, 64, 128, 256, 512] {
            let g = gamma(n, &flat()).unwrap();
            assert!(g / prev > 2.0, "N={n}");
            prev = g;
        }
    }

    #[test]
    fn uncontrolled_pure_pairing() {
        let p = ChainParams::new(0.0, 0.0, 1.0, 4, flat()).unwrap();
        let r = qfi_uncontrolled(&p, &probe(Channel::Delta, 1.0)).unwrap();
        assert_relative_eq!(r.value, 8.0, max_relative = 1e-14);
        assert!(!r.controlled);
    }

    #[test]
    fn zero_time_is_zero() {
        let p = ChainParams::new(0.4, 1.1, -0.8, 10, DecayKernel::log_law(1.0).unwrap()).unwrap();
        for ch in Channel::ALL {
            assert_eq!(qfi_uncontrolled(&p, &probe(ch, 0.0)).unwrap().value, 0.0);
            assert_eq!(qfi_optimal(&p, &probe(ch, 0.0)).unwrap().value, 0.0);
        }
    }

    #[test]
    fn optimal_reference_values() {
        let p = ChainParams::new(1.0, 1.0, 1.0, 10, flat()).unwrap();
        assert_relative_eq!(qfi_optimal(&p, &probe(Channel::Mu, 2.0)).unwrap().value, 400.0, max_relative = 1e-15);
        let p = ChainParams::new(1.0, 1.0, 1.0, 4, flat()).unwrap();
        assert_relative_eq!(qfi_optimal(&p, &probe(Channel::J, 1.0)).unwrap().value, 8.0, max_relative = 1e-14);
        let r = qfi_optimal(&p, &probe(Channel::Delta, 1.0)).unwrap();
        assert_relative_eq!(r.value, 8.0, max_relative = 1e-14);
        assert_relative_eq!(r.gamma.unwrap(), 4.0 * 2f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn mu_channel_without_pairing_is_heisenberg() {
        for n in [2usize, 4, 6, 32] {
            let p = ChainParams::new(0.8, 0.3, 0.0, n, flat()).unwrap();
            let r = qfi_uncontrolled(&p, &probe(Channel::Mu, 1.5)).unwrap();
            assert_relative_eq!(r.value, (n as f64 * 1.5).powi(2), max_relative = 1e-14);
        }
    }

    #[test]
    fn pure_pairing_coincides_with_optimal() {
        for n in [4usize, 16, 100] {
            let p = ChainParams::new(0.0, 0.0, 1.3, n, flat()).unwrap();
            let a = qfi_uncontrolled(&p, &probe(Channel::Delta, 0.7)).unwrap().value;
            let b = qfi_optimal(&p, &probe(Channel::Delta, 0.7)).unwrap().value;
            assert_relative_eq!(a, b, max_relative = 1e-13);
        }
    }

    #[test]
    fn j_asymptote() {
        let p = ChainParams::new(1.0, 0.0, 0.0, 4096, flat()).unwrap();
        let v = qfi_optimal(&p, &probe(Channel::J, 1.0)).unwrap().value;
        let ratio = v * std::f64::consts::PI.powi(2) / (4.0 * 4096f64.powi(2));
        assert!((ratio - 1.0).abs() < 0.01, "{ratio}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn optimal_dominates_uncontrolled(
            j in -2.0f64..2.0, mu in -2.0f64..2.0, delta in -2.0f64..2.0,
            alpha in 0.0f64..2.0, half in 1usize..=32, t in 0.0f64..2.0,
            ch in 0usize..3, log in any::<bool>(),
        ) {
            let kernel = if log { DecayKernel::log_law(alpha) } else { DecayKernel::power_law(alpha) }.unwrap();
            let p = ChainParams::new(j, mu, delta, 2 * half, kernel).unwrap();
            let pr = probe(Channel::ALL[ch], t);
            let free = qfi_uncontrolled(&p, &pr).unwrap().value;
            let best = qfi_optimal(&p, &pr).unwrap().value;
            prop_assert!(best >= free * (1.0 - 1e-9), "best={best} free={free}");
        }

        #[test]
        fn optimal_scales_as_time_squared(half in 1usize..=64, t in 0.1f64..5.0, ch in 0usize..3) {
            let p = ChainParams::new(0.5, -0.2, 1.1, 2 * half, DecayKernel::log_law(0.4).unwrap()).unwrap();
            let a = qfi_optimal(&p, &probe(Channel::ALL[ch], 1.0)).unwrap().value;
            let b = qfi_optimal(&p, &probe(Channel::ALL[ch], t)).unwrap().value;
            prop_assert!((b / (t * t) - a).abs() <= 1e-12 * a);
        }
    }
}
