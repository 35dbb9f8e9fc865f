use serde::{Deserialize, Serialize};

use super::grid::{grid_cos, grid_index};
use super::params::{ChainParams, Channel};
use super::structure::structure_factor_at;
use crate::error::{Error, Result};

/// Closed-form quantities of one momentum mode for a given channel and probe
/// time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeQuantities {
    pub k: f64,
    /// Structure factor `f_α(k)`.
    pub f: f64,
    /// Quasiparticle energy `ε(k)`.
    pub eps: f64,
    /// `∂_θ ε(k)`.
    pub deps: f64,
    /// `ξ_θ(k) = ∂_θ cos φ / sin φ`.
    pub xi: f64,
    /// Generator eigenvalue `𝓔_θ(k)`.
    pub script_e: f64,
}

impl ModeQuantities {
    /// Assembles the mode bundle from the structure factor `f` at `k`.
    ///
    /// When `ε = 0` every numerator vanishes as well and the removable limit
    /// is taken: `|∂_θ ε|` becomes `|cos k|`, `1` or `|f|/2` for the `J`, `μ`
    /// and `Δ` channels and `ξ → 0`.
    pub(crate) fn from_structure(
        k: f64,
        cos_k: f64,
        f: f64,
        p: &ChainParams,
        channel: Channel,
        time: f64,
    ) -> Result<Self> {
        let kinetic = p.j * cos_k + p.mu;
        let gap = 0.5 * p.delta * f;
        let eps = kinetic.hypot(gap);
        if !eps.is_finite() || !f.is_finite() {
            return Err(Error::SingularMode {
                k,
                reason: format!("non-finite dispersion (f = {f}, eps = {eps})"),
            });
        }
        let (deps, xi) = if eps > 0.0 {
            match channel {
                Channel::J => (cos_k * kinetic / eps, gap * cos_k / eps / eps),
                Channel::Mu => (kinetic / eps, gap / eps / eps),
                Channel::Delta => (gap * (0.5 * f) / eps, -kinetic * (0.5 * f) / eps / eps),
            }
        } else {
            let limit = match channel {
                Channel::J => cos_k.abs(),
                Channel::Mu => 1.0,
                Channel::Delta => 0.5 * f.abs(),
            };
            (limit, 0.0)
        };
        if !deps.is_finite() || !xi.is_finite() {
            return Err(Error::SingularMode {
                k,
                reason: format!("channel {channel} derivative overflowed at eps = {eps:e}"),
            });
        }
        let script_e = generator_eigenvalue(time, eps, deps, xi);
        Ok(Self {
            k,
            f,
            eps,
            deps,
            xi,
            script_e,
        })
    }
}

/// `𝓔 = [T² (∂ε)² + ξ² sin²(εT)]^{1/2}`, algebraically identical to
/// `[T²(∂ε)² + ¼ξ² sin²(2εT) + ¼ξ²(1 − cos 2εT)²]^{1/2}` without the
/// cancellation in `1 − cos`.
pub(crate) fn generator_eigenvalue(time: f64, eps: f64, deps: f64, xi: f64) -> f64 {
    (time * deps).hypot(xi * (eps * time).sin())
}

/// Quasiparticle energy `ε(k) = sqrt([Δ f_α(k)/2]² + (J cos k + μ)²)`.
pub fn dispersion(k: f64, p: &ChainParams) -> Result<f64> {
    let n = p.n_sites();
    let index = grid_index(k, n)?;
    let weights = p.kernel.symmetric_weights(n)?;
    let f = structure_factor_at(index, n, &weights);
    Ok((p.j * grid_cos(index, n) + p.mu).hypot(0.5 * p.delta * f))
}

/// All per-mode quantities at grid momentum `k` for channel `channel` and
/// probe time `time`.
pub fn mode_quantities(
    k: f64,
    p: &ChainParams,
    channel: Channel,
    time: f64,
) -> Result<ModeQuantities> {
    check_time(time)?;
    let n = p.n_sites();
    let index = grid_index(k, n)?;
    let weights = p.kernel.symmetric_weights(n)?;
    let f = structure_factor_at(index, n, &weights);
    ModeQuantities::from_structure(k, grid_cos(index, n), f, p, channel, time)
}

pub(crate) fn check_time(time: f64) -> Result<()> {
    if time.is_finite() && time >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "probe time must be finite and >= 0, got {time}"
        )))
    }
}
