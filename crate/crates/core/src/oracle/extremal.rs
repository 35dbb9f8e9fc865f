//! Explicit construction of the extremal eigenstates of `∂_θ H` from
//! momentum-mode ladder operators, checked against the dense operators.

use nalgebra::DVector;
use num_complex::Complex64;
use serde::Serialize;

use super::fock::{annihilate, check_oracle_sites, create};
use super::hamiltonian::{build_dtheta_h, Representation};
use crate::chain::{make_grid, structure_factors, ChainParams, Channel};
use crate::error::{Error, Result};
use crate::qfi::{cosine_spread, gamma};

/// Largest chain accepted by [`verify_extremal_states`].
pub const MAX_EXTREMAL_SITES: usize = 10;
/// Tolerance on state norms.
pub const NORM_TOL: f64 = 1e-10;
/// Tolerance on eigen-equation residuals and expectation values.
pub const STATE_TOL: f64 = 1e-8;

type State = DVector<Complex64>;

/// Bogoliubov coefficients of the pairing derivative at one momentum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BogoliubovPair {
    pub k: f64,
    pub f: f64,
    pub u: Complex64,
    pub v: Complex64,
}

/// `u_k = 1/√2`, `v_k = ∓i/√2` according to the sign of `f_α(k)`.
pub fn bogoliubov_coefficients(p: &ChainParams) -> Result<Vec<BogoliubovPair>> {
    let n = p.n_sites();
    let grid = make_grid(n)?;
    let f = structure_factors(n, &p.kernel)?;
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Ok(grid
        .momenta()
        .iter()
        .zip(&f)
        .map(|(&k, &fk)| BogoliubovPair {
            k,
            f: fk,
            u: Complex64::new(s, 0.0),
            v: Complex64::new(0.0, if fk >= 0.0 { -s } else { s }),
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtremalReport {
    pub n_sites: usize,
    pub gamma: f64,
    pub gs_norm: f64,
    pub fo_norm: f64,
    /// `‖(∂_Δ H + γ/4)|GS⟩‖`.
    pub gs_residual: f64,
    /// `⟨FO|∂_Δ H + γ/4|FO⟩`, expected `γ/2`.
    pub fo_expectation: f64,
    /// `‖(∂_Δ H + γ/4 − γ/2)|FO⟩‖`.
    pub fo_residual: f64,
    /// `½ Σ_k |cos k|`.
    pub j_half_spread: f64,
    /// Eigen-residuals of the half-filled states at `±½ Σ|cos k|`.
    pub j_upper_residual: f64,
    pub j_lower_residual: f64,
    /// Eigen-residuals of `|0⟩` at `N/2` and `|𝟙⟩` at `−N/2`.
    pub mu_empty_residual: f64,
    pub mu_full_residual: f64,
    pub passed: bool,
}

/// `a(k) = N^{-1/2} Σ_j e^{−ikj} a_j` or its adjoint, applied to a state.
fn apply_mode(psi: &State, n: usize, k: f64, dagger: bool) -> State {
    let mut out = State::zeros(psi.len());
    let norm = 1.0 / (n as f64).sqrt();
    for j in 0..n {
        let angle = if dagger { k * j as f64 } else { -k * j as f64 };
        let phase = Complex64::from_polar(norm, angle);
        for (s, amp) in psi.iter().enumerate() {
            if *amp == Complex64::new(0.0, 0.0) {
                continue;
            }
            let hit = if dagger { create(s, j) } else { annihilate(s, j) };
            if let Some((sign, t)) = hit {
                out[t] += phase * sign * amp;
            }
        }
    }
    out
}

fn basis_state(dim: usize, index: usize) -> State {
    let mut v = State::zeros(dim);
    v[index] = Complex64::new(1.0, 0.0);
    v
}

fn residual(op: &super::ManyBodyOperator, psi: &State, shift: f64, lambda: f64) -> f64 {
    let out = op.apply(psi) + psi * Complex64::new(shift - lambda, 0.0);
    out.norm()
}

/// Builds `|GS⟩`, `|FO⟩` and the hopping and chemical-potential extremal
/// states, and checks each against the dense `∂_θ H`.
///
/// The pairing derivative is compared in its normal-ordered form
/// `∂_Δ H + γ/4`, whose spectrum is `[0, γ/2]`.
pub fn verify_extremal_states(p: &ChainParams) -> Result<ExtremalReport> {
    let n = p.n_sites();
    check_oracle_sites(n, MAX_EXTREMAL_SITES)?;
    let dim = 1usize << n;
    let grid = make_grid(n)?;
    let coeffs = bogoliubov_coefficients(p)?;
    let g = gamma(n, &p.kernel)?;

    let mut gs = basis_state(dim, 0);
    let mut fo = basis_state(dim, dim - 1);
    for i in 0..n / 2 {
        let partner = grid.partner(i);
        let (k, kp) = (grid.momenta()[i], grid.momenta()[partner]);
        let BogoliubovPair { u, v, .. } = coeffs[i];
        let pair = apply_mode(&apply_mode(&gs, n, kp, true), n, k, true);
        gs = &gs * u - pair * v;
        let pair = apply_mode(&apply_mode(&fo, n, kp, false), n, k, false);
        fo = &fo * u.conj() - pair * v.conj();
    }
    if gs.len() != dim || fo.len() != dim {
        return Err(Error::numeric("extremal state has the wrong dimension"));
    }

    let d_delta = build_dtheta_h(p, Channel::Delta, Representation::FermionFock)?;
    let shift = g / 4.0;
    let gs_residual = residual(&d_delta, &gs, shift, 0.0);
    let fo_expectation = (fo.adjoint() * (d_delta.apply(&fo) + &fo * Complex64::new(shift, 0.0)))[(0, 0)].re;
    let fo_residual = residual(&d_delta, &fo, shift, g / 2.0);

    let d_j = build_dtheta_h(p, Channel::J, Representation::FermionFock)?;
    let half = cosine_spread(n)? / 2.0;
    let mut upper = basis_state(dim, 0);
    let mut lower = basis_state(dim, 0);
    for i in 0..n {
        let k = grid.momenta()[i];
        if grid.cos(i) < 0.0 {
            upper = apply_mode(&upper, n, k, true);
        } else {
            lower = apply_mode(&lower, n, k, true);
        }
    }
    let j_upper_residual = residual(&d_j, &upper, 0.0, half);
    let j_lower_residual = residual(&d_j, &lower, 0.0, -half);

    let d_mu = build_dtheta_h(p, Channel::Mu, Representation::FermionFock)?;
    let nh = n as f64 / 2.0;
    let mu_empty_residual = residual(&d_mu, &basis_state(dim, 0), 0.0, nh);
    let mu_full_residual = residual(&d_mu, &basis_state(dim, dim - 1), 0.0, -nh);

    let (gs_norm, fo_norm) = (gs.norm(), fo.norm());
    let passed = (gs_norm - 1.0).abs() < NORM_TOL
        && (fo_norm - 1.0).abs() < NORM_TOL
        && gs_residual < STATE_TOL
        && (fo_expectation - g / 2.0).abs() < STATE_TOL
        && fo_residual < STATE_TOL
        && j_upper_residual < STATE_TOL
        && j_lower_residual < STATE_TOL
        && mu_empty_residual < STATE_TOL
        && mu_full_residual < STATE_TOL;
    Ok(ExtremalReport {
        n_sites: n,
        gamma: g,
        gs_norm,
        fo_norm,
        gs_residual,
        fo_expectation,
        fo_residual,
        j_half_spread: half,
        j_upper_residual,
        j_lower_residual,
        mu_empty_residual,
        mu_full_residual,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::DecayKernel;
    use approx::assert_relative_eq;

    #[test]
    fn coefficients_are_normalised_and_odd() {
        let p = ChainParams::new(1.0, 1.0, 1.0, 8, DecayKernel::power_law(0.5).unwrap()).unwrap();
        let c = bogoliubov_coefficients(&p).unwrap();
        for (i, b) in c.iter().enumerate() {
            assert_relative_eq!(b.u.norm_sqr() + b.v.norm_sqr(), 1.0, max_relative = 1e-15);
            assert_eq!(c[c.len() - 1 - i].v, -b.v);
        }
    }

    #[test]
    fn extremal_states_small_chains() {
        for n in [2usize, 4, 6, 8] {
            for kernel in [DecayKernel::power_law(0.0).unwrap(), DecayKernel::power_law(0.5).unwrap(), DecayKernel::log_law(1.2).unwrap()] {
                let p = ChainParams::new(1.0, 1.0, 1.0, n, kernel).unwrap();
                let r = verify_extremal_states(&p).unwrap();
                assert!(r.passed, "N={n}: {r:?}");
            }
        }
    }

    #[test]
    fn flat_kernel_four_sites() {
        let p = ChainParams::new(0.0, 0.0, 1.0, 4, DecayKernel::power_law(0.0).unwrap()).unwrap();
        let r = verify_extremal_states(&p).unwrap();
        assert_relative_eq!(r.fo_expectation, 2.0 * 2f64.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn size_cap() {
        let p = ChainParams::new(1.0, 1.0, 1.0, 12, DecayKernel::power_law(0.0).unwrap()).unwrap();
        assert!(matches!(verify_extremal_states(&p), Err(Error::Resource(_))));
    }
}
