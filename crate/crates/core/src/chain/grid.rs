use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Relative tolerance used to decide whether a momentum lies on the grid.
const GRID_TOL: f64 = 1e-9;

/// The `N` antiperiodic momenta `k_n = (2n+1)π/N`, `n = 0..N-1`.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumGrid {
    n_sites: usize,
    momenta: Vec<f64>,
}

impl MomentumGrid {
    pub fn new(n_sites: usize) -> Result<Self> {
        check_sites(n_sites)?;
        let momenta = (0..n_sites).map(|n| grid_momentum(n, n_sites)).collect();
        Ok(Self { n_sites, momenta })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn momenta(&self) -> &[f64] {
        &self.momenta
    }

    pub fn len(&self) -> usize {
        self.momenta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.momenta.is_empty()
    }

    /// `cos k_n`, evaluated from the exact rational angle.
    pub fn cos(&self, index: usize) -> f64 {
        grid_cos(index, self.n_sites)
    }

    /// Index of the partner momentum `2π - k`.
    pub fn partner(&self, index: usize) -> usize {
        self.n_sites - 1 - index
    }

    /// Grid index of `k`, or a domain error when `k` is not a grid momentum.
    pub fn index_of(&self, k: f64) -> Result<usize> {
        grid_index(k, self.n_sites)
    }
}

pub(crate) fn check_sites(n_sites: usize) -> Result<()> {
    if n_sites < 2 || n_sites % 2 != 0 {
        return Err(Error::domain(format!(
            "number of sites must be even and >= 2, got {n_sites}"
        )));
    }
    Ok(())
}

pub(crate) fn grid_momentum(index: usize, n_sites: usize) -> f64 {
    (2 * index + 1) as f64 * PI / n_sites as f64
}

/// `sin(π m / N)` with `m` reduced modulo `2N` first, so the argument never
/// leaves `[0, 2π)`.
pub(crate) fn sin_rational(m: usize, n_sites: usize) -> f64 {
    let m = m % (2 * n_sites);
    (PI * m as f64 / n_sites as f64).sin()
}

/// `cos k_index`, evaluated as `sin(π(N − 2m)/2N)` after folding `m` into
/// `[0, N]` so that `cos(±π/2)` is exactly zero and `cos k = cos(−k)`
/// bit for bit.
pub(crate) fn grid_cos(index: usize, n_sites: usize) -> f64 {
    let m = (2 * index + 1) % (2 * n_sites);
    let m = if m > n_sites { 2 * n_sites - m } else { m };
    let num = n_sites as f64 - 2.0 * m as f64;
    (PI * num / (2 * n_sites) as f64).sin()
}

pub(crate) fn grid_index(k: f64, n_sites: usize) -> Result<usize> {
    check_sites(n_sites)?;
    if !k.is_finite() {
        return Err(Error::domain(format!("momentum {k} is not finite")));
    }
    let x = (k * n_sites as f64 / PI - 1.0) / 2.0;
    let n = x.round();
    if n < 0.0 || n >= n_sites as f64 {
        return Err(Error::domain(format!(
            "momentum {k} is outside the antiperiodic grid for N = {n_sites}"
        )));
    }
    let n = n as usize;
    let kn = grid_momentum(n, n_sites);
    if (k - kn).abs() > GRID_TOL * kn.max(1.0) {
        return Err(Error::domain(format!(
            "momentum {k} is not an antiperiodic grid momentum for N = {n_sites}"
        )));
    }
    Ok(n)
}

/// The antiperiodic momentum grid for `N` sites.
pub fn make_grid(n_sites: usize) -> Result<MomentumGrid> {
    MomentumGrid::new(n_sites)
}
