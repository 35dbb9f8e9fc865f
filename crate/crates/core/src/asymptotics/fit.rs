//! Least-squares estimators for scaling exponents.

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum FitModel {
    /// `y = D·x^e`.
    PowerLaw { exponent: f64, prefactor: f64 },
    /// `y = A·(ln N)^c + B`.
    PolyLog { a: f64, c: f64, b: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingFit {
    pub model: FitModel,
    /// Root-mean-square residual in fit space (log space for power laws).
    pub residual: f64,
    pub n_points: usize,
}

impl ScalingFit {
    /// Power-law exponent `e` or poly-log exponent `c`.
    pub fn exponent(&self) -> f64 {
        match self.model {
            FitModel::PowerLaw { exponent, .. } => exponent,
            FitModel::PolyLog { c, .. } => c,
        }
    }
}

const POLYLOG_SEEDS: [f64; 4] = [0.5, 1.0, 1.5, 2.0];
const MAX_ITERATIONS: usize = 200;
const GRADIENT_TOL: f64 = 1e-10;

fn check_points(points: &[(f64, f64)], min: usize) -> Result<()> {
    if points.len() < min {
        return Err(Error::domain(format!(
            "fit needs at least {min} points, got {}",
            points.len()
        )));
    }
    for &(x, y) in points {
        if !(x.is_finite() && y.is_finite()) {
            return Err(Error::domain(format!("fit point ({x}, {y}) is not finite")));
        }
    }
    let mut xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    xs.sort_by(f64::total_cmp);
    if xs.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::domain("fit abscissae must be distinct"));
    }
    Ok(())
}

/// Straight line `v = p·u + q` by least squares; returns `(p, q, rms)`.
fn line(u: &[f64], v: &[f64]) -> (f64, f64, f64) {
    let n = u.len() as f64;
    let mu = u.iter().sum::<f64>() / n;
    let mv = v.iter().sum::<f64>() / n;
    let (mut suu, mut suv) = (0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        suu += (a - mu) * (a - mu);
        suv += (a - mu) * (b - mv);
    }
    let p = suv / suu;
    let q = mv - p * mu;
    let ss: f64 = u.iter().zip(v).map(|(a, b)| (b - p * a - q).powi(2)).sum();
    (p, q, (ss / n).sqrt())
}

/// Fits `y = D·x^e` by a least-squares line through `(ln x, ln y)`.
///
/// Points are `(x, y)` with `x > 0`, `y > 0`; `x` is usually the system
/// size `N`.
pub fn fit_power(points: &[(f64, f64)]) -> Result<ScalingFit> {
    check_points(points, 3)?;
    if let Some(&(x, y)) = points.iter().find(|p| p.0 <= 0.0 || p.1 <= 0.0) {
        return Err(Error::domain(format!(
            "power-law fit needs positive data, got ({x}, {y})"
        )));
    }
    let u: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let v: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    let (e, q, rms) = line(&u, &v);
    Ok(ScalingFit {
        model: FitModel::PowerLaw {
            exponent: e,
            prefactor: q.exp(),
        },
        residual: rms,
        n_points: points.len(),
    })
}

fn polylog_residuals(x: &[f64], y: &[f64], p: &Vector3<f64>) -> Vec<f64> {
    x.iter()
        .zip(y)
        .map(|(xi, yi)| p[0] * xi.powf(p[1]) + p[2] - yi)
        .collect()
}

fn rms(r: &[f64]) -> f64 {
    (r.iter().map(|v| v * v).sum::<f64>() / r.len() as f64).sqrt()
}

struct Refined {
    params: Vector3<f64>,
    rms: f64,
    converged: bool,
}

/// Levenberg–Marquardt on `(A, c, B)` from a starting point.
fn refine(x: &[f64], y: &[f64], start: Vector3<f64>) -> Refined {
    let mut p = start;
    let mut r = polylog_residuals(x, y, &p);
    let mut cost: f64 = r.iter().map(|v| v * v).sum();
    let mut lambda = 1e-3;
    let y_scale = y.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
    for _ in 0..MAX_ITERATIONS {
        let mut jtj = Matrix3::zeros();
        let mut jtr = Vector3::zeros();
        for (xi, ri) in x.iter().zip(&r) {
            let xc = xi.powf(p[1]);
            let row = Vector3::new(xc, p[0] * xc * xi.ln(), 1.0);
            jtj += row * row.transpose();
            jtr += row * *ri;
        }
        let grad = jtr.norm() / (y_scale * (1.0 + jtj.norm().sqrt()));
        if grad < GRADIENT_TOL || cost == 0.0 {
            return Refined { params: p, rms: rms(&r), converged: true };
        }
        loop {
            let mut a = jtj;
            for i in 0..3 {
                a[(i, i)] += lambda * jtj[(i, i)].max(1e-300);
            }
            let step = match a.lu().solve(&(-jtr)) {
                Some(s) => s,
                None => {
                    lambda *= 10.0;
                    if lambda > 1e20 {
                        return Refined { params: p, rms: rms(&r), converged: false };
                    }
                    continue;
                }
            };
            let trial = p + step;
            let rt = polylog_residuals(x, y, &trial);
            let ct: f64 = rt.iter().map(|v| v * v).sum();
            if ct.is_finite() && ct <= cost {
                let stalled = step.norm() <= 1e-15 * (1.0 + p.norm());
                p = trial;
                r = rt;
                cost = ct;
                lambda = (lambda * 0.3).max(1e-12);
                if stalled {
                    // Cannot move further in floating point: the gradient
                    // sits at its roundoff floor.
                    return Refined { params: p, rms: rms(&r), converged: true };
                }
                break;
            }
            lambda *= 10.0;
            if lambda > 1e20 {
                return Refined { params: p, rms: rms(&r), converged: grad < 1e-6 };
            }
        }
    }
    Refined { params: p, rms: rms(&r), converged: false }
}

/// Linear least squares for `(A, B)` at fixed `c`.
fn linear_ab(x: &[f64], y: &[f64], c: f64) -> Vector3<f64> {
    let u: Vec<f64> = x.iter().map(|v| v.powf(c)).collect();
    let (a, b, _) = line(&u, y);
    Vector3::new(a, c, b)
}

/// Fits `y = A·(ln N)^c + B` to points `(N, y)` with `N > 1`.
///
/// Each seed `c ∈ {0.5, 1, 1.5, 2}` is paired with its linear-optimal
/// `(A, B)`; seeds are refined in order of their residual until one
/// converges with `A > 0` and `c > 0`.
pub fn fit_polylog(points: &[(f64, f64)]) -> Result<ScalingFit> {
    check_points(points, 4)?;
    if let Some(&(n, _)) = points.iter().find(|p| p.0 <= 1.0) {
        return Err(Error::domain(format!("poly-log fit needs N > 1, got {n}")));
    }
    let x: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let y: Vec<f64> = points.iter().map(|p| p.1).collect();

    let mut seeds: Vec<(f64, Vector3<f64>)> = POLYLOG_SEEDS
        .iter()
        .map(|&c| {
            let p = linear_ab(&x, &y, c);
            (rms(&polylog_residuals(&x, &y, &p)), p)
        })
        .collect();
    seeds.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut best = f64::INFINITY;
    for (_, start) in seeds {
        let out = refine(&x, &y, start);
        best = best.min(out.rms);
        let p = out.params;
        if out.converged && p[0] > 0.0 && p[1] > 0.0 && p.iter().all(|v| v.is_finite()) {
            return Ok(ScalingFit {
                model: FitModel::PolyLog { a: p[0], c: p[1], b: p[2] },
                residual: out.rms,
                n_points: points.len(),
            });
        }
    }
    Err(Error::Fit {
        best_residual: best,
        reason: "no seed converged to a fit with A > 0 and c > 0".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn exact_square_law() {
        let f = fit_power(&[(10.0, 100.0), (100.0, 1e4), (1000.0, 1e6)]).unwrap();
        assert_relative_eq!(f.exponent(), 2.0, max_relative = 1e-12);
        assert!(f.residual < 1e-9);
    }

    #[test]
    fn linear_law() {
        let f = fit_power(&[(3.0, 21.0), (17.0, 119.0), (40.0, 280.0)]).unwrap();
        assert_relative_eq!(f.exponent(), 1.0, max_relative = 1e-12);
        if let FitModel::PowerLaw { prefactor, .. } = f.model {
            assert_relative_eq!(prefactor, 7.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn power_fit_rejects_bad_data() {
        assert!(matches!(fit_power(&[(1.0, 1.0), (2.0, 0.0), (3.0, 1.0)]), Err(Error::Domain(_))));
        assert!(fit_power(&[(1.0, 1.0), (2.0, 2.0)]).is_err());
        assert!(fit_power(&[(1.0, 1.0), (1.0, 2.0), (3.0, 1.0)]).is_err());
    }

    #[test]
    fn polylog_round_trip() {
        let pts: Vec<(f64, f64)> = [10.0, 1e2, 1e3, 1e4].iter().map(|&n: &f64| (n, n.ln().powi(2))).collect();
        let f = fit_polylog(&pts).unwrap();
        let FitModel::PolyLog { a, c, b } = f.model else { panic!() };
        assert!((a - 1.0).abs() < 1e-6 && (c - 2.0).abs() < 1e-6 && b.abs() < 1e-5, "{a} {c} {b}");
        assert!(f.residual < 1e-8);
    }

    #[test]
    fn polylog_with_noise() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let pts: Vec<(f64, f64)> = (0..30)
            .map(|i| {
                let n = 20.0 * 1.3f64.powi(i);
                let noise = 1.0 + 0.01 * (2.0 * rng.random::<f64>() - 1.0);
                (n, (3.0 * n.ln().powf(0.8) + 5.0) * noise)
            })
            .collect();
        let f = fit_polylog(&pts).unwrap();
        assert!((f.exponent() - 0.8).abs() < 0.1, "{}", f.exponent());
    }

    #[test]
    fn polylog_rejects_decreasing_data() {
        let pts: Vec<(f64, f64)> = [10.0, 1e2, 1e3, 1e4].iter().map(|&n: &f64| (n, -n.ln())).collect();
        assert!(matches!(fit_polylog(&pts), Err(Error::Fit { .. })));
        assert!(fit_polylog(&[(10.0, 1.0), (20.0, 2.0), (30.0, 3.0)]).is_err());
        assert!(fit_polylog(&[(1.0, 1.0), (20.0, 2.0), (30.0, 3.0), (40.0, 4.0)]).is_err());
    }
}
