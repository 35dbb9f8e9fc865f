//! Euler–Maclaurin conversion of a sum into an integral plus corrections.
//!
//! For integers `a ≤ b` and correction order `M`,
//!
//! ```text
//! Σ_{n=a}^{b} g(n) = ∫_a^b g + [g(a) + g(b)]/2
//!                  + Σ_{m=1}^{M} B_{2m}/(2m)! [g^{(2m-1)}(b) − g^{(2m-1)}(a)]
//!                  + ∫_a^b B_{2M+1}({x})/(2M+1)! g^{(2M+1)}(x) dx
//! ```
//!
//! where `B_n({x})` is the periodised Bernoulli polynomial.

use super::quadrature::{integrate, QuadratureOptions};
use crate::error::{Error, Result};

/// Bernoulli numbers `B_0..=B_n` (convention `B_1 = −1/2`).
pub fn bernoulli_numbers(n: usize) -> Vec<f64> {
    let mut b = vec![0.0; n + 1];
    b[0] = 1.0;
    for m in 1..=n {
        // B_m = −1/(m+1) Σ_{k<m} C(m+1, k) B_k
        let mut binom = 1.0;
        let mut acc = 0.0;
        for (k, bk) in b.iter().enumerate().take(m) {
            acc += binom * bk;
            binom *= (m + 1 - k) as f64 / (k + 1) as f64;
        }
        b[m] = -acc / (m + 1) as f64;
    }
    b
}

/// Bernoulli polynomial `B_n(x)`.
pub fn bernoulli_polynomial(n: usize, x: f64) -> f64 {
    let b = bernoulli_numbers(n);
    let mut binom = 1.0;
    let mut acc = 0.0;
    for (k, bk) in b.iter().enumerate() {
        acc += binom * bk * x.powi((n - k) as i32);
        binom *= (n - k) as f64 / (k + 1) as f64;
    }
    acc
}

/// Periodised Bernoulli polynomial `B_n({x})`, period 1.
pub fn periodic_bernoulli(n: usize, x: f64) -> f64 {
    bernoulli_polynomial(n, x - x.floor())
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// A real function whose derivatives can be evaluated pointwise.
pub trait SmoothFunction {
    /// `g^{(order)}(x)`; `None` when the derivative is not available.
    fn derivative(&self, order: usize, x: f64) -> Option<f64>;
}

impl<F: Fn(usize, f64) -> Option<f64>> SmoothFunction for F {
    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        self(order, x)
    }
}

/// Dense polynomial `Σ c_i x^i`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    pub coefficients: Vec<f64>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<f64>) -> Self {
        Self { coefficients }
    }
}

impl SmoothFunction for Polynomial {
    fn derivative(&self, order: usize, x: f64) -> Option<f64> {
        let c = &self.coefficients;
        let mut acc = 0.0;
        for i in (order..c.len()).rev() {
            let falling: f64 = (i - order + 1..=i).map(|v| v as f64).product();
            acc = acc * x + c[i] * falling;
        }
        Some(acc)
    }
}

/// Correction order `M` together with the Bernoulli numbers it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct EmConfig {
    order: usize,
    bernoulli: Vec<f64>,
}

impl EmConfig {
    pub fn new(order: usize) -> Self {
        Self {
            order,
            bernoulli: bernoulli_numbers(2 * order + 1),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `B_n` for `n ≤ 2M + 1`.
    pub fn bernoulli(&self, n: usize) -> Option<f64> {
        self.bernoulli.get(n).copied()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmEstimate {
    /// Integral plus endpoint and derivative corrections.
    pub approximation: f64,
    /// Signed remainder integral; `approximation + remainder` is the sum.
    pub remainder: f64,
    /// `|remainder|`.
    pub remainder_estimate: f64,
    /// `sup|B_{2M+1}|/(2M+1)! · ∫|g^{(2M+1)}|`.
    pub remainder_bound: f64,
}

fn eval<G: SmoothFunction + ?Sized>(g: &G, order: usize, x: f64) -> Result<f64> {
    match g.derivative(order, x) {
        Some(v) if v.is_finite() => Ok(v),
        _ => Err(Error::domain(format!(
            "derivative of order {order} is not evaluable at x = {x}"
        ))),
    }
}

fn sup_periodic_bernoulli(n: usize) -> f64 {
    (0..=2000)
        .map(|i| bernoulli_polynomial(n, i as f64 / 2000.0).abs())
        .fold(0.0, f64::max)
}

/// Euler–Maclaurin approximation of `Σ_{n=a}^{b} g(n)`.
pub fn euler_maclaurin_sum<G: SmoothFunction + ?Sized>(
    g: &G,
    a: i64,
    b: i64,
    cfg: &EmConfig,
) -> Result<EmEstimate> {
    if a > b {
        return Err(Error::domain(format!("summation bounds reversed: a = {a} > b = {b}")));
    }
    let (fa, fb) = (a as f64, b as f64);
    let opts = QuadratureOptions {
        abs_tol: 1e-13,
        rel_tol: 1e-14,
        max_intervals: 100_000,
    };
    // Validate evaluability up front so quadrature never sees a None.
    let top = 2 * cfg.order + 1;
    for q in 0..=top {
        eval(g, q, fa)?;
        eval(g, q, fb)?;
        eval(g, q, 0.5 * (fa + fb))?;
    }

    let mut integral = 0.0;
    let mut remainder = 0.0;
    let mut abs_top = 0.0;
    let denom = factorial(top);
    for n in a..b {
        let (lo, hi) = (n as f64, n as f64 + 1.0);
        integral += integrate(|x| g.derivative(0, x).unwrap_or(f64::NAN), lo, hi, opts)?.value;
        remainder += integrate(
            |x| periodic_bernoulli(top, x - lo) * g.derivative(top, x).unwrap_or(f64::NAN),
            lo,
            hi,
            opts,
        )?
        .value;
        abs_top += integrate(|x| g.derivative(top, x).unwrap_or(f64::NAN).abs(), lo, hi, opts)?.value;
    }
    remainder /= denom;

    let mut approximation = integral + 0.5 * (eval(g, 0, fa)? + eval(g, 0, fb)?);
    for m in 1..=cfg.order {
        let b2m = cfg.bernoulli(2 * m).expect("table covers 2M");
        approximation +=
            b2m / factorial(2 * m) * (eval(g, 2 * m - 1, fb)? - eval(g, 2 * m - 1, fa)?);
    }
    Ok(EmEstimate {
        approximation,
        remainder,
        remainder_estimate: remainder.abs(),
        remainder_bound: sup_periodic_bernoulli(top) / denom * abs_top,
    })
}
