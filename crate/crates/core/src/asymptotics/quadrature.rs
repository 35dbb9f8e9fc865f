//! Globally adaptive 15-point Gauss–Kronrod quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// 7-point Gauss weights for the nodes `XGK[1], XGK[3], XGK[5], 0`.
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-10,
            max_intervals: 20_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    /// `∫|f|` estimate, which sets the roundoff floor of the panel.
    magnitude: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut gauss = fc * WG[3];
    let mut kron = fc * WGK[7];
    let mut res_abs = kron.abs();
    let mut fv = [0.0; 14];
    for i in 0..7 {
        let dx = half * XGK[i];
        let (f1, f2) = (f(center - dx), f(center + dx));
        fv[2 * i] = f1;
        fv[2 * i + 1] = f2;
        kron += WGK[i] * (f1 + f2);
        res_abs += WGK[i] * (f1.abs() + f2.abs());
        if i % 2 == 1 {
            gauss += WG[i / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * kron;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for i in 0..7 {
        res_asc += WGK[i] * ((fv[2 * i] - mean).abs() + (fv[2 * i + 1] - mean).abs());
    }
    let scale = half.abs();
    let value = kron * half;
    let res_abs = res_abs * scale;
    let res_asc = res_asc * scale;
    let mut error = ((kron - gauss) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel {
        a,
        b,
        value,
        error,
        magnitude: res_abs,
    }
}

/// Integrates `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, opts: QuadratureOptions) -> Result<Quadrature> {
    integrate_partitioned(f, &[a, b], opts)
}

/// Integrates `f` over `[points[0], points[last]]`, starting from the
/// partition given by `points` (ascending). Kinks and near-singular spots
/// placed at partition points converge much faster.
pub fn integrate_partitioned<F: Fn(f64) -> f64>(
    f: F,
    points: &[f64],
    opts: QuadratureOptions,
) -> Result<Quadrature> {
    if points.len() < 2 {
        return Err(Error::domain("quadrature needs at least two partition points"));
    }
    if points.iter().any(|x| !x.is_finite()) || points.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::domain("quadrature partition must be finite and ascending"));
    }
    let mut heap: BinaryHeap<Panel> = points
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| kronrod(&f, w[0], w[1]))
        .collect();
    let mut evaluations = 15 * heap.len();
    let mut value: f64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();
    let mut magnitude: f64 = heap.iter().map(|p| p.magnitude).sum();
    loop {
        if !value.is_finite() {
            return Err(Error::numeric(format!(
                "integrand produced a non-finite value after {evaluations} evaluations"
            )));
        }
        // Tolerances tighter than the accumulated roundoff cannot be met.
        let floor = 100.0 * f64::EPSILON * magnitude;
        let target = opts.abs_tol.max(opts.rel_tol * value.abs()).max(floor);
        if error <= target {
            // Running totals drift; report the exact sums.
            return Ok(Quadrature {
                value: heap.iter().map(|p| p.value).sum(),
                error: heap.iter().map(|p| p.error).sum(),
                intervals: heap.len(),
                evaluations,
            });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::numeric(format!(
                "quadrature did not converge: estimate {value:e} with error {error:e} \
                 (target {target:e}) after {} intervals",
                heap.len()
            )));
        }
        let worst = heap.pop().expect("heap is non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b) {
            return Err(Error::numeric(format!(
                "quadrature interval [{}, {}] cannot be bisected further (error {error:e})",
                worst.a, worst.b
            )));
        }
        let left = kronrod(&f, worst.a, mid);
        let right = kronrod(&f, mid, worst.b);
        value += left.value + right.value - worst.value;
        error = (error + left.error + right.error - worst.error).max(0.0);
        magnitude = (magnitude + left.magnitude + right.magnitude - worst.magnitude).max(0.0);
        heap.push(left);
        heap.push(right);
        evaluations += 30;
    }
}
