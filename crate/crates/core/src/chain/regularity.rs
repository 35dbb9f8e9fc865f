use serde::{Deserialize, Serialize};

use super::kernel::DecayKernel;

/// Allowed growth of the running supremum between `[1, N/2]` and `[1, N]`.
const SUP_GROWTH_TOL: f64 = 0.05;
/// Allowed share of the partial sum contributed by its second half.
const TAIL_SHARE_TOL: f64 = 0.05;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionCheck {
    pub passed: bool,
    /// Separation `l` that witnesses a failure.
    pub witness: Option<usize>,
    pub detail: String,
}

/// Numerical check of the two regularity conditions on a decay kernel.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelReport {
    pub regularity_order: u32,
    pub n_sites: usize,
    /// Finite differences of order `0..=2Q` stay bounded on `[1, N]`.
    pub bounded_derivatives: ConditionCheck,
    /// `Σ_l |Δ^{2Q+1} κ_l|` behaves as a convergent series.
    pub integrable_top_derivative: ConditionCheck,
}

impl KernelReport {
    pub fn passed(&self) -> bool {
        self.bounded_derivatives.passed && self.integrable_top_derivative.passed
    }
}

fn forward_difference(values: &[f64]) -> Vec<f64> {
    values.windows(2).map(|w| w[1] - w[0]).collect()
}

/// Checks the regularity conditions with finite differences on the integer
/// separations `1..=N` (or the table length, if shorter).
pub fn validate_kernel(kernel: &DecayKernel, n_sites: usize) -> KernelReport {
    let q = kernel.regularity_order();
    let top = 2 * q as usize + 1;
    let len = kernel.max_separation().map_or(n_sites, |m| m.min(n_sites));
    let samples: Vec<f64> = (1..=len).filter_map(|l| kernel.value(l).ok()).collect();

    let mut diffs = vec![samples];
    for _ in 0..top {
        let next = forward_difference(diffs.last().unwrap());
        diffs.push(next);
    }

    let bounded_derivatives = check_bounded(&diffs[..top]);
    let integrable_top_derivative = check_summable(&diffs[top], top);

    KernelReport {
        regularity_order: q,
        n_sites,
        bounded_derivatives,
        integrable_top_derivative,
    }
}

fn check_bounded(orders: &[Vec<f64>]) -> ConditionCheck {
    for (order, d) in orders.iter().enumerate() {
        if d.len() < 4 {
            return ConditionCheck {
                passed: false,
                witness: None,
                detail: format!("only {} samples of difference order {order}", d.len()),
            };
        }
        let sup = |s: &[f64]| {
            s.iter()
                .enumerate()
                .fold((0.0f64, 0usize), |acc, (i, v)| if v.abs() > acc.0 { (v.abs(), i) } else { acc })
        };
        let (half_sup, _) = sup(&d[..d.len() / 2]);
        let (full_sup, at) = sup(d);
        if !full_sup.is_finite() || full_sup > (1.0 + SUP_GROWTH_TOL) * half_sup + 1e-12 {
            return ConditionCheck {
                passed: false,
                witness: Some(at + 1),
                detail: format!(
                    "difference order {order}: sup grows from {half_sup:e} to {full_sup:e}"
                ),
            };
        }
    }
    ConditionCheck {
        passed: true,
        witness: None,
        detail: format!("differences up to order {} bounded", orders.len() - 1),
    }
}

fn check_summable(d: &[f64], order: usize) -> ConditionCheck {
    if d.len() < 4 {
        return ConditionCheck {
            passed: false,
            witness: None,
            detail: format!("only {} samples of difference order {order}", d.len()),
        };
    }
    let total: f64 = d.iter().map(|v| v.abs()).sum();
    let tail: f64 = d[d.len() / 2..].iter().map(|v| v.abs()).sum();
    if total == 0.0 || tail <= TAIL_SHARE_TOL * total {
        ConditionCheck {
            passed: true,
            witness: None,
            detail: format!("sum |diff^{order}| = {total:e}, tail {tail:e}"),
        }
    } else {
        ConditionCheck {
            passed: false,
            witness: Some(d.len() / 2 + 1),
            detail: format!(
                "sum |diff^{order}| not settling: tail {tail:e} of total {total:e}"
            ),
        }
    }
}
