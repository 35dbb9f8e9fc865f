use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Family tag of a [`DecayKernel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum KernelKind {
    PowerLaw,
    LogLaw,
    CustomTable,
}

impl KernelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelKind::PowerLaw => "power",
            KernelKind::LogLaw => "log",
            KernelKind::CustomTable => "table",
        }
    }
}

impl fmt::Display for KernelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Pairing weight `κ_l` as a function of the separation `l ≥ 1`.
///
/// Every kernel is normalised so that `κ_1 = 1`. The analytic families carry
/// regularity order `Q = 1`; tables carry whatever order the caller declares.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum DecayKernel {
    /// `κ_l = l^{-α}`.
    PowerLaw { alpha: f64 },
    /// `κ_l = (1 + ln l)^{-α}`.
    LogLaw { alpha: f64 },
    /// Tabulated weights, `values[l - 1] = κ_l`.
    CustomTable {
        values: Arc<[f64]>,
        regularity_order: u32,
    },
}

impl DecayKernel {
    pub fn power_law(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(DecayKernel::PowerLaw { alpha })
    }

    pub fn log_law(alpha: f64) -> Result<Self> {
        check_alpha(alpha)?;
        Ok(DecayKernel::LogLaw { alpha })
    }

    /// Builds a tabulated kernel, rescaling so that the first entry is 1.
    pub fn table(values: Vec<f64>, regularity_order: u32) -> Result<Self> {
        let first = *values
            .first()
            .ok_or_else(|| Error::domain("kernel table is empty"))?;
        if let Some((i, v)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::domain(format!(
                "kernel table entry {} is not finite ({v})",
                i + 1
            )));
        }
        if first <= 0.0 {
            return Err(Error::domain(format!(
                "kernel table must start with a positive entry, got {first}"
            )));
        }
        let values: Arc<[f64]> = if first != 1.0 {
            log::info!("rescaling kernel table by 1/{first} so that kappa_1 = 1");
            values.iter().map(|v| v / first).collect()
        } else {
            values.into()
        };
        Ok(DecayKernel::CustomTable {
            values,
            regularity_order,
        })
    }

    pub fn kind(&self) -> KernelKind {
        match self {
            DecayKernel::PowerLaw { .. } => KernelKind::PowerLaw,
            DecayKernel::LogLaw { .. } => KernelKind::LogLaw,
            DecayKernel::CustomTable { .. } => KernelKind::CustomTable,
        }
    }

    /// Decay exponent; `None` for tables.
    pub fn alpha(&self) -> Option<f64> {
        match *self {
            DecayKernel::PowerLaw { alpha } | DecayKernel::LogLaw { alpha } => Some(alpha),
            DecayKernel::CustomTable { .. } => None,
        }
    }

    pub fn regularity_order(&self) -> u32 {
        match self {
            DecayKernel::PowerLaw { .. } | DecayKernel::LogLaw { .. } => 1,
            DecayKernel::CustomTable {
                regularity_order, ..
            } => *regularity_order,
        }
    }

    /// Largest separation the kernel can be evaluated at.
    pub fn max_separation(&self) -> Option<usize> {
        match self {
            DecayKernel::CustomTable { values, .. } => Some(values.len()),
            _ => None,
        }
    }

    /// `κ_l`, see [`kernel_value`].
    pub fn value(&self, l: usize) -> Result<f64> {
        if l < 1 {
            return Err(Error::domain("kernel separation must be >= 1"));
        }
        Ok(match self {
            DecayKernel::PowerLaw { alpha } => (l as f64).powf(-alpha),
            DecayKernel::LogLaw { alpha } => (1.0 + (l as f64).ln()).powf(-alpha),
            DecayKernel::CustomTable { values, .. } => *values.get(l - 1).ok_or_else(|| {
                Error::domain(format!(
                    "kernel table has {} entries, separation {l} requested",
                    values.len()
                ))
            })?,
        })
    }

    /// Continuous extension `κ_x` for real `x ≥ 1`. Tables are linearly
    /// interpolated between integer separations.
    pub fn value_continuous(&self, x: f64) -> Result<f64> {
        if !(x >= 1.0) {
            return Err(Error::domain(format!("kernel argument {x} is below 1")));
        }
        match self {
            DecayKernel::PowerLaw { alpha } => Ok(x.powf(-alpha)),
            DecayKernel::LogLaw { alpha } => Ok((1.0 + x.ln()).powf(-alpha)),
            DecayKernel::CustomTable { values, .. } => {
                let last = values.len() as f64;
                if x > last {
                    return Err(Error::domain(format!(
                        "kernel table has {} entries, x = {x} requested",
                        values.len()
                    )));
                }
                let lo = x.floor();
                let i = lo as usize - 1;
                let t = x - lo;
                if t == 0.0 || i + 1 >= values.len() {
                    Ok(values[i])
                } else {
                    Ok(values[i] * (1.0 - t) + values[i + 1] * t)
                }
            }
        }
    }

    /// Translation-invariant weights `κ̃_l = κ_{min(l, N-l)}` for `l = 1..N-1`
    /// (index `l - 1`).
    pub fn symmetric_weights(&self, n_sites: usize) -> Result<Vec<f64>> {
        let half: Vec<f64> = (1..=n_sites / 2)
            .map(|l| self.value(l))
            .collect::<Result<_>>()?;
        Ok((1..n_sites).map(|l| half[l.min(n_sites - l) - 1]).collect())
    }

    /// Short human-readable label, e.g. `power(0.5)`.
    pub fn label(&self) -> String {
        match self.alpha() {
            Some(a) => format!("{}({a})", self.kind()),
            None => format!("table[{}]", self.max_separation().unwrap_or(0)),
        }
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    if alpha.is_finite() && alpha >= 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "decay exponent must be finite and >= 0, got {alpha}"
        )))
    }
}

/// `κ_{l,α}` for separation `l ≥ 1`.
pub fn kernel_value(kernel: &DecayKernel, l: usize) -> Result<f64> {
    kernel.value(l)
}
