//! Flag value parsing that clap cannot do on its own.

use std::fs;
use std::path::Path;

use lrk_qfi::DecayKernel;

use crate::error::{CliError, CliResult};

/// `4,8,16` or inclusive `a:b:step`.
pub fn parse_sizes(s: &str) -> CliResult<Vec<usize>> {
    let bad = |detail: &str| CliError::invalid(format!("N_values: {detail} in '{s}'"));
    let s = s.trim();
    let values: Vec<usize> = if s.contains(':') {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(bad("range must be a:b:step"));
        }
        let nums: Vec<usize> = parts
            .iter()
            .map(|p| p.parse::<usize>().map_err(|_| bad("not an unsigned integer")))
            .collect::<CliResult<_>>()?;
        let (a, b, step) = (nums[0], nums[1], nums[2]);
        if step == 0 {
            return Err(bad("step must be positive"));
        }
        if a > b {
            return Err(bad("range start exceeds end"));
        }
        (a..=b).step_by(step).collect()
    } else {
        s.split(',')
            .map(|p| p.trim().parse::<usize>().map_err(|_| bad("not an unsigned integer")))
            .collect::<CliResult<_>>()?
    };
    check_sizes(&values)?;
    Ok(values)
}

pub fn check_sizes(values: &[usize]) -> CliResult<()> {
    if values.is_empty() {
        return Err(CliError::invalid("N_values must not be empty"));
    }
    if let Some(n) = values.iter().find(|&&n| n < 2 || n % 2 != 0) {
        return Err(CliError::invalid(format!("N_values must be even and >= 2, got {n}")));
    }
    if values.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CliError::invalid("N_values must be strictly increasing"));
    }
    Ok(())
}

/// Table files hold one weight per separation, whitespace or comma
/// separated, with `#` comments.
pub fn read_table(path: &Path) -> CliResult<Vec<f64>> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("cannot read kernel table {}: {e}", path.display())))?;
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for tok in line.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
            let v = tok.parse::<f64>().map_err(|_| {
                CliError::invalid(format!(
                    "kernel table {}:{}: '{tok}' is not a number",
                    path.display(),
                    lineno + 1
                ))
            })?;
            out.push(v);
        }
    }
    Ok(out)
}

pub fn parse_kernel(spec: &str, alpha: f64, regularity_order: u32) -> CliResult<DecayKernel> {
    let kernel = match spec {
        "power" => DecayKernel::power_law(alpha)?,
        "log" => DecayKernel::log_law(alpha)?,
        other => match other.strip_prefix("table:") {
            Some(path) if !path.is_empty() => {
                DecayKernel::table(read_table(Path::new(path))?, regularity_order)?
            }
            _ => {
                return Err(CliError::invalid(format!(
                    "kernel: expected power, log or table:<path>, got '{spec}'"
                )))
            }
        },
    };
    Ok(kernel)
}
