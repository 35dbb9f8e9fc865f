//! Randomised comparison of the momentum-space QFI against exact
//! diagonalization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fock::Sector;
use super::generator::Eigensystem;
use super::hamiltonian::{build_dtheta_h_with, build_hamiltonian_with, BuildOptions, Representation};
use crate::chain::{dispersion, make_grid, ChainParams, Channel, DecayKernel, KernelKind};
use crate::error::{Error, Result};
use crate::qfi::{qfi_uncontrolled, ProbeSpec};

/// Dispersion floor below which a random instance is redrawn.
pub const MIN_GAP: f64 = 1e-6;
const COUPLING_RANGE: f64 = 2.0;
const ALPHA_RANGE: f64 = 3.0;
const MAX_REDRAWS: usize = 10_000;
const ZERO_QFI_SCALE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialConfig {
    pub seed: u64,
    /// Random coupling sets drawn per lattice size.
    pub trials: usize,
    pub n_list: Vec<usize>,
    pub times: Vec<f64>,
    pub tolerance: f64,
}

impl Default for TrialConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_601,
            trials: 50,
            n_list: vec![2, 4, 6, 8],
            times: vec![0.3, 1.0, 2.0],
            tolerance: 1e-8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub params: ChainParams,
    pub channel: Channel,
    pub time: f64,
    pub exact: f64,
    pub formula: f64,
    pub rel_err: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    /// Number of (instance, family, channel, time) comparisons.
    pub trials: usize,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub failures: Vec<TrialOutcome>,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy)]
struct Draw {
    n: usize,
    j: f64,
    mu: f64,
    delta: f64,
    alpha: f64,
}

impl Draw {
    fn params(&self, kind: KernelKind) -> Result<ChainParams> {
        let kernel = match kind {
            KernelKind::LogLaw => DecayKernel::log_law(self.alpha)?,
            _ => DecayKernel::power_law(self.alpha)?,
        };
        ChainParams::new(self.j, self.mu, self.delta, self.n, kernel)
    }
}

fn min_gap(p: &ChainParams) -> Result<f64> {
    let grid = make_grid(p.n_sites())?;
    grid.momenta()
        .iter()
        .map(|&k| dispersion(k, p))
        .try_fold(f64::INFINITY, |m, e| Ok(m.min(e?)))
}

fn draw_instances(cfg: &TrialConfig) -> Result<Vec<Draw>> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut out = Vec::with_capacity(cfg.trials * cfg.n_list.len());
    for &n in &cfg.n_list {
        for _ in 0..cfg.trials {
            let mut redraws = 0;
            loop {
                let d = Draw {
                    n,
                    j: rng.random_range(-COUPLING_RANGE..=COUPLING_RANGE),
                    mu: rng.random_range(-COUPLING_RANGE..=COUPLING_RANGE),
                    delta: rng.random_range(-COUPLING_RANGE..=COUPLING_RANGE),
                    alpha: rng.random_range(0.0..=ALPHA_RANGE),
                };
                let gap = min_gap(&d.params(KernelKind::PowerLaw)?)?
                    .min(min_gap(&d.params(KernelKind::LogLaw)?)?);
                if gap > MIN_GAP {
                    out.push(d);
                    break;
                }
                redraws += 1;
                if redraws > MAX_REDRAWS {
                    return Err(Error::numeric(format!(
                        "could not draw a gapped instance at N = {n}"
                    )));
                }
            }
        }
    }
    Ok(out)
}

fn evaluate(p: &ChainParams, times: &[f64]) -> Result<Vec<TrialOutcome>> {
    let opts = BuildOptions::new(Representation::FermionFock).sector(Sector::Even);
    let eig = Eigensystem::new(&build_hamiltonian_with(p, &opts)?)?;
    let mut out = Vec::with_capacity(3 * times.len());
    for channel in Channel::ALL {
        let dh = build_dtheta_h_with(p, channel, &opts)?;
        for &time in times {
            let probe = ProbeSpec::new(channel, time)?;
            let exact = eig.generator(&dh, time)?.qfi;
            let formula = qfi_uncontrolled(p, &probe)?.value;
            // Analytically vanishing QFIs (e.g. cos k = 0 on every mode) are
            // compared on the Heisenberg scale (NT)² instead.
            let scale = ZERO_QFI_SCALE * (p.n_sites() as f64 * time).powi(2);
            let rel_err = if exact == formula {
                0.0
            } else {
                (formula - exact).abs() / exact.abs().max(scale).max(f64::MIN_POSITIVE)
            };
            out.push(TrialOutcome {
                params: p.clone(),
                channel,
                time,
                exact,
                formula,
                rel_err,
            });
        }
    }
    Ok(out)
}

/// Runs every seeded instance for both kernel families, all channels and
/// all times. Instances are drawn sequentially and evaluated in parallel;
/// results are collected in draw order, so the report is deterministic.
pub fn run_oracle_trials(cfg: &TrialConfig) -> Result<OracleReport> {
    if cfg.times.iter().any(|t| !(t.is_finite() && *t >= 0.0)) {
        return Err(Error::domain("oracle trial times must be finite and >= 0"));
    }
    if !(cfg.tolerance.is_finite() && cfg.tolerance > 0.0) {
        return Err(Error::domain("oracle tolerance must be > 0"));
    }
    for &n in &cfg.n_list {
        super::fock::check_oracle_sites(n, super::fock::MAX_SITES)?;
    }
    let draws = draw_instances(cfg)?;
    let jobs: Vec<ChainParams> = draws
        .iter()
        .flat_map(|d| [d.params(KernelKind::PowerLaw), d.params(KernelKind::LogLaw)])
        .collect::<Result<_>>()?;
    let results: Vec<Vec<TrialOutcome>> = jobs
        .par_iter()
        .map(|p| evaluate(p, &cfg.times))
        .collect::<Result<_>>()?;
    let outcomes: Vec<TrialOutcome> = results.into_iter().flatten().collect();
    let max_rel_err = outcomes.iter().fold(0.0f64, |m, o| m.max(o.rel_err));
    let failures = outcomes
        .iter()
        .filter(|o| !(o.rel_err <= cfg.tolerance))
        .cloned()
        .collect();
    Ok(OracleReport {
        trials: outcomes.len(),
        max_rel_err,
        tolerance: cfg.tolerance,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_run_passes_and_is_deterministic() {
        let cfg = TrialConfig {
            trials: 4,
            n_list: vec![2, 4],
            ..TrialConfig::default()
        };
        let a = run_oracle_trials(&cfg).unwrap();
        assert_eq!(a.trials, 4 * 2 * 2 * 3 * 3);
        assert!(a.passed(), "{:?}", a.failures.first());
        let b = run_oracle_trials(&cfg).unwrap();
        assert_eq!(a.max_rel_err, b.max_rel_err);
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = TrialConfig {
            n_list: vec![3],
            ..TrialConfig::default()
        };
        assert!(run_oracle_trials(&cfg).is_err());
        let cfg = TrialConfig {
            tolerance: 0.0,
            ..TrialConfig::default()
        };
        assert!(run_oracle_trials(&cfg).is_err());
    }
}
