use std::collections::BTreeSet;
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::Path;
use std::time::Instant;

use log::{info, warn};
use lrk_qfi::asymptotics::{fit_polylog, fit_power, kernel_log_integral, predict_delta_scaling, FitModel};
use lrk_qfi::oracle::{run_oracle_trials, TrialConfig};
use lrk_qfi::{qfi_optimal, qfi_uncontrolled, ChainParams, Channel, ProbeSpec};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::parse::{check_sizes, parse_kernel, parse_sizes};
use crate::record::{fmt_real, read_csv, write_csv, write_json, RunRecord, SCHEMA_VERSION};
use crate::{FitArgs, Format, KernelArgs, Model, OracleArgs, OutputArgs, PredictArgs, SweepArgs, ValidateArgs};

/// Poly-log fits over a narrower N range are poorly identified.
const MIN_POLYLOG_SPAN: f64 = 20.0;

/// Writes the whole buffer at once so a failed run leaves no partial file.
fn emit(out: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    match out {
        Some(path) => File::create(path)
            .and_then(|mut f| f.write_all(bytes))
            .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout()
            .lock()
            .write_all(bytes)
            .map_err(|e| CliError::io(format!("cannot write stdout: {e}"))),
    }
}

fn kernel_of(k: &KernelArgs) -> CliResult<lrk_qfi::DecayKernel> {
    parse_kernel(&k.kernel, k.alpha, k.regularity_order)
}

pub fn sweep(a: &SweepArgs) -> CliResult<()> {
    let channel: Channel = a
        .channel
        .parse()
        .map_err(|e: lrk_qfi::Error| CliError::invalid(format!("channel: {e}")))?;
    let sizes = parse_sizes(&a.n)?;
    let kernel = kernel_of(&a.kernel)?;
    let probe = ProbeSpec::new(channel, a.t).map_err(|e| CliError::invalid(format!("T: {e}")))?;
    // Validate every size up front so no work is wasted on a bad spec.
    let params: Vec<ChainParams> = sizes
        .iter()
        .map(|&n| ChainParams::new(a.j, a.mu, a.delta, n, kernel.clone()))
        .collect::<Result<_, _>>()?;

    let records: Vec<RunRecord> = params
        .par_iter()
        .map(|p| {
            let start = Instant::now();
            let r = if a.controlled {
                qfi_optimal(p, &probe)?
            } else {
                qfi_uncontrolled(p, &probe)?
            };
            Ok(RunRecord {
                schema_version: SCHEMA_VERSION,
                n: p.n_sites(),
                alpha: kernel.alpha(),
                kernel: kernel.kind().to_string(),
                channel: channel.as_str().to_string(),
                j: a.j,
                mu: a.mu,
                delta: a.delta,
                t: a.t,
                controlled: a.controlled,
                qfi: r.value,
                gamma: r.gamma,
                wall_time_ms: start.elapsed().as_millis() as u64,
            })
        })
        .collect::<CliResult<_>>()?;
    for r in &records {
        info!("N = {}: qfi {} in {} ms", r.n, fmt_real(r.qfi), r.wall_time_ms);
    }
    write_records(&a.output, &records)
}

fn write_records<T: Serialize>(o: &OutputArgs, records: &[T]) -> CliResult<()>
where
    T: CsvRow,
{
    let mut buf = Vec::new();
    match o.format {
        Format::Csv => T::write_csv(&mut buf, records)?,
        Format::Json => write_json(&mut buf, records)?,
    }
    emit(o.out.as_deref(), &buf)
}

trait CsvRow: Sized {
    fn write_csv(buf: &mut Vec<u8>, rows: &[Self]) -> CliResult<()>;
}

impl CsvRow for RunRecord {
    fn write_csv(buf: &mut Vec<u8>, rows: &[Self]) -> CliResult<()> {
        write_csv(buf, rows)
    }
}

fn write_plain_csv(buf: &mut Vec<u8>, header: &[&str], rows: impl Iterator<Item = Vec<String>>) -> CliResult<()> {
    let mut w = csv::Writer::from_writer(buf);
    let io = |e: csv::Error| CliError::io(format!("write failed: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::io(format!("write failed: {e}")))
}

pub fn fit(a: &FitArgs) -> CliResult<()> {
    let file = File::open(&a.input)
        .map_err(|e| CliError::io(format!("cannot read {}: {e}", a.input.display())))?;
    let records = read_csv(BufReader::new(file))?;
    let distinct = |f: fn(&RunRecord) -> String| records.iter().map(f).collect::<BTreeSet<_>>().len();
    if distinct(|r| format!("{}/{}/{}", r.channel, r.controlled, r.kernel)) > 1 {
        warn!("input mixes channels, kernels or control modes; fitting all rows together");
    }
    let report = match a.model {
        Model::Power => {
            let pts: Vec<(f64, f64)> = records.iter().map(|r| (r.n as f64, r.qfi)).collect();
            let f = fit_power(&pts)?;
            let FitModel::PowerLaw { exponent, prefactor } = f.model else {
                unreachable!()
            };
            json!({
                "model": "power",
                "parameters": {"e": exponent, "D": prefactor},
                "residual": f.residual,
                "n_points": f.n_points,
            })
        }
        Model::Polylog => {
            if let (Some(lo), Some(hi)) = (
                records.iter().map(|r| r.n).min(),
                records.iter().map(|r| r.n).max(),
            ) {
                if (hi as f64) < MIN_POLYLOG_SPAN * lo as f64 {
                    warn!("max(N)/min(N) = {:.2} < {MIN_POLYLOG_SPAN}; A, c and B are poorly separated", hi as f64 / lo as f64);
                }
            }
            let pts: Vec<(f64, f64)> = records
                .iter()
                .map(|r| {
                    let n = r.n as f64;
                    (n, r.qfi / (n * n * r.t * r.t))
                })
                .collect();
            let f = fit_polylog(&pts)?;
            let FitModel::PolyLog { a, c, b } = f.model else {
                unreachable!()
            };
            json!({
                "model": "polylog",
                "parameters": {"A": a, "c": c, "B": b},
                "residual": f.residual,
                "n_points": f.n_points,
                "normalization": "qfi/(N^2*T^2)",
            })
        }
    };
    let mut buf = Vec::new();
    write_json(&mut buf, &report)?;
    emit(a.out.as_deref(), &buf)
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct OracleConfigFile {
    seed: Option<u64>,
    trials: Option<usize>,
    #[serde(rename = "N_list")]
    n_list: Option<Vec<usize>>,
    tol: Option<f64>,
    times: Option<Vec<f64>>,
}

/// Flags override the config file, which overrides the defaults.
fn oracle_config(a: &OracleArgs) -> CliResult<TrialConfig> {
    let file = match &a.config {
        Some(path) => {
            let f = File::open(path)
                .map_err(|e| CliError::io(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_reader(BufReader::new(f))
                .map_err(|e| CliError::invalid(format!("config {}: {e}", path.display())))?
        }
        None => OracleConfigFile::default(),
    };
    let mut cfg = TrialConfig::default();
    cfg.seed = a.seed.or(file.seed).unwrap_or(cfg.seed);
    cfg.trials = a.trials.or(file.trials).unwrap_or(cfg.trials);
    cfg.tolerance = a.tol.or(file.tol).unwrap_or(cfg.tolerance);
    cfg.times = file.times.unwrap_or(cfg.times);
    cfg.n_list = match (&a.n, file.n_list) {
        (Some(s), _) => parse_sizes(s)?,
        (None, Some(v)) => {
            check_sizes(&v)?;
            v
        }
        (None, None) => cfg.n_list,
    };
    if cfg.trials == 0 {
        return Err(CliError::invalid("trials must be positive"));
    }
    Ok(cfg)
}

pub fn oracle_check(a: &OracleArgs) -> CliResult<()> {
    let cfg = oracle_config(a)?;
    let report = run_oracle_trials(&cfg)?;
    let mut buf = Vec::new();
    write_json(&mut buf, &report)?;
    emit(a.out.as_deref(), &buf)?;
    if report.max_rel_err > cfg.tolerance {
        return Err(CliError::tolerance(format!(
            "max relative error {:e} exceeds tolerance {:e} in {} of {} comparisons",
            report.max_rel_err,
            cfg.tolerance,
            report.failures.len(),
            report.trials
        )));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct PredictionRow {
    #[serde(rename = "N")]
    n: usize,
    alpha: Option<f64>,
    kernel: String,
    log_integral: f64,
    prediction: f64,
}

impl CsvRow for PredictionRow {
    fn write_csv(buf: &mut Vec<u8>, rows: &[Self]) -> CliResult<()> {
        write_plain_csv(
            buf,
            &["N", "alpha", "kernel", "log_integral", "prediction"],
            rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.alpha.map(fmt_real).unwrap_or_default(),
                    r.kernel.clone(),
                    fmt_real(r.log_integral),
                    fmt_real(r.prediction),
                ]
            }),
        )
    }
}

pub fn predict(a: &PredictArgs) -> CliResult<()> {
    let sizes = parse_sizes(&a.n)?;
    let kernel = kernel_of(&a.kernel)?;
    let rows: Vec<PredictionRow> = sizes
        .iter()
        .map(|&n| {
            Ok(PredictionRow {
                n,
                alpha: kernel.alpha(),
                kernel: kernel.kind().to_string(),
                log_integral: kernel_log_integral(&kernel, n)?,
                prediction: predict_delta_scaling(&kernel, n)?,
            })
        })
        .collect::<CliResult<_>>()?;
    write_records(&a.output, &rows)
}

#[derive(Debug, Serialize)]
struct KernelRow {
    #[serde(rename = "N")]
    n: usize,
    kernel: String,
    passed: bool,
    report: lrk_qfi::KernelReport,
}

impl CsvRow for KernelRow {
    fn write_csv(buf: &mut Vec<u8>, rows: &[Self]) -> CliResult<()> {
        write_plain_csv(
            buf,
            &["N", "kernel", "regularity_order", "passed", "bounded_derivatives", "integrable_top_derivative"],
            rows.iter().map(|r| {
                vec![
                    r.n.to_string(),
                    r.kernel.clone(),
                    r.report.regularity_order.to_string(),
                    r.passed.to_string(),
                    r.report.bounded_derivatives.passed.to_string(),
                    r.report.integrable_top_derivative.passed.to_string(),
                ]
            }),
        )
    }
}

pub fn validate_kernel(a: &ValidateArgs) -> CliResult<()> {
    let sizes = parse_sizes(&a.n)?;
    let kernel = kernel_of(&a.kernel)?;
    let rows: Vec<KernelRow> = sizes
        .iter()
        .map(|&n| {
            let report = validate_kernel_checked(&kernel, n)?;
            Ok(KernelRow {
                n,
                kernel: kernel.label(),
                passed: report.passed(),
                report,
            })
        })
        .collect::<CliResult<_>>()?;
    write_records(&a.output, &rows)?;
    if let Some(bad) = rows.iter().find(|r| !r.passed) {
        return Err(CliError::tolerance(format!(
            "kernel {} fails its regularity conditions at N = {}",
            bad.kernel, bad.n
        )));
    }
    Ok(())
}

fn validate_kernel_checked(kernel: &lrk_qfi::DecayKernel, n: usize) -> CliResult<lrk_qfi::KernelReport> {
    if let Some(len) = kernel.max_separation() {
        if len < n / 2 {
            return Err(CliError::invalid(format!(
                "kernel table has {len} entries but N = {n} needs at least {}",
                n / 2
            )));
        }
    }
    Ok(lrk_qfi::validate_kernel(kernel, n))
}
