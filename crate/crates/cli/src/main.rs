mod commands;
mod error;
mod parse;
mod record;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "lrk-qfi", version, about = "QFI of the long-range Kitaev chain")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Power,
    Polylog,
}

#[derive(Debug, Clone, Args)]
pub struct KernelArgs {
    /// power, log or table:<path>
    #[arg(long, default_value = "power")]
    pub kernel: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub alpha: f64,
    /// Regularity order claimed for a tabulated kernel.
    #[arg(long, default_value_t = 1)]
    pub regularity_order: u32,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// J, mu or delta
    #[arg(long, default_value = "delta")]
    pub channel: String,
    #[command(flatten)]
    pub kernel: KernelArgs,
    /// Comma list or inclusive a:b:step.
    #[arg(long = "N")]
    pub n: String,
    #[arg(long = "J", default_value_t = 1.0, allow_negative_numbers = true)]
    pub j: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub mu: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub delta: f64,
    #[arg(long = "T", default_value_t = 1.0, allow_negative_numbers = true)]
    pub t: f64,
    /// Optimal-control bound instead of the uncontrolled QFI.
    #[arg(long)]
    pub controlled: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// CSV written by `sweep`.
    #[arg(long = "in")]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "power")]
    pub model: Model,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    /// JSON file with any of seed, trials, N_list, tol, times.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub trials: Option<usize>,
    #[arg(long = "N")]
    pub n: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long = "N")]
    pub n: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub kernel: KernelArgs,
    #[arg(long = "N")]
    pub n: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// QFI over a list of lattice sizes.
    Sweep(SweepArgs),
    /// Fit a scaling law to a sweep CSV.
    Fit(FitArgs),
    /// Compare momentum-space QFIs with exact diagonalization.
    OracleCheck(OracleArgs),
    /// Closed-form Δ scaling surrogate.
    Predict(PredictArgs),
    /// Check a kernel's regularity conditions.
    ValidateKernel(ValidateArgs),
}

fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("LRK_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::invalid(format!("LRK_THREADS must be a positive integer, got '{raw}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::invalid(format!("cannot configure thread pool: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    configure_threads()?;
    match cli.command {
        Command::Sweep(a) => commands::sweep(&a),
        Command::Fit(a) => commands::fit(&a),
        Command::OracleCheck(a) => commands::oracle_check(&a),
        Command::Predict(a) => commands::predict(&a),
        Command::ValidateKernel(a) => commands::validate_kernel(&a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { error::EXIT_INVALID } else { 0 };
            e.print().ok();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
