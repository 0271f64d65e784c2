//! `dtm`: solve the shipped Laplace models or a custom boundary set and
//! report spectra, residuals and convergence.
//!
//! Exit status: 0 when every check passes, 2 when a threshold is violated,
//! 1 on configuration or I/O errors.

mod config;
mod run;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dtm_core::{DtmError, InferenceOptions};

use config::{FileConfig, OutputFormat, Overrides, RunConfig};

const SNAP_ENV: &str = "DTM_SEED_SNAP_DENOM";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Dtm(#[from] DtmError),
}

#[derive(Parser)]
#[command(
    name = "dtm",
    version,
    about = "Exact differential-transform solver for Laplace problems on (0,pi)^2"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve a model and report residuals against its boundary data.
    Solve(SolveArgs),
    /// Print the solved spectrum only.
    Spectrum(ModelArgs),
    /// Check all four shipped models at their default orders.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct ModelArgs {
    /// Shipped model, 1 to 4.
    #[arg(long, value_name = "K")]
    example: Option<String>,
    /// JSON config file; flags given here override its values.
    #[arg(long, value_name = "FILE")]
    config: Option<PathBuf>,
    /// Truncation order N (entries with m + n <= N).
    #[arg(long, value_name = "N")]
    order: Option<usize>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
    /// Write output here instead of stdout.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    model: ModelArgs,
    /// Closed-form comparison grid, e.g. 21x21.
    #[arg(long, value_name = "KxK")]
    grid: Option<String>,
    /// Also solve at these orders and tabulate the errors.
    #[arg(long, value_name = "a,b,c", value_delimiter = ',')]
    convergence_orders: Option<Vec<usize>>,
    /// Include the spectrum in the output.
    #[arg(long)]
    emit_spectrum: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value = "pretty")]
    format: OutputFormat,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

fn inference_options() -> Result<InferenceOptions, CliError> {
    let mut opts = InferenceOptions::default();
    if let Ok(raw) = std::env::var(SNAP_ENV) {
        opts.snap_denominator = raw
            .trim()
            .parse::<u64>()
            .ok()
            .filter(|&d| d >= 1)
            .ok_or_else(|| CliError::Config(format!("{SNAP_ENV}: expected a positive integer, got {raw:?}")))?;
    }
    Ok(opts)
}

fn load(args: ModelArgs, extra: Option<(Option<String>, Option<Vec<usize>>, bool)>) -> Result<RunConfig, CliError> {
    let file = match &args.config {
        Some(path) => FileConfig::load(path)?,
        None => FileConfig::default(),
    };
    let (grid, convergence_orders, emit_spectrum) = extra.unwrap_or_default();
    config::build(
        file,
        Overrides {
            example: args.example,
            order: args.order,
            format: args.format,
            grid,
            emit_spectrum,
            convergence_orders,
            out: args.out,
        },
    )
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Io {
            path: path.clone(),
            source: e,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<bool, CliError> {
    let inference = inference_options()?;
    let (outcome, out) = match cli.command {
        Command::Solve(a) => {
            let cfg = load(a.model, Some((a.grid, a.convergence_orders, a.emit_spectrum)))?;
            (run::solve(&cfg, &inference)?, cfg.out)
        }
        Command::Spectrum(a) => {
            let cfg = load(a, None)?;
            (run::spectrum(&cfg, &inference)?, cfg.out)
        }
        Command::Verify(a) => (run::verify(a.format, &inference)?, a.out),
    };
    emit(&outcome.text, out.as_ref())?;
    Ok(outcome.passed)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match execute(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
