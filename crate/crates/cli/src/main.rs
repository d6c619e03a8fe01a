//! `rgg`: sample noisy geometric graphs, compute signed statistics, run
//! detection experiments and sweeps, evaluate analytic quantities.
//!
//! Exit codes: 0 success, 1 invalid input, 2 runtime failure, 3 failed
//! verification checks. Errors go to stderr as one JSON line.

mod commands;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rgg_core::mc::TestKind;
use rgg_core::{Error, SamplerMode, StatisticKind};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "rgg", version, about = "Latent geometry detection in noisy random geometric graphs")]
struct Cli {
    /// Worker threads for Monte Carlo replicates
    #[arg(long, global = true, env = "RGG_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw one graph and write it as JSON
    Sample(SampleArgs),
    /// Evaluate a signed statistic on a stored graph
    Stat(StatArgs),
    /// Run one detection experiment and print the record as JSON
    Detect(DetectArgs),
    /// Run a parameter sweep from a JSON config and write CSV
    Sweep(SweepArgs),
    /// Print an analytic quantity as JSON
    Theory(TheoryArgs),
    /// Run the invariant checks
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
struct ModelArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    /// Latent dimension (ignored by the er mode)
    #[arg(long, default_value_t = 1)]
    d: usize,
    /// Noise level: probability that an edge follows the geometry
    #[arg(long, default_value_t = 1.0)]
    q: f64,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long, value_parser = parse_mode)]
    mode: SamplerMode,
    #[arg(long)]
    seed: u64,
    /// Graph JSON destination; stdout when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write the latent positions as JSON
    #[arg(long)]
    latent_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct StatArgs {
    /// Graph JSON written by `sample`
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_parser = parse_stat)]
    stat: StatisticKind,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Centering probability; defaults to the p stored in the graph file
    #[arg(long)]
    p: Option<f64>,
}

#[derive(Debug, Args)]
struct DetectArgs {
    #[command(flatten)]
    model: ModelArgs,
    #[arg(long)]
    reps: usize,
    #[arg(long)]
    seed: u64,
    #[arg(long, default_value = "half-mean-threshold", value_parser = parse_test)]
    test: TestKind,
    /// Alternative model; the null is always er
    #[arg(long, default_value = "soft-sphere", value_parser = parse_mode)]
    mode: SamplerMode,
    #[arg(long, default_value = "triangle", value_parser = parse_stat)]
    stat: StatisticKind,
    #[arg(long, default_value_t = 3)]
    k: usize,
    /// Report wall-clock time in the record
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Override the config's start index
    #[arg(long)]
    start_index: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Quantity {
    Gamma,
    Eta,
    HalfMoments,
    Logdet,
    TvBounds,
    MeanBounds,
    Thresholds,
    Phase,
}

#[derive(Debug, Args)]
struct TheoryArgs {
    #[arg(long, value_enum)]
    quantity: Quantity,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long)]
    seed: u64,
}

fn parse_mode(s: &str) -> Result<SamplerMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_stat(s: &str) -> Result<StatisticKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_test(s: &str) -> Result<TestKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
enum Failure {
    Invalid(String, String),
    Runtime(String, String),
    Verify(usize),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let kind = e.kind().to_string();
        match e {
            Error::Convergence { .. } | Error::RootFinding(_) | Error::Io(_) => Failure::Runtime(kind, e.to_string()),
            _ => Failure::Invalid(kind, e.to_string()),
        }
    }
}

fn report(kind: &str, message: &str) {
    eprintln!("{}", serde_json::json!({ "error": kind, "message": message }));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            report("usage", first);
            return ExitCode::from(1);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Invalid(kind, msg)) => {
            report(&kind, &msg);
            ExitCode::from(1)
        }
        Err(Failure::Runtime(kind, msg)) => {
            report(&kind, &msg);
            ExitCode::from(2)
        }
        Err(Failure::Verify(failed)) => {
            report("verify", &format!("{failed} check(s) failed"));
            ExitCode::from(3)
        }
    }
}
