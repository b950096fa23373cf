//! `dualqr` command-line tool.
//!
//! Exit codes: 0 success, 1 usage or I/O problem, 2 rank-deficient standard
//! part, 3 existence condition violated, 4 malformed input file. Failures
//! print one JSON object on stderr.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dualqr::Error;
use serde_json::json;

#[derive(Parser)]
#[command(name = "dualqr", version, about = "QR decompositions of dual matrices and their applications")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a dual matrix read from a .dmx file
    Decompose(DecomposeArgs),
    /// Simulate wave fields or identify standing and traveling components
    #[command(subcommand)]
    Waves(WavesCommand),
    /// Time the factorizations on seeded random inputs
    Bench(BenchArgs),
    /// Dual Moore-Penrose inverse of a .dmx matrix
    Dmpgi(DmpgiArgs),
    /// Perturbation table of the thin Q factor
    Perturb(PerturbArgs),
}

#[derive(Args)]
pub struct DecomposeArgs {
    /// dqr, dqrcp, tdqr, tdqrcp or rdqrcp
    #[arg(long)]
    pub algo: String,
    #[arg(long)]
    pub input: PathBuf,
    /// Output prefix; writes <prefix>.Q.dmx, .R.dmx, .perm.csv, .report.json
    #[arg(long)]
    pub out: PathBuf,
    /// Target rank (rdqrcp only)
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long, default_value_t = dualqr::real::DEFAULT_OVERSAMPLING)]
    pub oversample: usize,
    #[arg(long, env = "DUALQR_SEED", default_value_t = 0)]
    pub seed: u64,
}

#[derive(Subcommand)]
enum WavesCommand {
    /// Write the dual series (field and its time derivative) of a wave field
    Simulate(SimulateArgs),
    /// Classify the leading components of a dual series
    Identify(IdentifyArgs),
}

#[derive(Args)]
pub struct SimulateArgs {
    /// standing, traveling or combo
    #[arg(long, conflicts_with = "params")]
    pub preset: Option<String>,
    /// JSON file with explicit wave parameters
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// Noise standard deviation for presets
    #[arg(long, default_value_t = dualqr::waves::PRESET_NOISE)]
    pub noise: f64,
    #[arg(long, env = "DUALQR_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Output .dmx; the parameters go to <out>.json alongside it
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct IdentifyArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Grid as HxW; defaults to the grid in <input>.json
    #[arg(long)]
    pub grid: Option<String>,
    #[arg(long, default_value_t = 8)]
    pub k: usize,
    #[arg(long, default_value_t = 0.6)]
    pub theta: f64,
    #[arg(long, default_value_t = 0.1)]
    pub eta: f64,
    #[arg(long, default_value_t = 0.02)]
    pub noise_floor: f64,
    /// auto, exact or sketch
    #[arg(long, default_value = "auto")]
    pub backend: String,
    #[arg(long, env = "DUALQR_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Directory for report.json and the per-component grid CSVs
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct BenchArgs {
    /// Comma-separated algorithm names
    #[arg(long, default_value = "dqr,dqrcp,tdqr,tdqrcp")]
    pub algos: String,
    /// Comma-separated MxN or MxN+K
    #[arg(long)]
    pub sizes: String,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    #[arg(long, env = "DUALQR_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct DmpgiArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Output prefix; writes <prefix>.dmx and <prefix>.penrose.json
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args)]
pub struct PerturbArgs {
    /// Comma-separated scales
    #[arg(long, value_delimiter = ',', default_values_t = vec![1e-1, 1e-2, 1e-5, 1e-8])]
    pub tau: Vec<f64>,
    /// Dual matrix whose standard part is A_s and infinitesimal part the
    /// perturbation direction; defaults to the built-in 8x5 example
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// CSV output; stdout when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn error_kind(e: &Error) -> (&'static str, u8) {
    match e {
        Error::RankDeficient { .. } | Error::DegenerateDiagonal { .. } | Error::SingularStandardPart { .. } => {
            ("rank_deficient", 2)
        }
        Error::ExistenceConditionViolated { .. } => ("existence_condition_violated", 3),
        Error::Parse { .. } => ("parse_error", 4),
        Error::Io(_) => ("io_error", 1),
        _ => ("invalid_input", 1),
    }
}

fn report_error(e: &Error) -> ExitCode {
    let (kind, code) = error_kind(e);
    let mut obj = json!({ "error": kind, "message": e.to_string(), "exit_code": code });
    match e {
        Error::RankDeficient { rank, required } => {
            obj["rank"] = json!(rank);
            obj["required"] = json!(required);
        }
        Error::ExistenceConditionViolated { residual, tolerance } => {
            obj["residual"] = json!(residual);
            obj["tolerance"] = json!(tolerance);
        }
        Error::Parse { line, column, .. } => {
            obj["line"] = json!(line);
            obj["column"] = json!(column);
        }
        _ => {}
    }
    eprintln!("{obj}");
    ExitCode::from(code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Decompose(a) => commands::decompose(&a),
        Command::Waves(WavesCommand::Simulate(a)) => commands::simulate(&a),
        Command::Waves(WavesCommand::Identify(a)) => commands::identify(&a),
        Command::Bench(a) => commands::bench(&a),
        Command::Dmpgi(a) => commands::dmpgi(&a),
        Command::Perturb(a) => commands::perturb(&a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => report_error(&e),
    }
}
