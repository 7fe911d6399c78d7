//! Command-line surface for designing privacy noise over quantized sensor
//! measurements: per-sensor solves, budget sweeps, baseline comparisons,
//! and the built-in reference reproduction. All outputs are plot-ready
//! CSVs plus flat key=value reports, byte-identical across repeated runs.

use clap::{Parser, Subcommand};
use std::fmt;
use std::path::PathBuf;

mod commands;
mod config;
mod output;
mod repro;

use commands::RunContext;
use config::ScenarioConfig;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable or invalid configuration (exit 2).
    Config(String),
    /// A distortion budget below the feasibility bound (exit 3).
    Infeasible(String),
    /// The reference reproduction missed a pinned value (exit 4).
    ReproMismatch(String),
    /// Solver failure other than infeasibility (exit 1).
    Solver(String),
    /// Filesystem failure (exit 1).
    Io(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Infeasible(_) => 3,
            CliError::ReproMismatch(_) => 4,
            CliError::Solver(_) | CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(m)
            | CliError::Infeasible(m)
            | CliError::ReproMismatch(m)
            | CliError::Solver(m)
            | CliError::Io(m) => f.write_str(m),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "privnoise",
    version,
    about = "Design optimal discrete additive noise for private transmission of quantized sensor measurements"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the noise design for every sensor in a config file
    Design {
        /// Scenario config (TOML)
        config: PathBuf,
        /// Output directory (overrides the config's out_dir)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Generator seed (overrides the config's seed)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Sweep distortion budgets and record the privacy-distortion tradeoff
    Sweep {
        config: PathBuf,
        /// Budget value; repeat the flag for several budgets ("inf" allowed)
        #[arg(long = "epsilon", required = true)]
        epsilons: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Compare the solved design against uniform, geometric, and point-mass noise
    Baselines {
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Run the built-in two-sensor reference scenario and check its pinned
    /// distortion values
    Repro {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn context(cfg: Option<&ScenarioConfig>, out: Option<PathBuf>, seed: Option<u64>) -> RunContext {
    let out_dir = out
        .or_else(|| cfg.and_then(|c| c.out_dir.as_ref().map(PathBuf::from)))
        .unwrap_or_else(|| PathBuf::from("out"));
    let seed = seed.unwrap_or_else(|| cfg.map(|c| c.seed).unwrap_or(0));
    RunContext { out_dir, seed }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Design { config, out, seed } => {
            let cfg = ScenarioConfig::load(&config)?;
            commands::design(&cfg, &context(Some(&cfg), out, seed))
        }
        Command::Sweep {
            config,
            epsilons,
            out,
            seed,
        } => {
            let cfg = ScenarioConfig::load(&config)?;
            commands::sweep(&cfg, &epsilons, &context(Some(&cfg), out, seed))
        }
        Command::Baselines { config, out, seed } => {
            let cfg = ScenarioConfig::load(&config)?;
            commands::baselines(&cfg, &context(Some(&cfg), out, seed))
        }
        Command::Repro { out, seed } => repro::run(&context(None, out, seed)),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(err.exit_code());
        }
    }
}
