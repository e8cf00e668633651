//! `kacgap` command-line tool.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::TypedValueParser;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "kacgap",
    version,
    about = "Spectral-gap bounds and Monte Carlo relaxation for the three-particle conjugate Kac process"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Seed for every random stream.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Directory for output files; results go to stdout when omitted.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Smaller Monte Carlo runs with wider tolerances.
    #[arg(long, global = true)]
    pub quick: bool,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate kappa(n, ell) with its envelopes as CSV.
    Eigen(EigenArgs),
    /// Run one sector pipeline.
    Bounds(BoundsArgs),
    /// Assemble all sector bounds into the gap (JSON).
    Gap,
    /// Simulate the jump process and measure entropy decay.
    Simulate(SimulateArgs),
    /// Replay every reference check and print a pass/fail table.
    Verify,
}

#[derive(Debug, Args)]
pub struct EigenArgs {
    /// Single angular index.
    #[arg(long, conflicts_with = "ell_max")]
    pub ell: Option<usize>,
    /// All angular indices 0..=ELL_MAX.
    #[arg(long)]
    pub ell_max: Option<usize>,
    #[arg(long, default_value_t = 300)]
    pub n_max: usize,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SectorArg {
    Antisym,
    Large,
    Mid,
    Small,
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub sector: SectorArg,
    /// Angular index (large: >= 4, default 70; small: 0..=5, default 0).
    #[arg(long)]
    pub ell: Option<usize>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum InitialArg {
    Linear,
    Equilibrium,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 2, value_parser = clap::builder::PossibleValuesParser::new(["0", "2"]).map(|s| s.parse::<u32>().unwrap()))]
    pub alpha: u32,
    #[arg(long, default_value_t = 100_000)]
    pub replicas: usize,
    #[arg(long, default_value_t = 100)]
    pub bins: usize,
    /// Comma-separated observation times (defaults depend on alpha).
    #[arg(long, value_delimiter = ',')]
    pub frames: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value = "linear")]
    pub initial: InitialArg,
}

fn init_threads() {
    if let Some(n) = std::env::var("KACGAP_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        // a second initialization only happens in tests and is harmless
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    init_threads();
    ExitCode::from(commands::run(&cli))
}
