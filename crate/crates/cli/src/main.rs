mod experiment;
mod generate;
mod hard;
mod solve;
mod stream;
mod svg;
mod table;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use uniqcov::oracle::DEFAULT_ORACLE_BUDGET;

#[derive(Parser)]
#[command(name = "uniqcov", version, about = "Max Unique Coverage solvers, streaming replay and hard-instance tools")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Debug)]
pub struct Global {
    /// Master seed for every randomized step.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output file (stdout if omitted).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Largest number of sub-collections an exact search may visit.
    #[arg(long, global = true, default_value_t = DEFAULT_ORACLE_BUDGET)]
    pub oracle_budget: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Run one algorithm on an instance file.
    Solve(solve::SolveArgs),
    /// Write a seeded random instance.
    GenRandom(generate::GenRandomArgs),
    /// Write a layered hard instance with its metadata line.
    GenHard(generate::GenHardArgs),
    /// Replay an instance file as a set stream.
    Stream(stream::StreamArgs),
    /// Sweep random instances and check every guaranteed ratio.
    Experiment(experiment::ExperimentArgs),
    /// Check the hard-instance identities, on a sweep or on a generated file.
    VerifyHard(hard::VerifyHardArgs),
}

/// A guaranteed bound or identity failed.
#[derive(Debug)]
pub struct BoundViolation(pub String);

impl std::fmt::Display for BoundViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "bound violated: {}", self.0)
    }
}

impl std::error::Error for BoundViolation {}

fn exit_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        if let Some(e) = cause.downcast_ref::<uniqcov::Error>() {
            return match e {
                uniqcov::Error::Capacity(_) => 3,
                uniqcov::Error::Construction(_) => 4,
                _ => 2,
            };
        }
        if cause.is::<BoundViolation>() {
            return 4;
        }
    }
    2
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Solve(a) => solve::run(&cli.global, a),
        Command::GenRandom(a) => generate::run_random(&cli.global, a),
        Command::GenHard(a) => generate::run_hard(&cli.global, a),
        Command::Stream(a) => stream::run(&cli.global, a),
        Command::Experiment(a) => experiment::run(&cli.global, a),
        Command::VerifyHard(a) => hard::run(&cli.global, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
