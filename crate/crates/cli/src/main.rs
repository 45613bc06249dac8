//! `writhe` command-line tool.

mod commands;
mod error;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::{CliError, CliResult};
use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "writhe", version, about = "Writhe of permutations: computation, moments, simulation and the limit law")]
struct Cli {
    /// Worker threads for sampling (defaults to available cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Output file; standard output when absent or `-`.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Writhe of one permutation.
    Writhe(commands::writhe::WritheArgs),
    /// Exact finite-n moments, limiting moments, or moments by enumeration.
    Moments(commands::moments::MomentsArgs),
    /// Monte Carlo histogram and summary of w/n.
    Sample(commands::sample::SampleArgs),
    /// Density and distribution function of the limit law with reference curves.
    Limit(commands::limit::LimitArgs),
    /// Timings of the quadratic and fast algorithms with fitted exponents.
    Bench(commands::bench::BenchArgs),
    /// Circular rank correlations of paired angles.
    Corr(commands::corr::CorrArgs),
}

fn run(cli: Cli) -> CliResult {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    match cli.command {
        Command::Writhe(a) => commands::writhe::run(a),
        Command::Moments(a) => commands::moments::run(a),
        Command::Sample(a) => commands::sample::run(a),
        Command::Limit(a) => commands::limit::run(a),
        Command::Bench(a) => commands::bench::run(a),
        Command::Corr(a) => commands::corr::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
