use std::io::Write;

use clap::Args;
use serde::Serialize;
use writhe::bench::{fit_exponent, power_ladder, time_writhe, Timing};
use writhe::mc::Algorithm;

use crate::error::{CliError, CliResult};
use crate::output::{sink, write_csv, write_json, Format};
use crate::OutputArgs;

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Fast ladder: sizes 2^k + 1 for k in fast-from..=fast-to.
    #[arg(long, default_value_t = 14)]
    fast_from: u32,
    #[arg(long, default_value_t = 20)]
    fast_to: u32,
    /// Quadratic ladder, same convention.
    #[arg(long, default_value_t = 10)]
    naive_from: u32,
    #[arg(long, default_value_t = 14)]
    naive_to: u32,
    /// Repetitions per size; the median is reported.
    #[arg(long, default_value_t = 5)]
    reps: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Serialize)]
struct Report {
    timings: Vec<Timing>,
    fast_exponent: Option<f64>,
    naive_exponent: Option<f64>,
}

fn ladder(from: u32, to: u32, algo: Algorithm, reps: usize, seed: u64) -> CliResult<Vec<Timing>> {
    if from > to || to > 30 {
        return Err(CliError::Usage(format!("invalid ladder 2^{from}..2^{to}")));
    }
    Ok(power_ladder(from, to)
        .into_iter()
        .map(|n| time_writhe(n, algo, reps, seed))
        .collect::<Result<_, _>>()?)
}

pub fn run(args: BenchArgs) -> CliResult {
    let fast = ladder(args.fast_from, args.fast_to, Algorithm::Fast, args.reps, args.seed)?;
    let naive = ladder(args.naive_from, args.naive_to, Algorithm::Naive, args.reps, args.seed)?;
    let exponent = |t: &[Timing]| (t.len() >= 2).then(|| fit_exponent(t));
    let report = Report {
        fast_exponent: exponent(&fast),
        naive_exponent: exponent(&naive),
        timings: fast.into_iter().chain(naive).collect(),
    };
    let mut out = sink(args.out.output.as_deref())?;
    match args.out.format {
        Format::Json => write_json(&mut out, &report)?,
        Format::Csv => write_csv(&mut out, &report.timings)?,
        Format::Text => {
            for t in &report.timings {
                let algo = format!("{:?}", t.algorithm).to_lowercase();
                writeln!(out, "{:>9} {algo:>5} {:.6e}s", t.size, t.seconds)?;
            }
            if let Some(e) = report.fast_exponent {
                writeln!(out, "fast exponent  {e:.3}")?;
            }
            if let Some(e) = report.naive_exponent {
                writeln!(out, "naive exponent {e:.3}")?;
            }
            out.flush()?;
        }
    }
    Ok(())
}
