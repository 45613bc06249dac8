use std::io::Write;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde::Serialize;
use writhe::mc::random_permutation;
use writhe::{writhe_fast, Permutation, SampleStream};

use crate::error::{CliError, CliResult};
use crate::output::{sink, write_csv, write_json, Format};
use crate::OutputArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Naive,
    Fast,
    Both,
}

#[derive(Args, Debug)]
pub struct WritheArgs {
    /// Permutation images, e.g. "0 4 1 3 2 6 5" or "0,4,1,3,2,6,5".
    #[arg(conflicts_with = "size", required_unless_present = "size")]
    permutation: Option<String>,
    /// Use a uniformly random permutation of this (odd) size instead.
    #[arg(long)]
    size: Option<usize>,
    /// Seed for --size.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Algo::Fast)]
    algo: Algo,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Serialize)]
struct Report {
    size: usize,
    writhe: i64,
    algo: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    naive_seconds: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    fast_seconds: Option<f64>,
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, f64) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed().as_secs_f64())
}

pub fn run(args: WritheArgs) -> CliResult {
    let p: Permutation = match (&args.permutation, args.size) {
        (Some(text), _) => text.parse()?,
        (None, Some(size)) => random_permutation(size, &mut SampleStream::new(args.seed, 0)),
        (None, None) => unreachable!("clap requires one of the two"),
    };
    let size = p.size();
    if size % 2 == 0 {
        return Err(CliError::Usage(format!(
            "the writhe needs an odd number of points, got {size}"
        )));
    }
    let mut report = Report {
        size,
        writhe: 0,
        algo: "fast",
        naive_seconds: None,
        fast_seconds: None,
    };
    match args.algo {
        Algo::Naive => {
            let (w, t) = timed(|| p.writhe_naive());
            report.writhe = w?;
            report.algo = "naive";
            report.naive_seconds = Some(t);
        }
        Algo::Fast => {
            let (w, t) = timed(|| writhe_fast(&p));
            report.writhe = w?;
            report.fast_seconds = Some(t);
        }
        Algo::Both => {
            let (naive, tn) = timed(|| p.writhe_naive());
            let (fast, tf) = timed(|| writhe_fast(&p));
            let (naive, fast) = (naive?, fast?);
            if naive != fast {
                return Err(CliError::Contract(format!(
                    "quadratic writhe {naive} differs from fast writhe {fast}"
                )));
            }
            report.writhe = fast;
            report.algo = "both";
            report.naive_seconds = Some(tn);
            report.fast_seconds = Some(tf);
        }
    }
    let mut out = sink(args.out.output.as_deref())?;
    match args.out.format {
        Format::Text => {
            writeln!(out, "{}", report.writhe)?;
            if args.algo == Algo::Both {
                writeln!(
                    out,
                    "agreement: naive {:.6}s, fast {:.6}s",
                    report.naive_seconds.unwrap_or_default(),
                    report.fast_seconds.unwrap_or_default()
                )?;
            }
            out.flush()?;
        }
        Format::Json => write_json(&mut out, &report)?,
        Format::Csv => write_csv(&mut out, &[report])?,
    }
    Ok(())
}
