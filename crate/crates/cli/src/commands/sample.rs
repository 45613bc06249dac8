use std::io::Write;
use std::path::PathBuf;

use clap::Args;
use serde::Serialize;
use writhe::mc::{
    compare_to_limit, ks_to_limit, moments_of, normalized_samples, Algorithm, Histogram,
    McConfig, MomentEstimate, MomentGap,
};
use writhe::moments::{eval_poly, exact_moment_poly, mu_k, to_f64};
use writhe::SampleStream;

use crate::error::{CliError, CliResult};
use crate::output::{sink, write_csv, write_json, Format};
use crate::OutputArgs;

#[derive(Args, Debug)]
pub struct SampleArgs {
    /// Half-size: permutations are drawn from S_{2n+1}.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Histogram bins on [-range, range].
    #[arg(long, default_value_t = 161)]
    bins: usize,
    #[arg(long, default_value_t = 4.0)]
    range: f64,
    /// Highest raw moment reported (even, at most 8).
    #[arg(long, default_value_t = 4)]
    k: u32,
    /// Writhe algorithm used by the engine.
    #[arg(long, value_enum, default_value_t = EngineAlgo::Fast)]
    algo: EngineAlgo,
    /// Independent chunks the budget is split into (fixes the result,
    /// whatever the thread count).
    #[arg(long, default_value_t = 64)]
    chunks: usize,
    /// Also write the histogram CSV here.
    #[arg(long)]
    histogram: Option<PathBuf>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum EngineAlgo {
    Fast,
    Naive,
}

impl From<EngineAlgo> for Algorithm {
    fn from(a: EngineAlgo) -> Self {
        match a {
            EngineAlgo::Fast => Algorithm::Fast,
            EngineAlgo::Naive => Algorithm::Naive,
        }
    }
}

#[derive(Serialize)]
struct HistogramRow {
    bin_left: f64,
    bin_right: f64,
    count: u64,
    density: f64,
}

#[derive(Serialize)]
struct Reference {
    variance: f64,
    fourth_moment: f64,
}

#[derive(Serialize)]
struct Summary {
    n: usize,
    size: usize,
    num_samples: usize,
    seed: u64,
    stream_id: u64,
    chunks: usize,
    algorithm: Algorithm,
    bins: usize,
    range: f64,
    underflow: u64,
    overflow: u64,
    moments: Vec<MomentEstimate>,
    exact: Reference,
    limit: Reference,
    ks_samples: f64,
    ks_histogram: f64,
    moment_gaps: Vec<MomentGap>,
}

fn histogram_rows(h: &Histogram) -> Vec<HistogramRow> {
    let e = h.bin_edges();
    (0..h.counts().len())
        .map(|i| HistogramRow {
            bin_left: e[i],
            bin_right: e[i + 1],
            count: h.counts()[i],
            density: h.density(i),
        })
        .collect()
}

pub fn run(args: SampleArgs) -> CliResult {
    if args.samples == 0 {
        return Err(CliError::Usage("--samples must be positive".into()));
    }
    if args.k == 0 || args.k % 2 == 1 || args.k > 8 {
        return Err(CliError::Usage(format!("--k must be even and at most 8, got {}", args.k)));
    }
    let cfg = McConfig {
        chunks: args.chunks.max(1),
        algorithm: args.algo.into(),
    };
    let stream = SampleStream::new(args.seed, 0);
    let samples = normalized_samples(args.n, args.samples, &stream, &cfg)?;
    let mut hist = Histogram::uniform(-args.range, args.range, args.bins)?;
    for &x in &samples {
        hist.record(x);
    }
    let n = args.n as u64;
    let scale = |k: u32| (args.n as f64).powi(k as i32);
    let exact = Reference {
        variance: to_f64(&eval_poly(&exact_moment_poly(2)?, n)) / scale(2),
        fourth_moment: to_f64(&eval_poly(&exact_moment_poly(4)?, n)) / scale(4),
    };
    let limit = Reference {
        variance: to_f64(&mu_k(2)?),
        fourth_moment: to_f64(&mu_k(4)?),
    };
    let comparison = compare_to_limit(&hist);
    let summary = Summary {
        n: args.n,
        size: 2 * args.n + 1,
        num_samples: args.samples,
        seed: args.seed,
        stream_id: stream.stream_id(),
        chunks: cfg.chunks,
        algorithm: cfg.algorithm,
        bins: args.bins,
        range: args.range,
        underflow: hist.underflow(),
        overflow: hist.overflow(),
        moments: moments_of(&samples, args.k),
        exact,
        limit,
        ks_samples: ks_to_limit(&samples),
        ks_histogram: comparison.ks,
        moment_gaps: comparison.moment_gaps,
    };
    let rows = histogram_rows(&hist);
    if let Some(path) = &args.histogram {
        write_csv(&mut sink(Some(path))?, &rows)?;
    }
    let mut out = sink(args.out.output.as_deref())?;
    match args.out.format {
        Format::Json => write_json(&mut out, &summary)?,
        Format::Csv => write_csv(&mut out, &rows)?,
        Format::Text => {
            writeln!(out, "n = {}, samples = {}, seed = {}", summary.n, summary.num_samples, summary.seed)?;
            for m in &summary.moments {
                writeln!(out, "E[W^{}] = {:.6} ± {:.6}", m.k, m.value, m.std_error)?;
            }
            writeln!(
                out,
                "exact variance {:.6}, limit variance {:.6}",
                summary.exact.variance, summary.limit.variance
            )?;
            writeln!(out, "KS to limit: {:.5} (samples), {:.5} (histogram)", summary.ks_samples, summary.ks_histogram)?;
            out.flush()?;
        }
    }
    Ok(())
}
