use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::Args;
use serde::{Deserialize, Serialize};
use writhe::corr::{
    kernel_alpha, kernel_beta, kernel_gamma, r_alpha_beta_exact, r_fg, ranks_from_angles,
    PeriodicKernel,
};

use crate::error::{CliError, CliResult};
use crate::output::{sink, write_csv, write_json, Format};
use crate::OutputArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KernelPair(Kernel, Kernel);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Kernel {
    Alpha,
    Beta,
    Gamma,
}

impl Kernel {
    fn get(self) -> PeriodicKernel {
        match self {
            Kernel::Alpha => kernel_alpha(),
            Kernel::Beta => kernel_beta(),
            Kernel::Gamma => kernel_gamma(),
        }
    }
}

impl FromStr for Kernel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "alpha" => Ok(Kernel::Alpha),
            "beta" => Ok(Kernel::Beta),
            "gamma" => Ok(Kernel::Gamma),
            other => Err(format!("unknown kernel {other:?} (alpha, beta or gamma)")),
        }
    }
}

impl FromStr for KernelPair {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (f, g) = s
            .split_once('-')
            .ok_or_else(|| format!("kernel pair {s:?} should look like beta-beta"))?;
        Ok(KernelPair(f.parse()?, g.parse()?))
    }
}

#[derive(Args, Debug)]
pub struct CorrArgs {
    /// CSV with columns theta,phi (radians); `-` reads standard input.
    #[arg(long)]
    input: PathBuf,
    /// Kernel pairs f-g, comma separated, from alpha, beta, gamma.
    #[arg(long, value_delimiter = ',', default_value = "beta-beta,gamma-gamma")]
    kernels: Vec<KernelPair>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Deserialize)]
struct AngleRow {
    theta: f64,
    phi: f64,
}

#[derive(Serialize)]
struct Statistic {
    f: &'static str,
    g: &'static str,
    value: f64,
    /// Exact rational value, for the alpha-beta pair.
    exact: Option<String>,
}

#[derive(Serialize)]
struct Report {
    n: usize,
    ties_theta: usize,
    ties_phi: usize,
    statistics: Vec<Statistic>,
}

fn read_angles(path: &PathBuf) -> CliResult<(Vec<f64>, Vec<f64>)> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(path)?;
    }
    let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(text.as_bytes());
    let (mut theta, mut phi) = (Vec::new(), Vec::new());
    for row in reader.deserialize::<AngleRow>() {
        let row = row.map_err(|e| CliError::Usage(format!("malformed angle CSV: {e}")))?;
        theta.push(row.theta);
        phi.push(row.phi);
    }
    if theta.is_empty() {
        return Err(CliError::Usage("angle CSV has no data rows".into()));
    }
    Ok((theta, phi))
}

pub fn run(args: CorrArgs) -> CliResult {
    let (theta, phi) = read_angles(&args.input)?;
    let ranks = ranks_from_angles(&theta, &phi)?;
    for (name, ties) in [("theta", ranks.ties_first), ("phi", ranks.ties_second)] {
        if ties > 0 {
            eprintln!("warning: {ties} tied {name} value(s); ties broken by input order");
        }
    }
    let mut statistics = Vec::new();
    for KernelPair(f, g) in &args.kernels {
        let (kf, kg) = (f.get(), g.get());
        let exact = if (*f, *g) == (Kernel::Alpha, Kernel::Beta) {
            Some(r_alpha_beta_exact(&ranks.pairs)?.to_string())
        } else {
            None
        };
        statistics.push(Statistic {
            f: kf.name(),
            g: kg.name(),
            value: r_fg(&ranks.pairs, &kf, &kg)?,
            exact,
        });
    }
    let report = Report {
        n: ranks.pairs.size(),
        ties_theta: ranks.ties_first,
        ties_phi: ranks.ties_second,
        statistics,
    };
    let mut out = sink(args.out.output.as_deref())?;
    match args.out.format {
        Format::Json => write_json(&mut out, &report)?,
        Format::Csv => write_csv(&mut out, &report.statistics)?,
        Format::Text => {
            writeln!(out, "N = {}", report.n)?;
            for s in &report.statistics {
                writeln!(out, "R[{},{}] = {}", s.f, s.g, s.value)?;
            }
            out.flush()?;
        }
    }
    Ok(())
}
