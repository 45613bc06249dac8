use std::io::Write;

use clap::{Args, ValueEnum};
use serde::Serialize;
use writhe::moments::{
    eval_poly, exact_moment_poly, moment_enumeration, mu_k, to_f64, Rational, MAX_MOMENT_ORDER,
};

use crate::error::{CliError, CliResult};
use crate::output::{sink, write_csv, write_json, Format};
use crate::OutputArgs;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Closed-form E[w^k] for k in {2, 4}.
    Exact,
    /// Limiting moments of w/n.
    Limit,
    /// E[w^k] by enumerating S_{2n+1} (n <= 3).
    Enumerate,
}

#[derive(Args, Debug)]
pub struct MomentsArgs {
    #[arg(long, value_enum, default_value_t = Mode::Exact)]
    mode: Mode,
    /// Moment order. Limit mode without --k lists every even order up to 20.
    #[arg(long)]
    k: Option<usize>,
    /// Half-sizes n, comma separated (exact and enumerate modes).
    #[arg(long, value_delimiter = ',')]
    n: Vec<u64>,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Serialize)]
struct Row {
    #[serde(skip_serializing_if = "Option::is_none")]
    n: Option<u64>,
    k: usize,
    /// Exact value as `p/q`.
    value: String,
    decimal: f64,
}

#[derive(Serialize)]
struct Table {
    mode: Mode,
    rows: Vec<Row>,
}

fn row(n: Option<u64>, k: usize, v: &Rational) -> Row {
    Row {
        n,
        k,
        value: v.to_string(),
        decimal: to_f64(v),
    }
}

fn finite_order(k: Option<usize>) -> CliResult<usize> {
    match k.unwrap_or(2) {
        k @ (2 | 4) => Ok(k),
        k => Err(CliError::Usage(format!(
            "finite-n moments are available for k = 2 or 4, not {k}"
        ))),
    }
}

fn build(args: &MomentsArgs) -> CliResult<Vec<Row>> {
    match args.mode {
        Mode::Exact => {
            let k = finite_order(args.k)?;
            if args.n.is_empty() {
                return Err(CliError::Usage("exact mode needs --n".into()));
            }
            let poly = exact_moment_poly(k)?;
            Ok(args.n.iter().map(|&n| row(Some(n), k, &eval_poly(&poly, n))).collect())
        }
        Mode::Enumerate => {
            let k = args.k.unwrap_or(2);
            if args.n.is_empty() {
                return Err(CliError::Usage("enumerate mode needs --n".into()));
            }
            args.n
                .iter()
                .map(|&n| {
                    let v = moment_enumeration(n as usize, k as u32)?;
                    Ok(row(Some(n), k, &v))
                })
                .collect()
        }
        Mode::Limit => {
            let orders: Vec<usize> = match args.k {
                Some(k) => vec![k],
                None => (2..=MAX_MOMENT_ORDER).step_by(2).collect(),
            };
            orders
                .into_iter()
                .map(|k| Ok(row(None, k, &mu_k(k)?)))
                .collect()
        }
    }
}

pub fn run(args: MomentsArgs) -> CliResult {
    let rows = build(&args)?;
    let mut out = sink(args.out.output.as_deref())?;
    match args.out.format {
        Format::Text => {
            for r in &rows {
                match r.n {
                    Some(n) => writeln!(out, "n={n} k={}: {}", r.k, r.value)?,
                    None => writeln!(out, "k={}: {}", r.k, r.value)?,
                }
            }
            out.flush()?;
        }
        Format::Csv => write_csv(&mut out, &rows)?,
        Format::Json => write_json(
            &mut out,
            &Table {
                mode: args.mode,
                rows,
            },
        )?,
    }
    Ok(())
}
