use std::f64::consts::PI;
use std::io::Write;

use clap::Args;
use serde::Serialize;
use writhe::limit::LimitTable;

use crate::error::{CliError, CliResult};
use crate::output::{sink, write_csv, write_json, Format};
use crate::OutputArgs;

#[derive(Args, Debug)]
pub struct LimitArgs {
    /// Grid half-width: x runs over [-range, range].
    #[arg(long, default_value_t = 4.0)]
    range: f64,
    #[arg(long, default_value_t = 0.01)]
    step: f64,
    #[command(flatten)]
    out: OutputArgs,
}

/// Reference densities, each scaled to variance 2/3.
fn gaussian(x: f64) -> f64 {
    let var = 2.0 / 3.0;
    (-x * x / (2.0 * var)).exp() / (2.0 * PI * var).sqrt()
}

fn logistic(x: f64) -> f64 {
    // variance s²π²/3
    let s = 2f64.sqrt() / PI;
    let e = (-(x / s).abs()).exp();
    e / (s * (1.0 + e) * (1.0 + e))
}

fn sech(x: f64) -> f64 {
    // (1/π) sech has variance π²/4
    let c = (8.0f64 / 3.0).sqrt() / PI;
    1.0 / (c * PI * (x / c).cosh())
}

#[derive(Serialize)]
struct Row {
    x: f64,
    pdf: f64,
    cdf: f64,
    gaussian: f64,
    logistic: f64,
    sech: f64,
}

#[derive(Serialize)]
struct Table {
    range: f64,
    step: f64,
    reference_variance: f64,
    rows: Vec<Row>,
}

pub fn run(args: LimitArgs) -> CliResult {
    if !(args.step > 0.0 && args.range > 0.0) {
        return Err(CliError::Usage("--range and --step must be positive".into()));
    }
    let table = LimitTable::new(args.range, args.step)?;
    let rows: Vec<Row> = table
        .x()
        .iter()
        .zip(table.pdf_values())
        .zip(table.cdf_values())
        .map(|((&x, &pdf), &cdf)| Row {
            x,
            pdf,
            cdf,
            gaussian: gaussian(x),
            logistic: logistic(x),
            sech: sech(x),
        })
        .collect();
    let mut out = sink(args.out.output.as_deref())?;
    match args.out.format {
        Format::Csv | Format::Text => write_csv(&mut out, &rows)?,
        Format::Json => write_json(
            &mut out,
            &Table {
                range: args.range,
                step: args.step,
                reference_variance: 2.0 / 3.0,
                rows,
            },
        )?,
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn second_moment(f: fn(f64) -> f64) -> f64 {
        let h = 1e-3;
        (-20_000..=20_000)
            .map(|i| {
                let x = i as f64 * h;
                x * x * f(x) * h
            })
            .sum()
    }

    #[test]
    fn references_have_variance_two_thirds() {
        for f in [gaussian as fn(f64) -> f64, logistic, sech] {
            assert!((second_moment(f) - 2.0 / 3.0).abs() < 1e-6);
        }
    }
}
