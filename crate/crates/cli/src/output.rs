use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use serde::Serialize;

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

/// File at `path`, or standard output when `path` is `None` or `-`.
pub fn sink(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) if p != Path::new("-") => Box::new(BufWriter::new(File::create(p)?)),
        _ => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    out.flush()?;
    Ok(())
}

/// CSV writer over `out` with a header row.
pub fn write_csv<R: Serialize>(out: &mut dyn Write, rows: &[R]) -> CliResult {
    let mut w = csv::Writer::from_writer(&mut *out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}
