//! CSV and JSON emitters. Numbers are written with 17 significant digits.

use std::fs::File;
use std::io::{self, BufWriter, Write};

use serde::Serialize;

use crate::config::{Format, RunConfig};

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

/// A row that knows its CSV header and cells.
pub trait Row: Serialize {
    const HEADER: &'static [&'static str];
    fn cells(&self) -> Vec<String>;
}

fn sink(cfg: &RunConfig) -> anyhow::Result<Box<dyn Write>> {
    Ok(match &cfg.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

/// Writes `rows` in the configured format to the configured destination.
pub fn emit<R: Row>(cfg: &RunConfig, rows: &[R]) -> anyhow::Result<()> {
    let mut out = sink(cfg)?;
    match cfg.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut out);
            w.write_record(R::HEADER)?;
            for r in rows {
                w.write_record(r.cells())?;
            }
            w.flush()?;
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, rows)?;
            writeln!(out)?;
        }
    }
    out.flush()?;
    Ok(())
}
