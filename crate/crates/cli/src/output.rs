use std::io::Write;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use ehrhart_core::exact::{fmt_decimal, fmt_rat};
use ehrhart_core::Rat;
use serde::Serialize;

pub const PLACES: u32 = 12;

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    /// Write to PATH instead of stdout
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Long-format table for CSV output.
pub struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn render(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.into_inner().context("flushing csv")
    }
}

/// Decimal and exact renderings of a rational, for adjacent CSV columns.
pub fn rat_cols(r: &Rat) -> [String; 2] {
    [fmt_decimal(r, PLACES), fmt_rat(r)]
}

pub fn float(x: f64) -> String {
    format!("{x:.prec$}", prec = PLACES as usize)
}

impl Output {
    pub fn emit<T: Serialize>(&self, doc: &T, table: impl FnOnce() -> Table) -> Result<()> {
        let bytes = match self.format {
            Format::Json => {
                let mut b = serde_json::to_vec_pretty(doc)?;
                b.push(b'\n');
                b
            }
            Format::Csv => table().render()?,
        };
        match &self.out {
            Some(path) => std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display())),
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(&bytes)?;
                Ok(out.flush()?)
            }
        }
    }
}
