use serde::{Deserialize, Serialize};
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::Parse(format!("unknown format '{s}'"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Provenance attached to every JSON report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Meta {
    pub n: usize,
    pub trials: usize,
    pub base_seed: u64,
    pub version: String,
}

impl Meta {
    pub fn new(n: usize, trials: usize, base_seed: u64) -> Self {
        Meta {
            n,
            trials,
            base_seed,
            version: format!("v{}", env!("CARGO_PKG_VERSION")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i128),
    Float(f64),
    Empty,
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i128)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Float)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Text(s) => f.write_str(s),
            Cell::Int(i) => write!(f, "{i}"),
            // 17 significant digits round-trip every f64.
            Cell::Float(x) if x.is_finite() => write!(f, "{x:.16e}"),
            Cell::Float(x) => write!(f, "{x}"),
            Cell::Empty => Ok(()),
        }
    }
}

/// One CSV table: a fixed header and rows of cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: &'static str,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &'static str, header: &[&'static str]) -> Self {
        Table {
            name,
            header: header.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(&self.header).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_string()))
                .map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 cells"))
    }
}

/// A report that can be written as CSV tables or as JSON.
pub trait Tabular: Serialize {
    /// Tables in output order; the first is the primary one.
    fn tables(&self) -> Vec<Table>;
}

impl<T: Tabular> Tabular for [T] {
    fn tables(&self) -> Vec<Table> {
        let mut merged: Vec<Table> = Vec::new();
        for r in self {
            for t in r.tables() {
                match merged.iter_mut().find(|m| m.name == t.name) {
                    Some(m) => m.rows.extend(t.rows),
                    None => merged.push(t),
                }
            }
        }
        merged
    }
}

impl<T: Tabular> Tabular for Vec<T> {
    fn tables(&self) -> Vec<Table> {
        self.as_slice().tables()
    }
}

/// The report rendered in memory. CSV tables after the first are separated
/// by a blank line.
pub fn emit_string<R: Tabular + ?Sized>(report: &R, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(serde_json::to_string_pretty(report)? + "\n"),
        Format::Csv => {
            let parts: Result<Vec<String>> = report.tables().iter().map(Table::to_csv).collect();
            Ok(parts?.join("\n"))
        }
    }
}

/// Write `report` to `path`. In CSV form the first table goes to `path`
/// and each further table to `<stem>_<name>.csv` beside it. Returns the
/// files written.
pub fn emit<R: Tabular + ?Sized>(report: &R, path: &Path, format: Format) -> Result<Vec<PathBuf>> {
    let write = |p: &Path, s: &str| fs::write(p, s).map_err(|e| Error::io(p, e));
    match format {
        Format::Json => {
            write(path, &emit_string(report, Format::Json)?)?;
            Ok(vec![path.to_path_buf()])
        }
        Format::Csv => {
            let mut written = Vec::new();
            for (i, t) in report.tables().iter().enumerate() {
                let p = if i == 0 {
                    path.to_path_buf()
                } else {
                    sibling(path, t.name)
                };
                write(&p, &t.to_csv()?)?;
                written.push(p);
            }
            Ok(written)
        }
    }
}

fn sibling(path: &Path, name: &str) -> PathBuf {
    let stem = path
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("report");
    path.with_file_name(format!("{stem}_{name}.csv"))
}
