//! Table and JSON output: files under an output directory, or stdout.

use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

/// A named table: header plus rows of already formatted cells.
pub struct Table {
    pub name: &'static str,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &'static str, header: &[&str]) -> Self {
        Table {
            name,
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(|e| CliError::Io(e.to_string()))?;
        for r in &self.rows {
            w.write_record(r).map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.to_string()))
    }
}

/// Shortest round-trip representation of a float (deterministic; exponent
/// notation for very small or large magnitudes; −0 prints as 0). Non-finite
/// values become empty cells.
pub fn num(x: f64) -> String {
    if x == 0.0 {
        "0.0".into()
    } else if x.is_finite() {
        format!("{x:?}")
    } else {
        String::new()
    }
}

pub fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// Where results go.
pub struct Sink {
    pub dir: Option<PathBuf>,
    pub format: Format,
}

impl Sink {
    pub fn new(dir: Option<PathBuf>, format: Format) -> Result<Self, CliError> {
        if let Some(d) = &dir {
            std::fs::create_dir_all(d).map_err(|e| CliError::Io(format!("{}: {e}", d.display())))?;
        }
        Ok(Sink { dir, format })
    }

    fn write(&self, file: &str, bytes: &[u8]) -> Result<(), CliError> {
        match &self.dir {
            Some(d) => {
                let p = d.join(file);
                std::fs::write(&p, bytes).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))
            }
            None => {
                let mut out = std::io::stdout().lock();
                out.write_all(bytes).and_then(|_| out.flush()).map_err(|e| CliError::Io(e.to_string()))
            }
        }
    }

    /// Writes tables as `<name>.csv` files (CSV format) or the whole
    /// `document` as `<stem>.json` (JSON format). Without an output
    /// directory, CSV mode prints only the first table.
    pub fn emit<T: Serialize>(&self, stem: &str, document: &T, tables: &[Table]) -> Result<(), CliError> {
        match self.format {
            Format::Json => {
                let mut text = serde_json::to_vec_pretty(document).map_err(|e| CliError::Io(e.to_string()))?;
                text.push(b'\n');
                self.write(&format!("{stem}.json"), &text)
            }
            Format::Csv => {
                if self.dir.is_some() {
                    for t in tables {
                        self.write(&format!("{}.csv", t.name), &t.to_csv()?)?;
                    }
                    Ok(())
                } else if let Some(t) = tables.first() {
                    self.write("", &t.to_csv()?)
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Writes a plain-text file (or prints it).
    pub fn text(&self, file: &str, text: &str) -> Result<(), CliError> {
        self.write(file, text.as_bytes())
    }
}
