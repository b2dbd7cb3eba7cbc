//! Output plumbing: machine-readable payload to stdout or a file, human
//! tables to stderr.

use std::io::Write;
use std::path::Path;

use anyhow::Context;
use clap::ValueEnum;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// A command result: a JSON document, its CSV rendering, and the lines of a
/// human-readable summary.
pub struct Rendered {
    pub json: serde_json::Value,
    pub csv: String,
    pub table: Vec<String>,
}

impl Rendered {
    pub fn new<T: serde::Serialize>(value: &T, csv: String, table: Vec<String>) -> anyhow::Result<Self> {
        Ok(Rendered {
            json: serde_json::to_value(value).context("serializing result")?,
            csv,
            table,
        })
    }

    /// Writes the human table to stderr and the machine payload to `out` or
    /// stdout.
    pub fn emit(&self, format: Format, out: Option<&Path>) -> anyhow::Result<()> {
        let mut err = std::io::stderr().lock();
        for line in &self.table {
            writeln!(err, "{line}").ok();
        }
        let payload = match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json)?;
                s.push('\n');
                s
            }
            Format::Csv => self.csv.clone(),
        };
        match out {
            Some(path) => std::fs::write(path, payload)
                .with_context(|| format!("writing {}", path.display()))?,
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout.write_all(payload.as_bytes())?;
                stdout.flush()?;
            }
        }
        Ok(())
    }
}

/// Builds a CSV document from a header and rows of comma-free cells.
pub fn csv_table(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = String::from(header);
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
