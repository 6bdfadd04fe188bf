//! CSV and JSON rendering of command results, and the reader for the JSON
//! documents.
//!
//! CSV: `# key=value` metadata lines (config first, then `# check ...`
//! lines), one header row, data rows. Floats use Rust's shortest round-trip
//! formatting. JSON: `{config, results, checks}` with serde_json's
//! round-trip float printing, so a document read back is bit-identical.

use std::fmt::Write as _;

use ptho_core::SpectralReport;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::args::Format;
use crate::config::RunConfig;
use crate::error::{CliResult, EXIT_CHECK_FAILED, EXIT_OK};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:?}"),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => Value::from(*v),
            Cell::Bool(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn json_rows(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| Value::Object(self.columns.iter().map(|c| c.to_string()).zip(r.iter().map(Cell::json)).collect()))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Self { name: name.into(), pass, detail: detail.into() }
    }

    pub fn line(&self) -> String {
        format!("{} {}: {}", if self.pass { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

/// Everything a command produces before rendering.
#[derive(Debug, Clone)]
pub struct Document {
    pub config: Map<String, Value>,
    pub table: Table,
    /// JSON `results`; the table rows as objects when `None`.
    pub results: Option<Value>,
    pub checks: Vec<Check>,
}

impl Document {
    pub fn new(config: &RunConfig, table: Table) -> Self {
        let config = match serde_json::to_value(config) {
            Ok(Value::Object(m)) => m,
            _ => Map::new(),
        };
        Self { config, table, results: None, checks: Vec::new() }
    }

    /// Adds a resolved value to the metadata block.
    pub fn meta(&mut self, key: &str, value: impl Into<Value>) {
        self.config.insert(key.to_string(), value.into());
    }

    pub fn exit_code(&self) -> u8 {
        if self.checks.iter().all(|c| c.pass) {
            EXIT_OK
        } else {
            EXIT_CHECK_FAILED
        }
    }

    pub fn render(&self, format: Format) -> CliResult<String> {
        match format {
            Format::Csv => Ok(self.to_csv()),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.config {
            let v = match v {
                Value::Null => continue,
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            let _ = writeln!(out, "# {k}={v}");
        }
        for c in &self.checks {
            let _ = writeln!(out, "# check={}", c.line());
        }
        out.push_str(&self.table.columns.join(","));
        out.push('\n');
        for row in &self.table.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> CliResult<String> {
        let doc = serde_json::json!({
            "config": self.config,
            "results": self.results.clone().unwrap_or_else(|| self.table.json_rows()),
            "checks": self.checks,
        });
        let mut s = serde_json::to_string_pretty(&doc)?;
        s.push('\n');
        Ok(s)
    }
}

/// A JSON document as written by any command.
#[derive(Debug, Clone, PartialEq, Deserialize)]
pub struct JsonDocument {
    pub config: Map<String, Value>,
    pub results: Value,
    pub checks: Vec<Check>,
}

pub fn read_document(text: &str) -> CliResult<JsonDocument> {
    Ok(serde_json::from_str(text)?)
}

/// The [`SpectralReport`] embedded in `spectrum --format json` output.
pub fn read_spectrum(text: &str) -> CliResult<SpectralReport> {
    let doc = read_document(text)?;
    let report = doc.results.get("report").cloned().unwrap_or(Value::Null);
    Ok(serde_json::from_value(report)?)
}

pub(crate) fn spectrum_results(report: &SpectralReport, table: &Table) -> CliResult<Value> {
    Ok(serde_json::json!({ "report": serde_json::to_value(report)?, "rows": table.json_rows() }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_cells() {
        assert_eq!(Cell::Float(-0.5).csv(), "-0.5");
        assert_eq!(Cell::Float(0.1 + 0.2).csv(), "0.30000000000000004");
        assert_eq!(Cell::Float(1e-20).csv(), "1e-20");
        assert_eq!(Cell::Text("a,b".into()).csv(), "\"a,b\"");
        assert_eq!(Cell::Empty.csv(), "");
    }

    #[test]
    fn exit_code_follows_checks() {
        let mut d = Document { config: Map::new(), table: Table::new(&["a"]), results: None, checks: vec![] };
        assert_eq!(d.exit_code(), EXIT_OK);
        d.checks.push(Check::new("x", false, "bad"));
        assert_eq!(d.exit_code(), EXIT_CHECK_FAILED);
    }
}
