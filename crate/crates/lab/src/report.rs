//! Scan reports and their JSON and CSV serializations.
//!
//! Floats are rounded to 12 significant digits when they enter a report, so
//! the in-memory report, its JSON text and the parsed-back report agree
//! exactly. Non-finite floats are stored as the strings `inf`, `-inf`, `nan`.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::{LabError, Result};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema_version: String,
    pub experiment: String,
    pub parameters: BTreeMap<String, Value>,
    pub columns: Vec<String>,
    /// One array per row, aligned with `columns`.
    pub rows: Vec<Vec<Value>>,
    pub summary: BTreeMap<String, Value>,
    /// Wall-clock seconds; `None` unless timing was requested, since it
    /// would break byte-for-byte reproducibility.
    pub timing: Option<f64>,
}

impl ScanReport {
    pub fn new(experiment: &str, columns: &[&str]) -> Self {
        let mut parameters = BTreeMap::new();
        parameters.insert("charsum_core_version".into(), Value::from(charsum_core::VERSION));
        parameters.insert("charsum_lab_version".into(), Value::from(env!("CARGO_PKG_VERSION")));
        ScanReport {
            schema_version: SCHEMA_VERSION.into(),
            experiment: experiment.into(),
            parameters,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            summary: BTreeMap::new(),
            timing: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.into(), round_value(value.into()));
    }

    pub fn summarize(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.into(), round_value(value.into()));
    }

    /// Appends a row; panics if its width does not match the columns.
    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row.into_iter().map(round_value).collect());
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Finite numeric entries of a column.
    pub fn numbers(&self, name: &str) -> Vec<f64> {
        let Some(i) = self.column(name) else {
            return Vec::new();
        };
        self.rows.iter().filter_map(|r| r[i].as_f64()).collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports are always serializable");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(cell)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv output is utf-8")
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

/// A float as a report value.
pub fn num(x: f64) -> Value {
    if x.is_nan() {
        Value::from("nan")
    } else if x.is_infinite() {
        Value::from(if x > 0.0 { "inf" } else { "-inf" })
    } else {
        Value::from(round12(x))
    }
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => num(n.as_f64().expect("f64 number")),
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            other => Err(LabError::Usage(format!("unknown format `{other}` (json or csv)"))),
        }
    }
}

pub fn render(report: &ScanReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    }
}

pub fn emit(report: &ScanReport, format: Format, path: &Path) -> Result<()> {
    std::fs::write(path, render(report, format)).map_err(|source| LabError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Reads a JSON report written by [`emit`].
pub fn read_report(path: &Path) -> Result<ScanReport> {
    let text = std::fs::read_to_string(path).map_err(|source| LabError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| LabError::Json {
        path: path.to_path_buf(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round12(1.0 / 3.0), 0.333333333333);
        assert_eq!(round12(123_456_789.123_456_78), 123456789.123);
        assert_eq!(num(f64::INFINITY), Value::from("inf"));
        assert_eq!(num(f64::NAN), Value::from("nan"));
    }

    #[test]
    fn json_round_trip() {
        let mut r = ScanReport::new("demo", &["a", "b", "c"]);
        r.param("x", 0.1 + 0.2);
        r.push(vec![Value::from(1u64), num(std::f64::consts::PI), Value::from("s,t")]);
        r.push(vec![Value::from(2u64), num(-1e-300 / 7.0), Value::Null]);
        r.summarize("max", num(f64::INFINITY));
        let back: ScanReport = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(back, r);
        assert_eq!(r.to_csv(), "a,b,c\n1,3.14159265359,\"s,t\"\n2,-1.42857142857e-301,\n");
    }
}
