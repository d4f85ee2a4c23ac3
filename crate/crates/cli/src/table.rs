//! Result tables and their CSV/JSON forms.

use std::io::Read;

use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    F(f64),
    I(usize),
    B(bool),
    S(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::F(v) if v.is_nan() => "NaN".into(),
            Cell::F(v) => format!("{v:.11e}"),
            Cell::I(v) => v.to_string(),
            Cell::B(v) => v.to_string(),
            Cell::S(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::F(v) if v.is_finite() => json!(v),
            Cell::F(_) => Value::Null,
            Cell::I(v) => json!(v),
            Cell::B(v) => json!(v),
            Cell::S(s) => json!(s),
        }
    }

    pub fn number(&self) -> f64 {
        match self {
            Cell::F(v) => *v,
            Cell::I(v) => *v as f64,
            Cell::B(v) => f64::from(u8::from(*v)),
            Cell::S(_) => f64::NAN,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// CSV with the effective config echoed as `# ` comment lines on top.
    pub fn to_csv(&self, config_toml: &str) -> Result<String, CliError> {
        let mut out = String::new();
        for line in config_toml.lines() {
            out.push_str("# ");
            out.push_str(line);
            out.push('\n');
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).map_err(|e| CliError::Io(e.to_string()))?;
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::csv)).map_err(|e| CliError::Io(e.to_string()))?;
        }
        let body = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
        out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
        Ok(out)
    }

    pub fn to_json(&self, config: Value) -> String {
        let rows: Vec<Value> = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
        let doc = json!({ "config": config, "columns": self.columns, "rows": rows });
        let mut s = serde_json::to_string_pretty(&doc).expect("json serializes");
        s.push('\n');
        s
    }

    pub fn numeric(&self) -> NumTable {
        NumTable {
            columns: self.columns.iter().map(|c| c.to_string()).collect(),
            rows: self.rows.iter().map(|r| r.iter().map(Cell::number).collect()).collect(),
        }
    }
}

/// A table reduced to numbers, as the plotter sees it. Booleans become 0/1
/// and text becomes NaN.
#[derive(Debug, Clone, PartialEq)]
pub struct NumTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl NumTable {
    /// Reads a CSV written by `run`; `#` lines are skipped.
    pub fn from_csv<R: Read>(r: R) -> Result<Self, CliError> {
        let mut rd = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(r);
        let columns: Vec<String> = rd
            .headers()
            .map_err(|e| CliError::Config(format!("malformed CSV: {e}")))?
            .iter()
            .map(str::to_string)
            .collect();
        if columns.is_empty() || columns.iter().all(String::is_empty) {
            return Err(CliError::Config("CSV has no header row".into()));
        }
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| CliError::Config(format!("malformed CSV: {e}")))?;
            let row: Vec<f64> = rec
                .iter()
                .map(|f| match f {
                    "true" => 1.0,
                    "false" => 0.0,
                    _ => f.parse().unwrap_or(f64::NAN),
                })
                .collect();
            rows.push(row);
        }
        Ok(Self { columns, rows })
    }

    pub fn column(&self, name: &str) -> Result<usize, CliError> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| CliError::Config(format!("no column {name:?}; have {}", self.columns.join(", "))))
    }
}
