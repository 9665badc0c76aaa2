//! Result assembly and serialization shared by all subcommands.
//!
//! Every command produces a [`Report`]: a rectangular table plus run
//! metadata. CSV output is the bare table (header line, data rows, optional
//! trailing `#` footer lines) so it can be piped straight into plotting
//! tools; JSON output wraps the same table in an envelope carrying the
//! command name, seed, version, and effective parameters. All floating-point
//! values are rendered with 17 significant digits so outputs round-trip
//! exactly and byte-for-byte reproducibility can be checked.

use anyhow::{Context, Result};
use qrqt::units::format_sig17;
use std::io::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// One table cell or metadata value.
#[derive(Clone, Debug)]
pub enum Value {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl Value {
    pub fn text(s: impl Into<String>) -> Self {
        Value::Text(s.into())
    }

    fn csv_cell(&self) -> String {
        match self {
            Value::Num(x) => format_sig17(*x),
            Value::Int(i) => i.to_string(),
            Value::Bool(b) => b.to_string(),
            Value::Text(s) => s.clone(),
        }
    }

    fn json_value(&self) -> serde_json::Value {
        match self {
            // Non-finite floats have no JSON number form; fall back to text.
            Value::Num(x) => serde_json::Number::from_f64(*x)
                .map(serde_json::Value::Number)
                .unwrap_or_else(|| serde_json::Value::String(format_sig17(*x))),
            Value::Int(i) => serde_json::Value::Number((*i).into()),
            Value::Bool(b) => serde_json::Value::Bool(*b),
            Value::Text(s) => serde_json::Value::String(s.clone()),
        }
    }
}

/// Rectangular result table with an optional key/value footer.
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Value>>,
    footer: Vec<(String, Value)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            footer: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row arity mismatch");
        self.rows.push(row);
    }

    pub fn push_footer(&mut self, name: &str, value: Value) {
        self.footer.push((name.to_string(), value));
    }
}

/// A complete command result: table plus reproducibility metadata.
pub struct Report {
    pub command: &'static str,
    pub seed: u64,
    pub parameters: Vec<(String, Value)>,
    pub table: Table,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.render_csv(),
            Format::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.table.columns.join(","));
        out.push('\n');
        for row in &self.table.rows {
            let cells: Vec<String> = row.iter().map(Value::csv_cell).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        for (name, value) in &self.table.footer {
            out.push_str(&format!("# {} = {}\n", name, value.csv_cell()));
        }
        out
    }

    fn render_json(&self) -> String {
        // serde_json maps are sorted by key, so serialization order is
        // independent of insertion order and thus reproducible.
        let mut root = serde_json::Map::new();
        root.insert("command".into(), self.command.into());
        root.insert("seed".into(), self.seed.into());
        root.insert("version".into(), env!("CARGO_PKG_VERSION").into());
        let mut params = serde_json::Map::new();
        for (name, value) in &self.parameters {
            params.insert(name.clone(), value.json_value());
        }
        root.insert("parameters".into(), serde_json::Value::Object(params));
        root.insert(
            "columns".into(),
            serde_json::Value::Array(
                self.table
                    .columns
                    .iter()
                    .map(|c| serde_json::Value::String(c.clone()))
                    .collect(),
            ),
        );
        root.insert(
            "rows".into(),
            serde_json::Value::Array(
                self.table
                    .rows
                    .iter()
                    .map(|row| {
                        serde_json::Value::Array(row.iter().map(Value::json_value).collect())
                    })
                    .collect(),
            ),
        );
        if !self.table.footer.is_empty() {
            let mut footer = serde_json::Map::new();
            for (name, value) in &self.table.footer {
                footer.insert(name.clone(), value.json_value());
            }
            root.insert("footer".into(), serde_json::Value::Object(footer));
        }
        let mut body = serde_json::to_string_pretty(&serde_json::Value::Object(root))
            .expect("report serialization cannot fail");
        body.push('\n');
        body
    }
}

/// Writes `body` to `path`, with `-` meaning standard output. Diagnostics
/// never travel through this function; data and diagnostics stay on
/// separate streams.
pub fn write_output(path: &str, body: &str) -> Result<()> {
    if path == "-" {
        std::io::stdout()
            .write_all(body.as_bytes())
            .context("writing to standard output")?;
    } else {
        std::fs::write(path, body).with_context(|| format!("writing {path}"))?;
    }
    Ok(())
}
