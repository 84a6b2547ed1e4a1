use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::args::Format;
use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Num(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(i) => i.to_string(),
            // 17 significant digits
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Result<Value, CliError> {
        Ok(match self {
            Cell::Int(i) => json!(i),
            Cell::Num(x) => num(*x)?,
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        })
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Finite number as JSON; anything else is a bug upstream.
pub fn num(x: f64) -> Result<Value, CliError> {
    if !x.is_finite() {
        return Err(CliError::internal(format!("non-finite value {x} in output")));
    }
    Ok(json!(x))
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<Vec<u8>, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).map_err(CliError::io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv)).map_err(CliError::io)?;
        }
        w.into_inner().map_err(|e| CliError::io(e.into_error()))
    }

    pub fn rows_json(&self) -> Result<Value, CliError> {
        let mut out = Vec::with_capacity(self.rows.len());
        for row in &self.rows {
            let mut m = Map::new();
            for (h, c) in self.header.iter().zip(row) {
                m.insert(h.clone(), c.json()?);
            }
            out.push(Value::Object(m));
        }
        Ok(Value::Array(out))
    }
}

/// A command result: a table, plus the JSON document used for `--format json`.
pub struct Report {
    pub table: Table,
    pub json: Value,
}

impl Report {
    /// JSON wraps the table rows with the command name and parameters.
    pub fn from_table(command: &str, params: Value, table: Table) -> Result<Self, CliError> {
        let json = json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "params": params,
            "columns": table.header,
            "rows": table.rows_json()?,
        });
        Ok(Self { table, json })
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>, CliError> {
        match format {
            Format::Csv => self.table.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).map_err(|e| CliError::internal(e.to_string()))?;
                s.push('\n');
                Ok(s.into_bytes())
            }
        }
    }
}

pub fn emit(bytes: &[u8], out: Option<&Path>) -> Result<(), CliError> {
    match out {
        Some(p) => {
            let mut f = File::create(p).map_err(CliError::io)?;
            f.write_all(bytes).map_err(CliError::io)
        }
        None => {
            let mut s = io::stdout().lock();
            s.write_all(bytes).map_err(CliError::io)?;
            s.flush().map_err(CliError::io)
        }
    }
}
