use std::io::Write;
use std::str::FromStr;

use serde_json::{Map, Number, Value};

use crate::config::{Format, RunConfig};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    /// Seventeen significant digits, enough to round-trip any `f64`.
    pub fn render(&self) -> String {
        match self {
            Cell::Num(v) => format_number(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(v) if v.is_finite() => {
                Value::Number(Number::from_str(&format_number(*v)).expect("finite float formats as a JSON number"))
            }
            Cell::Num(_) => Value::Null,
            Cell::Text(s) => Value::String(s.clone()),
        }
    }
}

pub fn format_number(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn numbers(&self) -> impl Iterator<Item = f64> + '_ {
        self.rows.iter().flatten().filter_map(|c| match c {
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        })
    }
}

pub fn write_table<W: Write>(config: &RunConfig, table: &Table, out: W) -> Result<(), CliError> {
    match config.output.format {
        Format::Csv => write_csv(table, out),
        Format::Json => write_json(config, table, out),
    }
}

fn write_csv<W: Write>(table: &Table, out: W) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(&table.columns)?;
    for row in &table.rows {
        w.write_record(row.iter().map(Cell::render))?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<W: Write>(config: &RunConfig, table: &Table, mut out: W) -> Result<(), CliError> {
    let mut doc = Map::new();
    doc.insert("config".into(), serde_json::to_value(config)?);
    doc.insert("columns".into(), table.columns.iter().map(|c| Value::String(c.to_string())).collect());
    doc.insert(
        "rows".into(),
        table.rows.iter().map(|r| Value::Array(r.iter().map(Cell::to_json).collect())).collect(),
    );
    serde_json::to_writer_pretty(&mut out, &Value::Object(doc))?;
    writeln!(out)?;
    Ok(())
}
