//! Result tables and their CSV/JSON encodings.
//!
//! CSV: header row, RFC-4180 quoting, `.` decimal separator, floats at 17
//! significant digits (round-trip exact), exact rationals as `num/den`
//! strings. JSON: an array of objects with the same field names; rationals
//! as `{"num": .., "den": ..}` with integer parts when they fit in an
//! `i64` and decimal strings otherwise. Emitted reports re-parse into the
//! same table.

use std::io::Write;
use std::path::Path;

use num::{BigInt, BigRational};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// One table cell.
#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i128),
    Float(f64),
    Rational(BigRational),
    Text(String),
    Bool(bool),
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<u128> for Cell {
    fn from(v: u128) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v as i128)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
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

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<BigRational> for Cell {
    fn from(v: BigRational) -> Self {
        Cell::Rational(v)
    }
}

/// A homogeneous result table: named columns, rows of cells.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    columns: Vec<String>,
    rows: Vec<Vec<Cell>>,
}

/// Output encoding for a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(Error::config(format!(
                "unknown format {other:?} (expected csv or json)"
            ))),
        }
    }
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<Cell>] {
        &self.rows
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row arity must match the header"
        );
        self.rows.push(row);
    }

    /// Floats at 17 significant digits: exact round-trip through text.
    fn float_text(v: f64) -> String {
        format!("{v:.16e}")
    }

    fn cell_text(cell: &Cell) -> String {
        match cell {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => Self::float_text(*v),
            Cell::Rational(r) => format!("{}/{}", r.numer(), r.denom()),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer
            .write_record(&self.columns)
            .map_err(|e| Error::config(e.to_string()))?;
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(Self::cell_text).collect();
            writer
                .write_record(&fields)
                .map_err(|e| Error::config(e.to_string()))?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| Error::config(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::config(e.to_string()))
    }

    fn bigint_json(v: &BigInt) -> Value {
        use num::ToPrimitive;
        match v.to_i64() {
            Some(small) => json!(small),
            None => json!(v.to_string()),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut map = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    let value = match cell {
                        Cell::Int(v) => {
                            if let Ok(small) = i64::try_from(*v) {
                                json!(small)
                            } else {
                                json!(v.to_string())
                            }
                        }
                        Cell::Float(v) => json!(v),
                        Cell::Rational(r) => json!({
                            "num": Self::bigint_json(r.numer()),
                            "den": Self::bigint_json(r.denom()),
                        }),
                        Cell::Text(s) => json!(s),
                        Cell::Bool(b) => json!(b),
                    };
                    map.insert(name.clone(), value);
                }
                Value::Object(map)
            })
            .collect();
        serde_json::to_string_pretty(&Value::Array(rows)).map_err(|e| Error::config(e.to_string()))
    }

    /// Inverse of [`Table::to_json`].
    pub fn from_json(text: &str, columns: &[&str]) -> Result<Table> {
        let parsed: Value =
            serde_json::from_str(text).map_err(|e| Error::config(e.to_string()))?;
        let Value::Array(items) = parsed else {
            return Err(Error::config("expected a JSON array of row objects"));
        };
        let mut table = Table::new(columns);
        for item in items {
            let Value::Object(map) = item else {
                return Err(Error::config("expected row objects"));
            };
            let row = columns
                .iter()
                .map(|&name| {
                    let value = map
                        .get(name)
                        .ok_or_else(|| Error::config(format!("missing column {name}")))?;
                    Self::cell_from_json(value)
                })
                .collect::<Result<Vec<Cell>>>()?;
            table.push_row(row);
        }
        Ok(table)
    }

    fn bigint_from_json(value: &Value) -> Result<BigInt> {
        match value {
            Value::Number(n) => n
                .as_i64()
                .map(BigInt::from)
                .ok_or_else(|| Error::config("rational part is not an integer")),
            Value::String(s) => s
                .parse()
                .map_err(|_| Error::config(format!("bad integer string {s:?}"))),
            _ => Err(Error::config("rational part must be a number or string")),
        }
    }

    fn cell_from_json(value: &Value) -> Result<Cell> {
        match value {
            Value::Bool(b) => Ok(Cell::Bool(*b)),
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    if !n.to_string().contains('.') {
                        return Ok(Cell::Int(i as i128));
                    }
                }
                Ok(Cell::Float(n.as_f64().ok_or_else(|| {
                    Error::config("unrepresentable number")
                })?))
            }
            Value::Object(map) => {
                let num = map
                    .get("num")
                    .ok_or_else(|| Error::config("rational object missing num"))?;
                let den = map
                    .get("den")
                    .ok_or_else(|| Error::config("rational object missing den"))?;
                Ok(Cell::Rational(BigRational::new(
                    Self::bigint_from_json(num)?,
                    Self::bigint_from_json(den)?,
                )))
            }
            Value::String(s) => {
                // Huge integers are emitted as decimal strings.
                if !s.is_empty() && s.chars().all(|c| c.is_ascii_digit() || c == '-') {
                    if let Ok(v) = s.parse::<i128>() {
                        return Ok(Cell::Int(v));
                    }
                }
                Ok(Cell::Text(s.clone()))
            }
            Value::Null | Value::Array(_) => Err(Error::config("unsupported cell value")),
        }
    }

    /// Inverse of [`Table::to_csv`] for tables produced by this module.
    pub fn from_csv(text: &str) -> Result<Table> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let columns: Vec<String> = reader
            .headers()
            .map_err(|e| Error::config(e.to_string()))?
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut table = Table {
            columns,
            rows: Vec::new(),
        };
        for record in reader.records() {
            let record = record.map_err(|e| Error::config(e.to_string()))?;
            let row = record.iter().map(Self::cell_from_text).collect();
            table.rows.push(row);
        }
        Ok(table)
    }

    fn cell_from_text(field: &str) -> Cell {
        if field == "true" {
            return Cell::Bool(true);
        }
        if field == "false" {
            return Cell::Bool(false);
        }
        if let Ok(v) = field.parse::<i128>() {
            return Cell::Int(v);
        }
        if let Some((num, den)) = field.split_once('/') {
            if let (Ok(num), Ok(den)) = (num.parse::<BigInt>(), den.parse::<BigInt>()) {
                if den != BigInt::from(0) {
                    return Cell::Rational(BigRational::new(num, den));
                }
            }
        }
        if field.contains(['e', 'E', '.']) {
            if let Ok(v) = field.parse::<f64>() {
                return Cell::Float(v);
            }
        }
        Cell::Text(field.to_string())
    }
}

/// Writes the table in the requested format to a file or stdout.
pub fn emit_report(table: &Table, format: Format, destination: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Csv => table.to_csv()?,
        Format::Json => {
            let mut t = table.to_json()?;
            t.push('\n');
            t
        }
    };
    match destination {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}
