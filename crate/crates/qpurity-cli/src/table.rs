//! Schema-stable tabular output: fixed column names and order, CSV with 17
//! significant digits, JSON as an array of per-row objects whose keys mirror
//! the CSV columns.

use std::io::Write;
use std::path::Path;

use serde_json::{Map, Number, Value};

use crate::{CliError, CliResult, OutputFormat};

/// One table cell. `Missing` renders as `nan` in CSV and `null` in JSON
/// (used where a conditional quantity is undefined because the outcome has
/// zero probability).
#[derive(Clone, Copy, Debug)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Bool(bool),
    Missing,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Cell {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Cell {
        x.map_or(Cell::Missing, Cell::Num)
    }
}

/// 17 significant digits, locale-independent: enough to reproduce the exact
/// binary double on re-parse.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) if x.is_nan() => "nan".into(),
            Cell::Num(x) => fmt17(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Missing => "nan".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(n) => Value::Number((*n).into()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Missing => Value::Null,
        }
    }
}

pub struct Table {
    pub columns: &'static [&'static str],
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &'static [&'static str]) -> Table {
        Table { columns, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.render_csv(),
            OutputFormat::Json => self.render_json(),
        }
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
        out
    }

    fn render_json(&self) -> String {
        let array: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (name, cell) in self.columns.iter().zip(row) {
                    obj.insert((*name).to_string(), cell.json());
                }
                Value::Object(obj)
            })
            .collect();
        let mut text =
            serde_json::to_string_pretty(&Value::Array(array)).expect("in-memory serialization");
        text.push('\n');
        text
    }
}

/// Write `text` to `path`, mapping failures to exit code 4 with the path
/// named in the message.
pub fn write_file(path: &Path, text: &str) -> CliResult {
    std::fs::write(path, text)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}

/// Write to the file named by `out`, or to stdout when `out` is None.
pub fn write_out(out: Option<&Path>, text: &str) -> CliResult {
    match out {
        Some(path) => write_file(path, text),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(format!("cannot write to stdout: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fmt17_round_trips_the_exact_double() {
        let samples = [
            0.0,
            1.0,
            -2.5e17,
            0.1,
            1.0 / 3.0,
            std::f64::consts::PI,
            1e-300,
            f64::MIN_POSITIVE,
        ];
        for x in samples {
            let back: f64 = fmt17(x).parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "lossy for {x:e}");
        }
    }

    #[test]
    fn cell_csv_text_for_every_variant() {
        assert_eq!(Cell::Num(0.5).csv(), "5.0000000000000000e-1");
        assert_eq!(Cell::Num(f64::NAN).csv(), "nan");
        assert_eq!(Cell::Missing.csv(), "nan");
        assert_eq!(Cell::Int(42).csv(), "42");
        assert_eq!(Cell::Bool(true).csv(), "true");
        assert_eq!(Cell::Bool(false).csv(), "false");
    }

    fn two_row_table() -> Table {
        let mut t = Table::new(&["phi", "n", "ok"]);
        t.push(vec![Cell::Num(1.5), Cell::Int(3), Cell::Bool(true)]);
        t.push(vec![Cell::Missing, Cell::Int(0), Cell::Bool(false)]);
        t
    }

    #[test]
    fn csv_render_is_header_plus_one_line_per_row() {
        let text = two_row_table().render(OutputFormat::Csv);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "phi,n,ok");
        assert_eq!(lines[1], "1.5000000000000000e0,3,true");
        assert_eq!(lines[2], "nan,0,false");
    }

    #[test]
    fn json_render_preserves_column_order_and_nulls_missing() {
        let text = two_row_table().render(OutputFormat::Json);
        let rows: Vec<serde_json::Map<String, Value>> = serde_json::from_str(&text).unwrap();
        assert_eq!(rows.len(), 2);
        for row in &rows {
            let keys: Vec<&str> = row.keys().map(String::as_str).collect();
            assert_eq!(keys, ["phi", "n", "ok"], "keys mirror the CSV columns");
        }
        assert_eq!(rows[0]["phi"], Value::from(1.5));
        assert_eq!(rows[1]["phi"], Value::Null, "missing cells become null");
        assert_eq!(rows[1]["ok"], Value::Bool(false));
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn json_render_nulls_non_finite_numbers() {
        let mut t = Table::new(&["x"]);
        t.push(vec![Cell::Num(f64::NAN)]);
        t.push(vec![Cell::Num(f64::INFINITY)]);
        let rows: Vec<Value> = serde_json::from_str(&t.render(OutputFormat::Json)).unwrap();
        assert_eq!(rows[0]["x"], Value::Null);
        assert_eq!(rows[1]["x"], Value::Null);
    }
}
