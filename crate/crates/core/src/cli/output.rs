use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: u32 = 1;

/// Nine significant digits, exponent form, independent of locale.
pub fn fmt_num(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.8e}")
    } else if x.is_nan() {
        "nan".into()
    } else if x > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

/// `x` rounded to nine significant digits.
pub fn round9(x: f64) -> f64 {
    if x.is_finite() {
        fmt_num(x).parse().unwrap_or(x)
    } else {
        x
    }
}

fn round_tree(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round9).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_tree),
        Value::Object(map) => map.values_mut().for_each(round_tree),
        _ => {}
    }
}

/// `{"schema_version": 1, "command": ..., "data": ...}`, floats at nine digits.
pub fn json_document<T: Serialize>(command: &str, data: &T) -> Result<String> {
    let mut data = serde_json::to_value(data).map_err(|e| Error::invalid("output", e.to_string()))?;
    round_tree(&mut data);
    let doc = serde_json::json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "data": data,
    });
    let mut s = serde_json::to_string_pretty(&doc).map_err(|e| Error::invalid("output", e.to_string()))?;
    s.push('\n');
    Ok(s)
}

/// A header and rows of already formatted cells.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self { header, rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        let err = |e: csv::Error| Error::invalid("output", e.to_string());
        w.write_record(&self.header).map_err(err)?;
        for r in &self.rows {
            w.write_record(r).map_err(err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::invalid("output", e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::invalid("output", e.to_string()))
    }
}

pub fn write_output(text: &str, out: Option<&Path>, stdout: &mut dyn Write) -> Result<()> {
    let io_err = |path: &Path, e: io::Error| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    };
    match out {
        Some(path) => {
            let mut f = File::create(path).map_err(|e| io_err(path, e))?;
            f.write_all(text.as_bytes()).map_err(|e| io_err(path, e))
        }
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| io_err(Path::new("<stdout>"), e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nine_digits() {
        assert_eq!(fmt_num(3_151_491.007_953_578), "3.15149101e6");
        assert_eq!(fmt_num(-0.25), "-2.50000000e-1");
        assert_eq!(round9(1.0 / 3.0), 0.333333333);
    }

    #[test]
    fn csv_quotes_commas_and_uses_lf() {
        let mut t = Table::new(vec!["a", "b"]);
        t.push(vec!["x, y".into(), "1".into()]);
        assert_eq!(t.to_csv().unwrap(), "a,b\n\"x, y\",1\n");
    }

    #[test]
    fn json_schema_and_rounding() {
        let s = json_document("t", &vec![1.0 / 3.0]).unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["data"][0].as_f64().unwrap(), 0.333333333);
    }
}
