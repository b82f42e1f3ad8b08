//! Record serialisation: CSV with a header row or one JSON object per line.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::args::Format;

/// Version of the JSON record layout.
pub const SCHEMA_VERSION: u32 = 1;

/// A record that knows its CSV layout; the JSON form is its serde serialisation.
pub trait Record: Serialize {
    fn columns() -> &'static [&'static str];
}

/// Scientific notation with 15 significant digits; `nan` for missing values.
pub fn sci(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.14e}")
    }
}

fn csv_cell(v: &Value) -> String {
    let raw = match v {
        Value::Null => "nan".to_string(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match n.as_f64() {
            Some(x) if n.is_f64() => sci(x),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(csv_cell).collect::<Vec<_>>().join(";"),
        Value::Object(_) => v.to_string(),
    };
    if raw.contains([',', '"', '\n']) {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw
    }
}

pub fn render<R: Record>(records: &[R], format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str(&R::columns().join(","));
            out.push('\n');
            for r in records {
                let v = serde_json::to_value(r).expect("records serialise");
                let cells: Vec<String> = R::columns()
                    .iter()
                    .map(|c| csv_cell(v.get(*c).unwrap_or(&Value::Null)))
                    .collect();
                out.push_str(&cells.join(","));
                out.push('\n');
            }
        }
        Format::Json => {
            for r in records {
                let mut v = serde_json::to_value(r).expect("records serialise");
                if let Value::Object(map) = &mut v {
                    map.insert("schema".into(), Value::from(SCHEMA_VERSION));
                }
                out.push_str(&v.to_string());
                out.push('\n');
            }
        }
    }
    out
}

pub fn emit(text: &str, path: Option<&Path>) -> io::Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            w.write_all(text.as_bytes())?;
            w.flush()
        }
        None => io::stdout().lock().write_all(text.as_bytes()),
    }
}

/// Floats in JSON records: finite values as numbers, anything else as `null`.
pub fn finite_or_null<S: serde::Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else {
        s.serialize_none()
    }
}
