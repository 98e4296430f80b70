use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::CliError;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// A flat table for CSV output.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, header: &[&str]) -> Self {
        Table { name: name.into(), header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(Vec::new());
        let io = |e: csv::Error| CliError::Io(std::io::Error::other(e));
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(std::io::Error::other(e.to_string())))?;
        Ok(String::from_utf8(bytes).unwrap_or_default())
    }
}

/// Payload of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub results: Value,
    pub tables: Vec<Table>,
}

/// Command echo, inputs digest, results and version; the duration only when requested.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub results: Value,
    pub duration_s: Option<f64>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut map = serde_json::Map::new();
        map.insert("command".into(), Value::String(self.command.clone()));
        map.insert("inputs_digest".into(), Value::String(self.inputs_digest.clone()));
        map.insert("results".into(), self.results.clone());
        map.insert("version".into(), Value::String(VERSION.into()));
        if let Some(d) = self.duration_s {
            map.insert("duration_s".into(), num(d));
        }
        let mut out = String::new();
        write_canonical(&Value::Object(map), &mut out);
        out.push('\n');
        out
    }
}

/// SHA-256 over the command echo and the bytes of every input file.
pub fn inputs_digest(command: &str, files: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    h.update(command.as_bytes());
    for f in files {
        h.update([0u8]);
        h.update(f);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// JSON number; non-finite values become `null`.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|&x| num(x)).collect())
}

/// Shortest round-trip decimal, as in the JSON output.
pub fn fmt_f64(x: f64) -> String {
    if x.is_finite() {
        serde_json::to_string(&x).unwrap_or_default()
    } else {
        String::new()
    }
}

/// Compact JSON with object keys in sorted order, independent of map implementation.
pub fn write_canonical(v: &Value, out: &mut String) {
    match v {
        Value::Array(items) => {
            out.push('[');
            for (i, x) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_canonical(x, out);
            }
            out.push(']');
        }
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push('{');
            for (i, k) in keys.into_iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                out.push_str(&serde_json::to_string(k).unwrap_or_default());
                out.push(':');
                write_canonical(&map[k], out);
            }
            out.push('}');
        }
        _ => out.push_str(&serde_json::to_string(v).unwrap_or_default()),
    }
}

/// Tables joined into one text, each preceded by a `# name` line when there are several.
pub fn tables_to_csv(tables: &[Table]) -> Result<String, CliError> {
    if let [t] = tables {
        return t.to_csv();
    }
    let mut out = String::new();
    for (i, t) in tables.iter().enumerate() {
        if i > 0 {
            out.push_str("\r\n");
        }
        out.push_str(&format!("# {}\r\n", t.name));
        out.push_str(&t.to_csv()?);
    }
    Ok(out)
}
