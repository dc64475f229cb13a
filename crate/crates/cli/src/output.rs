//! One report shape rendered three ways: aligned text, CSV and JSON
//! (`{params, results, meta: {version, ..}}`).

use serde_json::{json, Map, Value};
use shadowlab::{ExactRatio, Family, KSet};

use crate::Format;

pub type Row = Map<String, Value>;

#[derive(Debug, Default)]
pub struct Report {
    pub params: Row,
    pub results: Vec<Row>,
    pub meta: Row,
    /// Rendering for `--format text`.
    pub text: String,
}

impl Report {
    pub fn render(&self, format: Format) -> Result<String, String> {
        Ok(match format {
            Format::Text => self.text.clone(),
            Format::Json => {
                let mut meta = Row::new();
                meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
                meta.extend(self.meta.clone());
                let doc = json!({
                    "params": self.params,
                    "results": self.results,
                    "meta": meta,
                });
                let mut s = serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?;
                s.push('\n');
                s
            }
            Format::Csv => csv_rows(&self.results)?,
        })
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn csv_rows(rows: &[Row]) -> Result<String, String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Some(first) = rows.first() {
        w.write_record(first.keys()).map_err(|e| e.to_string())?;
        for row in rows {
            w.write_record(row.values().map(cell)).map_err(|e| e.to_string())?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}

pub fn ratio(r: &ExactRatio) -> Value {
    Value::String(r.to_string())
}

/// Approximate decimal form, labelled as such wherever it is shown.
pub fn approx(r: &ExactRatio) -> String {
    format!("{:.10}", r.to_f64())
}

pub fn set_value(m: KSet) -> Value {
    Value::Array(m.elements().map(|e| json!(e)).collect())
}

pub fn family_value(f: &Family) -> Value {
    Value::Array(f.iter().map(|&m| set_value(m)).collect())
}

/// Aligned `key: value` lines.
pub fn key_values(pairs: &[(String, String)]) -> String {
    let width = pairs.iter().map(|(k, _)| k.chars().count() + 1).max().unwrap_or(0);
    pairs
        .iter()
        .map(|(k, v)| format!("{:<width$}  {v}\n", format!("{k}:")))
        .collect()
}
