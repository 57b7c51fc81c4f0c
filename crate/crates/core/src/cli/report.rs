//! Report values and their JSON and CSV renderings.

use num_bigint::{BigInt, BigUint};
use serde_json::{json, Map, Value};

use crate::duality::Provenance;

/// Version of the JSON output layout.
pub const SCHEMA: u64 = 1;

/// Output format of a report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

/// A numeric value with the anchor of the quantity and where it came from.
pub fn num(value: impl Into<Value>, anchor: &str, provenance: Provenance) -> Value {
    json!({
        "value": value.into(),
        "paper_ref": anchor,
        "provenance": provenance.as_str(),
    })
}

/// Exact integers are printed as decimal strings.
pub fn big(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

pub fn ubig(n: &BigUint) -> Value {
    Value::String(n.to_string())
}

/// A result record: named scalar fields plus an optional table of rows.
#[derive(Clone, Debug, Default)]
pub struct Report {
    fields: Map<String, Value>,
    rows: Vec<Map<String, Value>>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, name: &str, value: Value) -> &mut Self {
        self.fields.insert(name.to_string(), value);
        self
    }

    pub fn row(&mut self, row: Map<String, Value>) -> &mut Self {
        self.rows.push(row);
        self
    }

    /// The full JSON document for a command.
    pub fn to_json(&self, command: &str, anchor: &str, seed: Option<u64>, input: &Value) -> String {
        let mut doc = Map::new();
        doc.insert("schema".into(), json!(SCHEMA));
        doc.insert("command".into(), json!(command));
        doc.insert("paper_ref".into(), json!(anchor));
        doc.insert("seed".into(), json!(seed));
        doc.insert("input".into(), input.clone());
        doc.insert("result".into(), Value::Object(self.fields.clone()));
        doc.insert(
            "table".into(),
            Value::Array(self.rows.iter().cloned().map(Value::Object).collect()),
        );
        let mut out = serde_json::to_string_pretty(&Value::Object(doc)).expect("JSON values serialize");
        out.push('\n');
        out
    }

    /// Flat projection: one line per table row (or a single line when there is
    /// no table), row columns first, then the scalar fields.
    pub fn to_csv(&self) -> String {
        let mut header: Vec<String> = self
            .rows
            .first()
            .map(|r| r.keys().cloned().collect())
            .unwrap_or_default();
        header.extend(self.fields.keys().cloned());
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&header).expect("in-memory write");
        let scalars: Vec<String> = self.fields.values().map(cell).collect();
        let empty = Map::new();
        let rows: Vec<&Map<String, Value>> = if self.rows.is_empty() {
            vec![&empty]
        } else {
            self.rows.iter().collect()
        };
        for row in rows {
            let mut record: Vec<String> = row.values().map(cell).collect();
            record.extend(scalars.iter().cloned());
            writer.write_record(&record).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("CSV is UTF-8")
    }
}

/// A CSV cell: the `value` of a numeric field, lists joined by `;`.
fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell).collect::<Vec<_>>().join(";"),
        Value::Object(m) => m.get("value").map(cell).unwrap_or_default(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_projection_repeats_scalars() {
        let mut r = Report::new();
        r.set("lambda", num(2, "fit", Provenance::Computed));
        for n in 0..2u64 {
            let mut row = Map::new();
            row.insert("n".into(), num(n, "level", Provenance::Input));
            row.insert(
                "h".into(),
                num(
                    big(&(num_traits::pow(BigInt::from(10u64), 20) + n)),
                    "h",
                    Provenance::Computed,
                ),
            );
            row.insert("factors".into(), json!([1, 2]));
            r.row(row);
        }
        assert_eq!(
            r.to_csv(),
            "n,h,factors,lambda\n0,100000000000000000000,1;2,2\n1,100000000000000000001,1;2,2\n"
        );
    }

    #[test]
    fn json_has_schema_and_anchors() {
        let mut r = Report::new();
        r.set("mu", num(0, "mu anchor", Provenance::Computed));
        let doc: Value = serde_json::from_str(&r.to_json("iwasawa fit", "fit", None, &json!({}))).unwrap();
        assert_eq!(doc["schema"], json!(1));
        assert_eq!(doc["result"]["mu"]["paper_ref"], json!("mu anchor"));
        assert_eq!(doc["result"]["mu"]["provenance"], json!("computed"));
    }
}
