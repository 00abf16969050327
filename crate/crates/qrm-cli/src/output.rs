//! Result table assembly: CSV rows or a JSON envelope. Numeric output is
//! deterministic for a fixed config; the envelope's `runtime_ms` is the
//! one field exempt from the byte-identical contract.

use serde_json::{json, Value};

/// One evaluated point: input coordinates, output cells, and one error
/// estimate per output cell.
pub struct Row {
    pub inputs: Vec<(&'static str, f64)>,
    pub outputs: Vec<(String, Value)>,
    pub errors: Vec<(String, f64)>,
}

pub struct Table {
    pub command: String,
    pub params: Value,
    pub numerics: Value,
    pub rows: Vec<Row>,
}

fn fmt_f64(v: f64, precision: usize) -> String {
    format!("{v:.*e}", precision.min(17))
}

impl Table {
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::new();
        if let Some(first) = self.rows.first() {
            let mut header: Vec<String> =
                first.inputs.iter().map(|(n, _)| n.to_string()).collect();
            header.extend(first.outputs.iter().map(|(n, _)| n.clone()));
            header.extend(first.errors.iter().map(|(n, _)| format!("{n}_err")));
            out.push_str(&header.join(","));
            out.push('\n');
        }
        for row in &self.rows {
            let mut cells: Vec<String> = row
                .inputs
                .iter()
                .map(|(_, v)| fmt_f64(*v, precision))
                .collect();
            for (_, v) in &row.outputs {
                match v {
                    Value::Number(n) => cells.push(fmt_f64(n.as_f64().unwrap_or(f64::NAN), precision)),
                    other => cells.push(other.to_string().replace(',', ";")),
                }
            }
            for (_, e) in &row.errors {
                cells.push(fmt_f64(*e, precision));
            }
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, runtime_ms: u128) -> Value {
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (n, v) in &row.inputs {
                    obj.insert(n.to_string(), json!(v));
                }
                for (n, v) in &row.outputs {
                    obj.insert(n.clone(), v.clone());
                }
                Value::Object(obj)
            })
            .collect();
        let errors: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = serde_json::Map::new();
                for (n, e) in &row.errors {
                    obj.insert(n.clone(), json!(e));
                }
                Value::Object(obj)
            })
            .collect();
        json!({
            "command": self.command,
            "params": self.params,
            "numerics": self.numerics,
            "results": results,
            "error_estimates": errors,
            "runtime_ms": runtime_ms,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }
}

pub fn complex_cell(v: num_complex::Complex64) -> (Value, Value) {
    (json!(v.re), json!(v.im))
}
