//! The JSON record every invocation prints, and its plain-text rendering.

use serde::Serialize;
use serde_json::{Map, Value};

/// Where a number came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    ClosedForm,
    Numeric,
    Exact,
}

/// A numeric payload together with its provenance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Tagged<T> {
    pub value: T,
    pub provenance: Provenance,
}

pub fn closed_form(value: f64) -> Tagged<f64> {
    Tagged {
        value,
        provenance: Provenance::ClosedForm,
    }
}

pub fn numeric(value: f64) -> Tagged<f64> {
    Tagged {
        value,
        provenance: Provenance::Numeric,
    }
}

pub fn exact(value: String) -> Tagged<String> {
    Tagged {
        value,
        provenance: Provenance::Exact,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub warnings: Vec<Value>,
    pub status: Status,
    pub error_kind: Option<String>,
    /// Human-readable error text.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
}

impl OutputRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("records contain only finite JSON values")
    }

    /// `key  value  [provenance]` lines, with nested objects flattened to dotted keys.
    pub fn to_plain(&self) -> String {
        let mut rows = vec![
            ("command".to_string(), self.command.clone()),
            (
                "status".to_string(),
                match self.status {
                    Status::Ok => "ok".to_string(),
                    Status::Error => "error".to_string(),
                },
            ),
        ];
        if let Some(kind) = &self.error_kind {
            rows.push(("error_kind".into(), kind.clone()));
        }
        if let Some(message) = &self.message {
            rows.push(("message".into(), message.clone()));
        }
        flatten("", &self.result, &mut rows);
        for (i, w) in self.warnings.iter().enumerate() {
            flatten(&format!("warning.{i}"), w, &mut rows);
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in rows {
            out.push_str(&format!("{k:<width$}  {v}\n"));
        }
        out
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) if is_tagged(map) => {
            rows.push((prefix.to_string(), format!("{}  [{}]", scalar(&map["value"]), scalar(&map["provenance"]))));
        }
        Value::Object(map) => {
            for (k, inner) in map {
                flatten(&join(k), inner, rows);
            }
        }
        Value::Array(items) => {
            for (i, inner) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), inner, rows);
            }
        }
        Value::Null if prefix.is_empty() => {}
        other => rows.push((prefix.to_string(), scalar(other))),
    }
}

fn is_tagged(map: &Map<String, Value>) -> bool {
    map.len() == 2 && map.contains_key("value") && map.contains_key("provenance")
}
