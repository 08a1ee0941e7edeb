use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

/// Everything a command produced. `results` is command specific; numeric
/// diagnostics inside it carry a `method` tag.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub params: Map<String, Value>,
    pub results: Value,
    pub anchors: Vec<&'static str>,
    pub duration_ms: u64,
}

/// What a command hands back to `main`.
#[derive(Debug)]
pub struct Outcome {
    pub params: Map<String, Value>,
    pub results: Value,
    /// A pass/fail question was answered with "fail".
    pub negative: bool,
}

impl Outcome {
    pub fn new(results: Value) -> Self {
        Outcome { params: Map::new(), results, negative: false }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn negative(mut self, negative: bool) -> Self {
        self.negative = negative;
        self
    }
}

/// Reads input files and remembers their digests.
#[derive(Debug, Default)]
pub struct Inputs {
    pub digests: Vec<InputDigest>,
}

impl Inputs {
    pub fn read(&mut self, path: &Path) -> Result<String, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
        self.digests.push(InputDigest { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        String::from_utf8(bytes).map_err(|_| CliError(format!("{}: not valid UTF-8", path.display())))
    }
}

/// A diagnostic value in the shared `{quantity, value, witness, method}`
/// shape.
pub fn quantity(name: &str, value: impl Into<Value>, witness: Value, method: &str) -> Value {
    serde_json::json!({ "quantity": name, "value": value.into(), "witness": witness, "method": method })
}

pub fn to_json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("reports serialise")
}

pub fn to_text(report: &Report) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", report.command);
    for d in &report.inputs {
        let _ = writeln!(s, "  input {} (sha256 {})", d.path, &d.sha256[..16]);
    }
    for (k, v) in &report.params {
        let _ = writeln!(s, "  {k} = {}", scalar(v));
    }
    render(&mut s, &report.results, 0);
    s
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(t) => t.clone(),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && !x.is_array() || is_flat_list(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn is_flat_list(v: &Value) -> bool {
    matches!(v, Value::Array(items) if items.iter().all(|x| !x.is_object() && !x.is_array()))
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => scalar(other),
    }
}

fn render(s: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_flat(x) {
                    let _ = writeln!(s, "{pad}{k}: {}", inline(x));
                } else {
                    let _ = writeln!(s, "{pad}{k}:");
                    render(s, x, depth + 1);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    let _ = writeln!(s, "{pad}- {}", inline(x));
                } else {
                    let _ = writeln!(s, "{pad}-");
                    render(s, x, depth + 1);
                }
            }
        }
        other => {
            let _ = writeln!(s, "{pad}{}", scalar(other));
        }
    }
}
