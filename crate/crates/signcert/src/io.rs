//! Signomial, simplex and certificate file formats.
//!
//! Text (`.sig`): one term per line, `coeff e1 e2 ... en`, whitespace
//! separated; `#` starts a comment. The dimension is taken from the first
//! term line.
//!
//! JSON (`.json`): `{"n": 2, "terms": [{"c": -1.0, "mu": [4, 5]}, ...]}`.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use signcert_core::certify::Certificate;
use signcert_core::simplex::SimplexWitness;
use signcert_core::{Error as CoreError, Signomial};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("{path}: {source}")]
    File {
        path: String,
        source: std::io::Error,
    },
    #[error("unrecognized extension for {0} (expected .sig or .json)")]
    Extension(String),
    #[error("certificate schema: {0}")]
    Schema(String),
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonTerm {
    c: f64,
    mu: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonSignomial {
    n: usize,
    terms: Vec<JsonTerm>,
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonSimplex {
    vertices: Vec<Vec<f64>>,
}

pub fn parse_text(src: &str) -> Result<Signomial, IoError> {
    let mut dim = None;
    let mut terms = Vec::new();
    for (idx, raw) in src.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut fields = Vec::new();
        for tok in content.split_whitespace() {
            let value: f64 = tok.parse().map_err(|_| IoError::Parse {
                line,
                message: format!("not a number: {tok:?}"),
            })?;
            if !value.is_finite() {
                return Err(IoError::Parse {
                    line,
                    message: format!("non-finite value {tok:?}"),
                });
            }
            fields.push(value);
        }
        if fields.len() < 2 {
            return Err(IoError::Parse {
                line,
                message: String::from("expected a coefficient followed by at least one exponent"),
            });
        }
        let n = fields.len() - 1;
        match dim {
            None => dim = Some(n),
            Some(d) if d != n => {
                return Err(IoError::Parse {
                    line,
                    message: format!("expected {d} exponents, found {n}"),
                })
            }
            _ => {}
        }
        if fields[0] == 0.0 {
            return Err(IoError::Parse {
                line,
                message: String::from("zero coefficient"),
            });
        }
        terms.push((fields[0], fields[1..].to_vec(), line));
    }
    let dim = dim.ok_or(IoError::Parse {
        line: src.lines().count().max(1),
        message: String::from("no terms"),
    })?;
    let f = Signomial::new(dim, terms.iter().map(|(c, e, _)| (*c, e.clone())))?;
    if f.is_empty() {
        return Err(IoError::Core(CoreError::EmptySignomial));
    }
    Ok(f)
}

pub fn to_text(f: &Signomial) -> String {
    let mut out = String::new();
    for t in f.terms() {
        let _ = write!(out, "{}", t.coeff);
        for e in &t.exponent {
            let _ = write!(out, " {e}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_json(src: &str) -> Result<Signomial, IoError> {
    let parsed: JsonSignomial = serde_json::from_str(src)?;
    let f = Signomial::new(parsed.n, parsed.terms.into_iter().map(|t| (t.c, t.mu)))?;
    if f.is_empty() {
        return Err(IoError::Core(CoreError::EmptySignomial));
    }
    Ok(f)
}

pub fn to_json(f: &Signomial) -> String {
    let doc = JsonSignomial {
        n: f.dim(),
        terms: f
            .terms()
            .iter()
            .map(|t| JsonTerm {
                c: t.coeff,
                mu: t.exponent.clone(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).expect("finite values serialize")
}

fn read(path: &Path) -> Result<String, IoError> {
    fs::read_to_string(path).map_err(|source| IoError::File {
        path: path.display().to_string(),
        source,
    })
}

/// Reads `.sig` text or `.json`, by extension.
pub fn read_signomial(path: &Path) -> Result<Signomial, IoError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("sig") => parse_text(&read(path)?),
        Some("json") => parse_json(&read(path)?),
        _ => Err(IoError::Extension(path.display().to_string())),
    }
}

/// `{"vertices": [[..], ..]}`
pub fn parse_simplex(src: &str) -> Result<SimplexWitness, IoError> {
    let parsed: JsonSimplex = serde_json::from_str(src)?;
    Ok(SimplexWitness::from_vertices(parsed.vertices)?)
}

pub fn read_simplex(path: &Path) -> Result<SimplexWitness, IoError> {
    parse_simplex(&read(path)?)
}

pub fn simplex_to_json(p: &SimplexWitness) -> String {
    serde_json::to_string(&JsonSimplex {
        vertices: p.vertices.clone(),
    })
    .expect("finite values serialize")
}

/// Serializes a certificate and checks the result against the fixed schema.
pub fn certificate_to_json(cert: &Certificate) -> Result<Value, IoError> {
    let value = serde_json::to_value(cert)?;
    validate_certificate_json(&value)?;
    Ok(value)
}

pub fn validate_certificate_json(v: &Value) -> Result<(), IoError> {
    let schema = |m: &str| IoError::Schema(m.to_string());
    let obj = v.as_object().ok_or_else(|| schema("not an object"))?;
    match obj.get("target").and_then(Value::as_str) {
        Some("negative" | "positive") => {}
        _ => return Err(schema("target must be \"negative\" or \"positive\"")),
    }
    match obj.get("bound") {
        Some(Value::Number(n)) if n.as_u64().is_some() => {}
        Some(Value::String(s)) if s == "unknown" => {}
        _ => return Err(schema("bound must be a count or \"unknown\"")),
    }
    if obj.get("rule").and_then(Value::as_str).is_none() {
        return Err(schema("rule must be a string"));
    }
    let witness = obj
        .get("witness")
        .and_then(Value::as_object)
        .ok_or_else(|| schema("witness must be an object"))?;
    if witness.get("kind").and_then(Value::as_str).is_none() {
        return Err(schema("witness needs a kind"));
    }
    if has_non_finite(&Value::Object(witness.clone())) {
        return Err(schema("witness holds a non-finite number"));
    }
    let diags = obj
        .get("diagnostics")
        .and_then(Value::as_array)
        .ok_or_else(|| schema("diagnostics must be an array"))?;
    if !diags.iter().all(Value::is_string) {
        return Err(schema("diagnostics must be strings"));
    }
    if obj.len() != 5 {
        return Err(schema("unexpected fields"));
    }
    Ok(())
}

// serde_json writes NaN and infinities as null
fn has_non_finite(v: &Value) -> bool {
    match v {
        Value::Null => true,
        Value::Array(a) => a.iter().any(has_non_finite),
        Value::Object(o) => o.values().any(has_non_finite),
        _ => false,
    }
}
