//! JSON encodings of outcomes, denotations and results. Entrance and exit
//! indices are 1-based, matching the port names in the source syntax.

use std::collections::BTreeSet;

use compmpg_core::{Outcome, Span, Status, TValue, Weight};
use serde_json::{json, Value};

fn int(v: i128) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

pub fn weight_json(w: &Weight) -> Value {
    json!([int(w.numer()), int(w.denom())])
}

/// `{"exit": j}`, `{"wexit": [num, den, j]}`, `"winE"` or `"winA"`.
pub fn tvalue_json(t: &TValue) -> Value {
    match t {
        Outcome::Exit(j) => json!({ "exit": j + 1 }),
        Outcome::Weighted(r, j) => json!({ "wexit": [int(r.numer()), int(r.denom()), j + 1] }),
        Outcome::WinE => json!("winE"),
        Outcome::WinA => json!("winA"),
    }
}

fn as_index(v: &Value) -> Option<usize> {
    v.as_u64().and_then(|j| usize::try_from(j).ok()).filter(|&j| j >= 1).map(|j| j - 1)
}

fn as_i128(v: &Value) -> Option<i128> {
    v.as_i64().map(i128::from).or_else(|| v.as_str()?.parse().ok())
}

/// Inverse of [`tvalue_json`].
pub fn tvalue_from_json(v: &Value) -> Option<TValue> {
    match v {
        Value::String(s) if s == "winE" => Some(Outcome::WinE),
        Value::String(s) if s == "winA" => Some(Outcome::WinA),
        Value::Object(m) if m.len() == 1 => {
            if let Some(j) = m.get("exit") {
                return Some(Outcome::Exit(as_index(j)?));
            }
            let w = m.get("wexit")?.as_array()?;
            let [n, d, j] = w.as_slice() else { return None };
            let (n, d) = (as_i128(n)?, as_i128(d)?);
            if d <= 0 {
                return None;
            }
            Some(Outcome::Weighted(Weight::new(n, d), as_index(j)?))
        }
        _ => None,
    }
}

/// A projected denotation `[[TValue, ...], ...]` in canonical set order.
pub fn projection_json(p: &BTreeSet<BTreeSet<TValue>>) -> Value {
    Value::Array(p.iter().map(|s| Value::Array(s.iter().map(tvalue_json).collect())).collect())
}

pub fn entrance_json(i: usize, port: &str, status: Status, denotation: Option<&BTreeSet<BTreeSet<TValue>>>) -> Value {
    let mut v = json!({ "entrance": i + 1, "port": port, "status": status.name() });
    if let Some(d) = denotation {
        v["denotation"] = projection_json(d);
    }
    v
}

pub fn error_json(kind: &str, message: &str, span: Option<Span>) -> Value {
    let mut v = json!({ "error": kind, "message": message });
    if let Some(s) = span.filter(|s| s.line > 0) {
        v["line"] = json!(s.line);
        v["col"] = json!(s.col);
    }
    v
}
