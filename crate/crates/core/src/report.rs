//! Canonical JSON rendering: keys sorted (numeric keys numerically), with a
//! helper to drop timing fields before comparing runs.

use std::cmp::Ordering;

use serde::Serialize;
use serde_json::{Map, Value};

pub const TIMING_FIELDS: &[&str] = &["elapsed_ms", "wall_time_ms"];

fn key_order(a: &str, b: &str) -> Ordering {
    match (a.parse::<u64>(), b.parse::<u64>()) {
        (Ok(x), Ok(y)) => x.cmp(&y),
        (Ok(_), Err(_)) => Ordering::Less,
        (Err(_), Ok(_)) => Ordering::Greater,
        _ => a.cmp(b),
    }
}

pub fn canonicalize(value: Value) -> Value {
    match value {
        Value::Object(map) => {
            let mut entries: Vec<(String, Value)> = map.into_iter().collect();
            entries.sort_by(|a, b| key_order(&a.0, &b.0));
            Value::Object(
                entries
                    .into_iter()
                    .map(|(k, v)| (k, canonicalize(v)))
                    .collect::<Map<_, _>>(),
            )
        }
        Value::Array(items) => Value::Array(items.into_iter().map(canonicalize).collect()),
        other => other,
    }
}

pub fn to_canonical_value<T: Serialize>(item: &T) -> Value {
    canonicalize(serde_json::to_value(item).expect("report types serialize"))
}

pub fn to_canonical_json<T: Serialize>(item: &T) -> String {
    serde_json::to_string_pretty(&to_canonical_value(item)).expect("value serializes")
}

/// Removes every timing field, at any depth.
pub fn strip_timing(value: &mut Value) {
    match value {
        Value::Object(map) => {
            for f in TIMING_FIELDS {
                map.remove(*f);
            }
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}
