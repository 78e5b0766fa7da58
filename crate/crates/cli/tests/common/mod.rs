//! A JSON Schema subset large enough for the schemas under docs/:
//! `$ref` into `$defs`, `type`, `const`, `enum`, `oneOf`, `required`,
//! `properties`, `additionalProperties: false`, `items` and the numeric and
//! length bounds. `pattern` is not checked.
#![allow(dead_code)]

use std::path::PathBuf;

use serde_json::Value;

pub fn docs() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs")
}

pub fn load_schema(name: &str) -> Value {
    let text = std::fs::read_to_string(docs().join(name)).expect("schema file");
    serde_json::from_str(&text).expect("schema is JSON")
}

/// Every violation as `path: message`; empty when `value` conforms.
pub fn validate(schema: &Value, value: &Value) -> Vec<String> {
    let mut errors = Vec::new();
    check(schema, schema, value, "$", &mut errors);
    errors
}

fn type_matches(t: &str, v: &Value) -> bool {
    match t {
        "object" => v.is_object(),
        "array" => v.is_array(),
        "string" => v.is_string(),
        "boolean" => v.is_boolean(),
        "null" => v.is_null(),
        "number" => v.is_number(),
        "integer" => v.is_i64() || v.is_u64(),
        _ => false,
    }
}

fn check(root: &Value, s: &Value, v: &Value, path: &str, errors: &mut Vec<String>) {
    if let Some(r) = s.get("$ref").and_then(Value::as_str) {
        let name = r.strip_prefix("#/$defs/").expect("local $ref");
        check(root, &root["$defs"][name], v, path, errors);
        return;
    }
    match s.get("type") {
        Some(Value::String(t)) if !type_matches(t, v) => {
            errors.push(format!("{path}: expected {t}, got {v}"));
            return;
        }
        Some(Value::Array(ts)) if !ts.iter().any(|t| type_matches(t.as_str().unwrap_or(""), v)) => {
            errors.push(format!("{path}: expected one of {ts:?}, got {v}"));
            return;
        }
        _ => {}
    }
    if let Some(c) = s.get("const") {
        if c != v {
            errors.push(format!("{path}: expected {c}, got {v}"));
        }
    }
    if let Some(Value::Array(options)) = s.get("enum") {
        if !options.contains(v) {
            errors.push(format!("{path}: {v} not in {options:?}"));
        }
    }
    if let Some(Value::Array(alts)) = s.get("oneOf") {
        let matching = alts.iter().filter(|a| validate_in(root, a, v, path).is_empty()).count();
        if matching != 1 {
            errors.push(format!("{path}: {matching} of {} alternatives match", alts.len()));
        }
    }
    if let Some(x) = v.as_f64() {
        if let Some(m) = s.get("minimum").and_then(Value::as_f64) {
            if x < m {
                errors.push(format!("{path}: {x} < {m}"));
            }
        }
        if let Some(m) = s.get("exclusiveMinimum").and_then(Value::as_f64) {
            if x <= m {
                errors.push(format!("{path}: {x} ≤ {m}"));
            }
        }
    }
    if let (Some(t), Some(m)) = (v.as_str(), s.get("minLength").and_then(Value::as_u64)) {
        if (t.chars().count() as u64) < m {
            errors.push(format!("{path}: shorter than {m}"));
        }
    }
    if let Value::Object(map) = v {
        if let Some(Value::Array(req)) = s.get("required") {
            for k in req.iter().filter_map(Value::as_str) {
                if !map.contains_key(k) {
                    errors.push(format!("{path}: missing {k}"));
                }
            }
        }
        let props = s.get("properties").and_then(Value::as_object);
        for (k, x) in map {
            match props.and_then(|p| p.get(k)) {
                Some(ps) => check(root, ps, x, &format!("{path}.{k}"), errors),
                None if s.get("additionalProperties") == Some(&Value::Bool(false)) => {
                    errors.push(format!("{path}: unexpected property {k}"))
                }
                None => {}
            }
        }
    }
    if let Value::Array(items) = v {
        if let Some(m) = s.get("minItems").and_then(Value::as_u64) {
            if (items.len() as u64) < m {
                errors.push(format!("{path}: fewer than {m} items"));
            }
        }
        if let Some(m) = s.get("maxItems").and_then(Value::as_u64) {
            if items.len() as u64 > m {
                errors.push(format!("{path}: more than {m} items"));
            }
        }
        if let Some(is) = s.get("items") {
            for (i, x) in items.iter().enumerate() {
                check(root, is, x, &format!("{path}[{i}]"), errors);
            }
        }
    }
}

fn validate_in(root: &Value, s: &Value, v: &Value, path: &str) -> Vec<String> {
    let mut errors = Vec::new();
    check(root, s, v, path, &mut errors);
    errors
}
