//! JSON encoding that never emits NaN or ±∞: non-finite numbers become
//! `null`, and the response carries `numerical_error: true` plus the paths
//! of the affected fields.

use serde::Serialize;
use serde_value::Value;

/// Dotted paths (`curve[3].zpl_nm`) of every non-finite float in `v`.
pub fn non_finite_paths<T: Serialize>(v: &T) -> Vec<String> {
    let mut out = Vec::new();
    if let Ok(value) = serde_value::to_value(v) {
        walk(&value, String::new(), &mut out);
    }
    out
}

fn walk(v: &Value, path: String, out: &mut Vec<String>) {
    match v {
        Value::F64(x) if !x.is_finite() => out.push(path),
        Value::F32(x) if !x.is_finite() => out.push(path),
        Value::Option(Some(inner)) | Value::Newtype(inner) => walk(inner, path, out),
        Value::Seq(items) => {
            for (i, item) in items.iter().enumerate() {
                walk(item, format!("{path}[{i}]"), out);
            }
        }
        Value::Map(map) => {
            for (k, item) in map {
                let key = match k {
                    Value::String(s) => s.clone(),
                    other => format!("{other:?}"),
                };
                let p = if path.is_empty() { key } else { format!("{path}.{key}") };
                walk(item, p, out);
            }
        }
        _ => {}
    }
}

/// Serializes a response object and adds the `numerical_error` flag
/// (and `non_finite_fields` when set).
pub fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    let bad = non_finite_paths(v);
    // serde_json writes non-finite floats as null.
    let mut json = serde_json::to_value(v).unwrap_or(serde_json::Value::Null);
    if let serde_json::Value::Object(map) = &mut json {
        map.insert("numerical_error".into(), (!bad.is_empty()).into());
        if !bad.is_empty() {
            map.insert("non_finite_fields".into(), bad.into());
        }
    }
    json
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Point {
        x: f64,
        ys: Vec<f64>,
        z: Option<f64>,
    }

    #[test]
    fn nan_becomes_null_with_flag() {
        let p = Point {
            x: f64::NAN,
            ys: vec![1.0, f64::INFINITY],
            z: None,
        };
        let j = to_json(&p);
        assert!(j["x"].is_null());
        assert!(j["ys"][1].is_null());
        assert_eq!(j["numerical_error"], true);
        assert_eq!(j["non_finite_fields"], serde_json::json!(["x", "ys[1]"]));
        let text = serde_json::to_string(&j).unwrap();
        assert!(!text.contains("NaN") && !text.contains("inf"));
    }

    #[test]
    fn finite_response_is_flagged_clean() {
        let j = to_json(&Point { x: 1.0, ys: vec![], z: Some(2.0) });
        assert_eq!(j["numerical_error"], false);
        assert!(j.get("non_finite_fields").is_none());
    }
}
