//! JSON rendering with every float printed at 17 significant digits.

use num_complex::Complex64;
use serde::{Serialize, Serializer};
use serde_json::Value;

pub fn complex_pair<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

pub fn format_float(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        "null".to_string()
    }
}

/// Renders `value`; `indent = None` gives the compact single-line form.
pub fn to_json<T: Serialize>(value: &T, indent: Option<usize>) -> serde_json::Result<String> {
    let v = serde_json::to_value(value)?;
    let mut out = String::new();
    write_value(&v, indent, 0, &mut out);
    Ok(out)
}

fn newline(out: &mut String, indent: Option<usize>, level: usize) {
    if let Some(width) = indent {
        out.push('\n');
        out.extend(std::iter::repeat_n(' ', width * level));
    }
}

fn write_value(v: &Value, indent: Option<usize>, level: usize, out: &mut String) {
    match v {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                out.push_str(&format_float(n.as_f64().expect("f64")));
            } else {
                out.push_str(&n.to_string());
            }
        }
        Value::String(s) => out.push_str(&Value::String(s.clone()).to_string()),
        Value::Array(items) => {
            out.push('[');
            for (k, item) in items.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                    if indent.is_none() {
                        out.push(' ');
                    }
                }
                newline(out, indent, level + 1);
                write_value(item, indent, level + 1, out);
            }
            if !items.is_empty() {
                newline(out, indent, level);
            }
            out.push(']');
        }
        Value::Object(map) => {
            out.push('{');
            for (k, (key, item)) in map.iter().enumerate() {
                if k > 0 {
                    out.push(',');
                    if indent.is_none() {
                        out.push(' ');
                    }
                }
                newline(out, indent, level + 1);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                write_value(item, indent, level + 1, out);
            }
            if !map.is_empty() {
                newline(out, indent, level);
            }
            out.push('}');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn floats_keep_seventeen_digits() {
        let s = to_json(&json!({"x": 0.1, "n": 3, "ok": true, "z": [1.5, -0.25]}), None).unwrap();
        assert_eq!(
            s,
            r#"{"n": 3, "ok": true, "x": 1.0000000000000001e-1, "z": [1.5000000000000000e0, -2.5000000000000000e-1]}"#
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["x"].as_f64().unwrap(), 0.1);
    }

    #[test]
    fn indented_output_parses() {
        let s = to_json(&json!({"a": {"b": [1.0, 2.0]}, "e": []}), Some(2)).unwrap();
        assert!(s.contains("\n    \"b\""));
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["a"]["b"][1].as_f64(), Some(2.0));
    }

    #[test]
    fn complex_as_pair() {
        #[derive(Serialize)]
        struct P {
            #[serde(serialize_with = "complex_pair")]
            z: Complex64,
        }
        let s = to_json(&P { z: Complex64::new(1.0, -0.5) }, None).unwrap();
        assert_eq!(s, r#"{"z": [1.0000000000000000e0, -5.0000000000000000e-1]}"#);
    }
}
