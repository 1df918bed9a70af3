//! Plain-text rendering of a JSON report: one `key: value` per line,
//! nested blocks indented.

use serde_json::Value;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        // coordinate vectors and numeric lists stay on one line
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::Bool(_))) => {
            Some(a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
        }
        Value::Array(a) if a.iter().all(|x| x.as_str().is_some_and(|s| !s.contains(' '))) => {
            Some(a.iter().filter_map(|x| x.as_str()).collect::<Vec<_>>().join(", "))
        }
        Value::Object(o) if o.is_empty() => Some("{}".into()),
        _ => None,
    }
}

fn walk(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        walk(x, indent + 1, out);
                    }
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        walk(x, indent + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

pub fn text(report: &Value) -> String {
    let mut out = String::new();
    walk(report, 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn nested_blocks() {
        let v = json!({ "a": 1, "b": { "c": "u^2", "d": [1, 2] }, "e": [{ "f": true }], "g": ["0", "1/2"], "h": ["u + 1"] });
        assert_eq!(text(&v), "a: 1\nb:\n  c: u^2\n  d: 1, 2\ne:\n  -\n    f: true\ng: 0, 1/2\nh:\n  - u + 1\n");
    }
}
