//! Byte-stable renderings of a report. Object keys come out sorted because
//! `serde_json::Map` is ordered.

use serde_json::Value;

pub fn json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

/// One `path = value` line per leaf.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    walk(v, String::new(), &mut out);
    out
}

fn walk(v: &Value, path: String, out: &mut String) {
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                walk(x, p, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                walk(x, format!("{path}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{path} = {s}\n")),
        other => out.push_str(&format!("{path} = {other}\n")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn keys_sorted_and_stable() {
        let v = json!({"b": 1, "a": ["x", {"d": 2, "c": "q-1"}]});
        assert_eq!(json(&v), json(&v.clone()));
        assert_eq!(text(&v), "a[0] = x\na[1].c = q-1\na[1].d = 2\nb = 1\n");
        assert!(json(&v).find("\"a\"").unwrap() < json(&v).find("\"b\"").unwrap());
    }
}
