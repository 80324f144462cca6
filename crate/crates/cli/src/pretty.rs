use std::fmt::Write;

use serde_json::Value;

/// `[[a, b], [c, d]]` as `[a b; c d]`, or `None` for anything else.
fn as_matrix(v: &Value) -> Option<String> {
    let rows = v.as_array()?;
    if rows.len() != 2 {
        return None;
    }
    let mut cells = Vec::with_capacity(4);
    for row in rows {
        let row = row.as_array()?;
        if row.len() != 2 || row.iter().any(|c| !(c.is_number() || c.is_string())) {
            return None;
        }
        cells.extend(row.iter().map(scalar));
    }
    Some(format!(
        "[{} {}; {} {}]",
        cells[0], cells[1], cells[2], cells[3]
    ))
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn inline(v: &Value) -> String {
    if let Some(m) = as_matrix(v) {
        return m;
    }
    match v {
        Value::Array(items) if items.iter().all(|i| !i.is_object()) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        Value::Object(_) | Value::Array(_) => serde_json::to_string(v).expect("json"),
        other => scalar(other),
    }
}

fn render_into(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            let width = map.keys().map(String::len).max().unwrap_or(0);
            for (k, val) in map {
                let nested = val.is_object()
                    || matches!(val, Value::Array(items) if items.iter().any(Value::is_object));
                if nested {
                    writeln!(out, "{pad}{k}:").unwrap();
                    render_into(out, val, indent + 2);
                } else {
                    writeln!(out, "{pad}{k:<width$}  {}", inline(val)).unwrap();
                }
            }
        }
        Value::Array(items) => {
            for (i, item) in items.iter().enumerate() {
                writeln!(out, "{pad}- [{i}]").unwrap();
                render_into(out, item, indent + 2);
            }
        }
        other => writeln!(out, "{pad}{}", inline(other)).unwrap(),
    }
}

/// Aligned `key  value` lines, nesting objects by indentation.
pub fn render(v: &Value) -> String {
    let mut out = String::new();
    render_into(&mut out, v, 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn matrices_render_inline() {
        let text = render(&json!({"E": [[5, 5], [-4, -4]], "found": true}));
        assert_eq!(text, "E      [5 5; -4 -4]\nfound  true\n");
    }
}
