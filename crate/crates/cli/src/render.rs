//! Plain-text rendering of a JSON report for `--format table`.

use serde_json::{Map, Value};

pub fn table(report: &Value) -> String {
    let mut out = String::new();
    match report {
        Value::Object(map) => object(map, 0, &mut out),
        other => out.push_str(&inline(other).unwrap_or_else(|| other.to_string())),
    }
    while out.ends_with('\n') {
        out.pop();
    }
    out
}

/// Single-line text for scalars, sets and numbers; `None` for anything
/// that needs its own block.
fn inline(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(if *b { "yes" } else { "no" }.into()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items.iter().map(inline).collect();
            parts.map(|p| format!("{{{}}}", p.join(", ")))
        }
        Value::Object(map) => match (map.get("decimal"), map.len()) {
            (Some(Value::String(d)), 2) => Some(d.clone()),
            _ => None,
        },
    }
}

fn object(map: &Map<String, Value>, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let width = map.keys().map(String::len).max().unwrap_or(0);
    for (key, value) in map {
        if let Some(text) = inline(value) {
            out.push_str(&format!("{pad}{key:<width$}  {text}\n"));
            continue;
        }
        out.push_str(&format!("{pad}{key}:\n"));
        match value {
            Value::Object(inner) => object(inner, depth + 1, out),
            Value::Array(items) => rows(items, depth + 1, out),
            _ => unreachable!("scalars always inline"),
        }
    }
}

/// Array of records as aligned columns; falls back to nested blocks.
fn rows(items: &[Value], depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    let records: Option<Vec<&Map<String, Value>>> = items.iter().map(Value::as_object).collect();
    let cells = records.as_ref().and_then(|records| {
        let columns: Vec<&String> = records.first()?.keys().collect();
        records
            .iter()
            .map(|r| {
                if r.len() != columns.len() {
                    return None;
                }
                columns.iter().map(|c| r.get(*c).and_then(inline)).collect::<Option<Vec<_>>>()
            })
            .collect::<Option<Vec<_>>>()
            .map(|body| (columns, body))
    });
    match cells {
        Some((columns, body)) => {
            let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
            for row in &body {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let joined: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
                format!("{pad}{}\n", joined.join("  ").trim_end())
            };
            out.push_str(&line(columns.iter().map(|c| c.as_str()).collect()));
            for row in &body {
                out.push_str(&line(row.iter().map(String::as_str).collect()));
            }
        }
        None => {
            for (i, item) in items.iter().enumerate() {
                out.push_str(&format!("{pad}[{i}]\n"));
                match item {
                    Value::Object(inner) => object(inner, depth + 1, out),
                    Value::Array(inner) => rows(inner, depth + 1, out),
                    other => out.push_str(&format!("{pad}  {}\n", inline(other).unwrap_or_default())),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn scalars_and_sets_inline() {
        let t = table(&json!({ "size": 3, "members": ["1", "2"], "closed": true, "gap": null }));
        assert_eq!(t, "closed   yes\ngap      -\nmembers  {1, 2}\nsize     3");
    }

    #[test]
    fn records_become_columns() {
        let t = table(&json!({ "rows": [{ "id": 1, "ok": true }, { "id": 22, "ok": false }] }));
        assert_eq!(t, "rows:\n  id  ok\n  1   yes\n  22  no");
    }

    #[test]
    fn numbers_show_their_decimal_form() {
        assert_eq!(inline(&json!({ "decimal": "12", "factored": "2^2*3" })).unwrap(), "12");
        assert!(inline(&json!({ "a": 1 })).is_none());
    }
}
