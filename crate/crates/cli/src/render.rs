use serde_json::Value;

/// Plain-text rendering of a command result.
pub fn text(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.trim_end().to_string()
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn as_matrix(v: &Value) -> Option<Vec<Vec<String>>> {
    let v = match v {
        Value::Object(m) if m.contains_key("entries") && m.len() <= 2 => &m["entries"],
        _ => v,
    };
    let rows = v.as_array()?;
    if rows.is_empty() {
        return None;
    }
    let width = rows[0].as_array()?.len();
    rows.iter()
        .map(|r| {
            let r = r.as_array().filter(|r| r.len() == width)?;
            r.iter()
                .all(is_scalar)
                .then(|| r.iter().map(scalar).collect())
        })
        .collect()
}

fn write_matrix(out: &mut String, m: &[Vec<String>], indent: usize) {
    let cols = m[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|j| m.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    for row in m {
        out.push_str(&" ".repeat(indent));
        out.push('[');
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect();
        out.push_str(&cells.join("  "));
        out.push_str("]\n");
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = " ".repeat(indent);
    if let Some(m) = as_matrix(v) {
        write_matrix(out, &m, indent);
        return;
    }
    match v {
        Value::Object(map) => {
            for (k, val) in map {
                if is_scalar(val) {
                    out.push_str(&format!("{pad}{k}: {}\n", scalar(val)));
                } else if val.as_array().is_some_and(|a| a.iter().all(is_scalar)) {
                    let items: Vec<String> = val.as_array().unwrap().iter().map(scalar).collect();
                    out.push_str(&format!("{pad}{k}: [{}]\n", items.join(", ")));
                } else {
                    out.push_str(&format!("{pad}{k}:\n"));
                    write_value(out, val, indent + 2);
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_scalar(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    write_value(out, item, indent + 2);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other))),
    }
}
