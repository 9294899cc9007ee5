//! Turning a JSON report into json, tsv or aligned text.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Tsv,
    Pretty,
}

fn scalar(v: &Value) -> String {
    match v {
        Value::Null => "-".into(),
        Value::String(s) => s.clone(),
        Value::Array(a) if a.iter().all(|x| x.is_number()) => {
            let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
            format!("({})", parts.join(","))
        }
        Value::Array(a) if a.iter().all(|x| !x.is_object() && !x.is_array()) => {
            a.iter().map(scalar).collect::<Vec<_>>().join(" ")
        }
        other => other.to_string(),
    }
}

fn is_table(v: &Value) -> bool {
    matches!(v, Value::Array(a) if !a.is_empty() && a.iter().all(Value::is_object))
}

fn table(rows: &[Value], sep: &str, align: bool) -> Vec<String> {
    let mut keys: Vec<String> = Vec::new();
    for r in rows {
        for k in r.as_object().expect("table rows are objects").keys() {
            if !keys.contains(k) {
                keys.push(k.clone());
            }
        }
    }
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            keys.iter()
                .map(|k| scalar(r.get(k).unwrap_or(&Value::Null)))
                .collect()
        })
        .collect();
    let mut width: Vec<usize> = keys.iter().map(|k| k.len()).collect();
    if align {
        for row in &cells {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
    }
    let line = |row: &[String]| {
        if align {
            row.iter()
                .zip(&width)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect::<Vec<_>>()
                .join(sep)
                .trim_end()
                .to_string()
        } else {
            row.join(sep)
        }
    };
    std::iter::once(line(&keys))
        .chain(cells.iter().map(|r| line(r)))
        .collect()
}

pub fn render(v: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(v).expect("json values serialize"),
        Format::Tsv => {
            if is_table(v) {
                return table(v.as_array().unwrap(), "\t", false).join("\n");
            }
            match v.as_object() {
                Some(obj) => {
                    let mut out = Vec::new();
                    for (k, x) in obj {
                        if is_table(x) {
                            out.push(format!("# {k}"));
                            out.extend(table(x.as_array().unwrap(), "\t", false));
                        } else {
                            out.push(format!("{k}\t{}", scalar(x)));
                        }
                    }
                    out.join("\n")
                }
                None => scalar(v),
            }
        }
        Format::Pretty => {
            if is_table(v) {
                return table(v.as_array().unwrap(), "  ", true).join("\n");
            }
            let mut out = Vec::new();
            pretty(v, "", &mut out);
            out.join("\n")
        }
    }
}

fn pretty(v: &Value, indent: &str, out: &mut Vec<String>) {
    let Some(obj) = v.as_object() else {
        out.push(format!("{indent}{}", scalar(v)));
        return;
    };
    let w = obj.keys().map(|k| k.len()).max().unwrap_or(0);
    let deeper = format!("{indent}  ");
    for (k, x) in obj {
        if is_table(x) {
            out.push(format!("{indent}{k}:"));
            out.extend(
                table(x.as_array().unwrap(), "  ", true)
                    .into_iter()
                    .map(|l| format!("{deeper}{l}")),
            );
        } else if x.is_object() {
            out.push(format!("{indent}{k}:"));
            pretty(x, &deeper, out);
        } else {
            out.push(format!("{indent}{k:<w$}  {}", scalar(x)));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn formats() {
        let v =
            json!({"h": [1, 3, 2], "ok": true, "rows": [{"a": 1, "b": "x"}, {"a": 22, "b": null}]});
        let tsv = render(&v, Format::Tsv);
        assert!(tsv.contains("h\t(1,3,2)"));
        assert!(tsv.contains("a\tb\n1\tx\n22\t-"));
        let pretty = render(&v, Format::Pretty);
        assert!(pretty.contains("ok    true"));
        assert!(pretty.contains("  a   b"));
        let back: Value = serde_json::from_str(&render(&v, Format::Json)).unwrap();
        assert_eq!(back, v);
    }
}
