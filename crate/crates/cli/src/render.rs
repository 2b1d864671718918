//! Text and markdown renderings of a JSON result.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Markdown,
    Text,
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                flatten(&key, x, out);
            }
        }
        other => out.push((prefix.to_string(), scalar(other))),
    }
}

/// `key: value` lines, nested objects joined with dots.
pub fn text(v: &Value) -> String {
    let mut rows = vec![];
    flatten("", v, &mut rows);
    rows.iter().map(|(k, x)| format!("{k}: {x}\n")).collect()
}

pub fn markdown(v: &Value) -> String {
    let mut rows = vec![];
    flatten("", v, &mut rows);
    let mut s = String::from("| key | value |\n|---|---|\n");
    for (k, x) in rows {
        s.push_str(&format!("| {k} | `{}` |\n", x.replace('|', "\\|")));
    }
    s
}

pub fn finish((v, f, ok): (Value, Format, bool)) -> (String, bool) {
    let s = match f {
        Format::Json => serde_json::to_string_pretty(&v).expect("serializable"),
        Format::Markdown => markdown(&v),
        Format::Text => text(&v),
    };
    (s, ok)
}
