//! Text rendering of report documents.

use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    JsonLike,
}

impl Format {
    pub fn parse(s: &str) -> Option<Format> {
        match s {
            "text" => Some(Format::Text),
            "json-like" | "json" => Some(Format::JsonLike),
            _ => None,
        }
    }
}

pub fn emit(doc: &Value, format: Format) -> String {
    match format {
        Format::JsonLike => {
            let mut s = serde_json::to_string_pretty(doc).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            block(doc, 0, &mut out);
            out
        }
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(items) => items.iter().all(|x| !x.is_object() && is_flat(x)),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn block(v: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                if is_flat(x) {
                    out.push_str(&format!("{}{}: {}\n", pad, k, inline(x)));
                } else {
                    out.push_str(&format!("{}{}:\n", pad, k));
                    block(x, indent + 2, out);
                }
            }
        }
        Value::Array(items) => {
            for x in items {
                if is_flat(x) {
                    out.push_str(&format!("{}- {}\n", pad, inline(x)));
                } else {
                    out.push_str(&format!("{}-\n", pad));
                    block(x, indent + 2, out);
                }
            }
        }
        other => out.push_str(&format!("{}{}\n", pad, inline(other))),
    }
}
