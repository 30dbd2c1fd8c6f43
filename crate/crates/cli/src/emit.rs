//! Output rendering. Documents are `serde_json::Value` trees; without the
//! `preserve_order` feature their maps are `BTreeMap`s, so keys come out sorted.

use serde_json::Value;
use zipsections::exactmath::rational::render;
use zipsections::exactmath::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Table,
}

pub fn rational(r: &Rational) -> Value {
    Value::String(render(r))
}

pub fn rationals(rs: &[Rational]) -> Value {
    Value::Array(rs.iter().map(rational).collect())
}

pub fn emit(doc: &Value, format: Format) -> String {
    match format {
        Format::Json => json(doc),
        Format::Table => table(doc),
    }
}

/// Pretty-printed canonical JSON with a trailing newline.
pub fn json(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("Value always serializes");
    s.push('\n');
    s
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) if a.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_) | Value::Bool(_))) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(a) if a.iter().all(|x| scalar(x).is_some() && x.is_array()) => {
            Some(format!("[{}]", a.iter().map(|x| scalar(x).unwrap_or_default()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

/// Columns shared by a list of flat records, if every entry is one.
fn record_columns(items: &[Value]) -> Option<Vec<String>> {
    let first = items.first()?.as_object()?;
    let cols: Vec<String> = first.keys().cloned().collect();
    for it in items {
        let o = it.as_object()?;
        if o.keys().ne(cols.iter()) || o.values().any(|v| scalar(v).is_none()) {
            return None;
        }
    }
    Some(cols)
}

fn aligned(rows: &[Vec<String>], indent: usize, out: &mut String) {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..ncols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    for r in rows {
        let mut line = " ".repeat(indent);
        for (c, cell) in r.iter().enumerate() {
            if c + 1 == r.len() {
                line.push_str(cell);
            } else {
                line.push_str(cell);
                line.push_str(&" ".repeat(widths[c] - cell.chars().count() + 2));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
}

fn table_into(v: &Value, indent: usize, out: &mut String) {
    match v {
        Value::Object(m) => {
            let flat: Vec<Vec<String>> =
                m.iter().filter_map(|(k, x)| scalar(x).map(|s| vec![k.clone(), s])).collect();
            aligned(&flat, indent, out);
            for (k, x) in m {
                if scalar(x).is_none() {
                    out.push_str(&format!("{}{k}:\n", " ".repeat(indent)));
                    table_into(x, indent + 2, out);
                }
            }
        }
        Value::Array(items) => {
            if let Some(mut cols) = record_columns(items) {
                // narrow columns first so long free text ends the line
                let width = |c: &String| items.iter().map(|it| scalar(&it[c]).unwrap_or_default().chars().count()).max().unwrap_or(0).max(c.len());
                cols.sort_by_key(|c| width(c));
                let mut rows = vec![cols.clone()];
                rows.extend(items.iter().map(|it| cols.iter().map(|c| scalar(&it[c]).unwrap_or_default()).collect()));
                aligned(&rows, indent, out);
            } else {
                for (i, x) in items.iter().enumerate() {
                    match scalar(x) {
                        Some(s) => out.push_str(&format!("{}[{i}] {s}\n", " ".repeat(indent))),
                        None => {
                            out.push_str(&format!("{}[{i}]\n", " ".repeat(indent)));
                            table_into(x, indent + 2, out);
                        }
                    }
                }
            }
        }
        other => {
            out.push_str(&" ".repeat(indent));
            out.push_str(&scalar(other).unwrap_or_default());
            out.push('\n');
        }
    }
}

/// Human-readable rendering: scalars as aligned `key value` pairs, lists of
/// flat records as column tables, nesting by indentation.
pub fn table(doc: &Value) -> String {
    let mut out = String::new();
    table_into(doc, 0, &mut out);
    out
}
