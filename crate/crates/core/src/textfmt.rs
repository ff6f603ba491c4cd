//! Canonical structured text: `key: value` lines nested by two-space
//! indentation. Scalars are JSON-encoded; list items start with `- `.
//! Object keys come out sorted, so equal values always print identically.
//!
//! ```text
//! claim: "group order"
//! children:
//!   -
//!     claim: "leaf"
//!     verdict: "PASS"
//! tags: []
//! ```

use serde_json::{Map, Value};

use crate::error::{Error, Result};

pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    match v {
        Value::Object(m) if !m.is_empty() => write_object(&mut out, m, 0),
        Value::Array(a) if !a.is_empty() => write_array(&mut out, a, 0),
        _ => {
            out.push_str(&scalar(v));
            out.push('\n');
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

fn is_block(v: &Value) -> bool {
    match v {
        Value::Object(m) => !m.is_empty(),
        Value::Array(a) => !a.is_empty(),
        _ => false,
    }
}

fn write_object(out: &mut String, m: &Map<String, Value>, indent: usize) {
    let mut keys: Vec<&String> = m.keys().collect();
    keys.sort();
    for k in keys {
        let v = &m[k];
        out.push_str(&" ".repeat(indent));
        out.push_str(k);
        if is_block(v) {
            out.push_str(":\n");
            write_block(out, v, indent + 2);
        } else {
            out.push_str(": ");
            out.push_str(&scalar(v));
            out.push('\n');
        }
    }
}

fn write_array(out: &mut String, a: &[Value], indent: usize) {
    for v in a {
        out.push_str(&" ".repeat(indent));
        if is_block(v) {
            out.push_str("-\n");
            write_block(out, v, indent + 2);
        } else {
            out.push_str("- ");
            out.push_str(&scalar(v));
            out.push('\n');
        }
    }
}

fn write_block(out: &mut String, v: &Value, indent: usize) {
    match v {
        Value::Object(m) => write_object(out, m, indent),
        Value::Array(a) => write_array(out, a, indent),
        _ => unreachable!("blocks are non-empty containers"),
    }
}

struct Line<'a> {
    no: usize,
    indent: usize,
    text: &'a str,
}

pub fn from_text(text: &str) -> Result<Value> {
    let mut lines = Vec::new();
    for (no, raw) in text.lines().enumerate() {
        if raw.trim().is_empty() {
            continue;
        }
        let indent = raw.len() - raw.trim_start_matches(' ').len();
        lines.push(Line { no: no + 1, indent, text: &raw.trim_end()[indent..] });
    }
    if lines.is_empty() {
        return Err(Error::Parse("empty document".into()));
    }
    let first = &lines[0];
    if first.indent != 0 {
        return Err(err(first, "document must start at column 0"));
    }
    let mut pos = 0;
    let v = if first.text.starts_with('-') {
        parse_array(&lines, &mut pos, 0)?
    } else if split_key(first.text).is_some() {
        parse_object(&lines, &mut pos, 0)?
    } else {
        pos = 1;
        parse_scalar(first, first.text)?
    };
    if pos != lines.len() {
        return Err(err(&lines[pos], "unexpected trailing content"));
    }
    Ok(v)
}

fn err(line: &Line, what: &str) -> Error {
    Error::Parse(format!("line {}: {what}", line.no))
}

fn split_key(text: &str) -> Option<(&str, &str)> {
    let (k, rest) = text.split_once(':')?;
    let valid = !k.is_empty() && k.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
    valid.then_some((k, rest))
}

fn parse_scalar(line: &Line, text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| err(line, &format!("bad scalar: {e}")))
}

fn parse_block(lines: &[Line], pos: &mut usize, parent: &Line, indent: usize) -> Result<Value> {
    match lines.get(*pos) {
        Some(l) if l.indent == indent => {
            if l.text.starts_with('-') {
                parse_array(lines, pos, indent)
            } else {
                parse_object(lines, pos, indent)
            }
        }
        _ => Err(err(parent, "expected an indented block")),
    }
}

fn parse_object(lines: &[Line], pos: &mut usize, indent: usize) -> Result<Value> {
    let mut m = Map::new();
    while let Some(line) = lines.get(*pos) {
        if line.indent < indent {
            break;
        }
        if line.indent > indent {
            return Err(err(line, "unexpected indentation"));
        }
        let (k, rest) = split_key(line.text).ok_or_else(|| err(line, "expected `key: value`"))?;
        *pos += 1;
        let v = if rest.is_empty() {
            parse_block(lines, pos, line, indent + 2)?
        } else {
            let rest = rest.strip_prefix(' ').ok_or_else(|| err(line, "missing space after ':'"))?;
            parse_scalar(line, rest)?
        };
        if m.insert(k.to_string(), v).is_some() {
            return Err(err(line, &format!("duplicate key {k}")));
        }
    }
    Ok(Value::Object(m))
}

fn parse_array(lines: &[Line], pos: &mut usize, indent: usize) -> Result<Value> {
    let mut a = Vec::new();
    while let Some(line) = lines.get(*pos) {
        if line.indent < indent {
            break;
        }
        if line.indent > indent || !line.text.starts_with('-') {
            return Err(err(line, "expected a list item"));
        }
        *pos += 1;
        let v = if line.text == "-" {
            parse_block(lines, pos, line, indent + 2)?
        } else {
            let rest = line.text.strip_prefix("- ").ok_or_else(|| err(line, "expected `- value`"))?;
            parse_scalar(line, rest)?
        };
        a.push(v);
    }
    Ok(Value::Array(a))
}
