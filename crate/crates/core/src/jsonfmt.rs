//! Minimal deterministic JSON writer.
//!
//! Output is byte-reproducible: object keys are kept sorted and every float
//! is printed with exactly 12 significant digits. Used for all CLI and
//! report output; input parsing stays on serde_json.

use std::collections::BTreeMap;
use std::fmt::Write;

#[derive(Clone, Debug)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    /// Printed with 12 significant digits.
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    /// BTreeMap keeps keys sorted.
    Object(BTreeMap<String, Json>),
}

impl Json {
    pub fn object() -> Json {
        Json::Object(BTreeMap::new())
    }

    pub fn set(&mut self, key: &str, value: Json) -> &mut Self {
        if let Json::Object(map) = self {
            map.insert(key.to_string(), value);
        } else {
            panic!("set on non-object");
        }
        self
    }

    pub fn to_string_pretty(&self) -> String {
        let mut out = String::new();
        self.write(&mut out, 0);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String, indent: usize) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(v) => {
                write!(out, "{v}").unwrap();
            }
            Json::Float(v) => out.push_str(&format_float(*v)),
            Json::Str(s) => write_escaped(out, s),
            Json::Array(items) => {
                if items.is_empty() {
                    out.push_str("[]");
                    return;
                }
                out.push('[');
                for (k, item) in items.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, indent + 1);
                    item.write(out, indent + 1);
                }
                out.push('\n');
                push_indent(out, indent);
                out.push(']');
            }
            Json::Object(map) => {
                if map.is_empty() {
                    out.push_str("{}");
                    return;
                }
                out.push('{');
                for (k, (key, value)) in map.iter().enumerate() {
                    if k > 0 {
                        out.push(',');
                    }
                    out.push('\n');
                    push_indent(out, indent + 1);
                    write_escaped(out, key);
                    out.push_str(": ");
                    value.write(out, indent + 1);
                }
                out.push('\n');
                push_indent(out, indent);
                out.push('}');
            }
        }
    }
}

fn push_indent(out: &mut String, indent: usize) {
    for _ in 0..indent {
        out.push_str("  ");
    }
}

fn write_escaped(out: &mut String, s: &str) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                write!(out, "\\u{:04x}", c as u32).unwrap();
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

/// Fixed 12-significant-digit scientific form, e.g. `1.52210706200e9`.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        return "\"nan\"".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "\"inf\"".into() } else { "\"-inf\"".into() };
    }
    format!("{v:.11e}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_sorted_and_floats_fixed() {
        let mut obj = Json::object();
        obj.set("zeta", Json::Float(1.0 / 3.0));
        obj.set("alpha", Json::Int(2));
        let s = obj.to_string_pretty();
        let a = s.find("alpha").unwrap();
        let z = s.find("zeta").unwrap();
        assert!(a < z);
        assert!(s.contains("3.33333333333e-1"));
    }

    #[test]
    fn special_floats_are_quoted() {
        assert_eq!(format_float(f64::NAN), "\"nan\"");
        assert_eq!(format_float(f64::INFINITY), "\"inf\"");
    }

    #[test]
    fn strings_are_escaped() {
        let j = Json::Str("a\"b\nc".into());
        assert_eq!(j.to_string_pretty(), "\"a\\\"b\\nc\"\n");
    }
}
