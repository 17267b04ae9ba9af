//! Rendering of command reports as text, CSV, JSON or SVG.
//!
//! CSV and JSON print every float with 17 significant digits
//! (`6.4000000000000001e-1`, `1.5000000000000000e+1`), so values survive a round trip through text.
//! Plain text uses the shortest form of the value rounded to 15 digits.

use serde_json::{Map, Value as Json};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Float(f64),
    Int(i64),
    Str(String),
    Bool(bool),
    Null,
    List(Vec<Value>),
    Record(Vec<(&'static str, Value)>),
}

impl From<f64> for Value {
    fn from(v: f64) -> Self {
        Value::Float(v)
    }
}

impl From<usize> for Value {
    fn from(v: usize) -> Self {
        Value::Int(v as i64)
    }
}

impl From<u64> for Value {
    fn from(v: u64) -> Self {
        Value::Int(v as i64)
    }
}

impl From<u32> for Value {
    fn from(v: u32) -> Self {
        Value::Int(v.into())
    }
}

impl From<bool> for Value {
    fn from(v: bool) -> Self {
        Value::Bool(v)
    }
}

impl From<&str> for Value {
    fn from(v: &str) -> Self {
        Value::Str(v.to_owned())
    }
}

impl From<String> for Value {
    fn from(v: String) -> Self {
        Value::Str(v)
    }
}

impl<T: Into<Value>> From<Option<T>> for Value {
    fn from(v: Option<T>) -> Self {
        v.map_or(Value::Null, Into::into)
    }
}

/// 17 significant digits, lowercase signed exponent.
pub fn fmt17(x: f64) -> String {
    let s = format!("{x:.16e}");
    match s.split_once('e') {
        Some((m, e)) if !e.starts_with('-') => format!("{m}e+{e}"),
        _ => s,
    }
}

/// The shortest decimal that reads back as `x` rounded to 15 significant digits,
/// in exponent form when very small or very large.
pub fn fmt_short(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.14e}").parse().expect("formatted float parses");
    let a = rounded.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{rounded:e}")
    } else {
        rounded.to_string()
    }
}

impl Value {
    fn to_json(&self) -> Json {
        match self {
            Value::Float(x) if x.is_finite() => {
                // arbitrary_precision keeps the digits exactly as written
                serde_json::from_str(&fmt17(*x)).expect("formatted float is valid JSON")
            }
            Value::Float(_) | Value::Null => Json::Null,
            Value::Int(i) => Json::from(*i),
            Value::Str(s) => Json::from(s.as_str()),
            Value::Bool(b) => Json::from(*b),
            Value::List(items) => Json::Array(items.iter().map(Value::to_json).collect()),
            Value::Record(fields) => record_json(fields),
        }
    }

    fn to_cell(&self) -> String {
        match self {
            Value::Float(x) if x.is_finite() => fmt17(*x),
            Value::Float(x) => x.to_string(),
            Value::Int(i) => i.to_string(),
            Value::Str(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
            Value::Null => String::new(),
            Value::List(_) | Value::Record(_) => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        match self {
            Value::Float(x) => fmt_short(*x),
            Value::Null => "none".into(),
            Value::List(items) => format!("[{}]", items.iter().map(Value::to_text).collect::<Vec<_>>().join(", ")),
            Value::Record(fields) => format!(
                "{{{}}}",
                fields
                    .iter()
                    .map(|(k, v)| format!("{k}: {}", v.to_text()))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            _ => self.to_cell(),
        }
    }
}

fn record_json(fields: &[(&'static str, Value)]) -> Json {
    let mut m = Map::new();
    for (k, v) in fields {
        m.insert((*k).to_owned(), v.to_json());
    }
    Json::Object(m)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// Key under which the rows appear in JSON output; `None` keeps them
    /// out of JSON and text, leaving them to CSV.
    pub json_key: Option<&'static str>,
    pub headers: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

/// What a subcommand produced, before formatting.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub subcommand: String,
    pub inputs: Vec<(&'static str, Value)>,
    pub result: Vec<(&'static str, Value)>,
    pub table: Option<Table>,
    pub svg: Option<String>,
    /// Text output for single-value commands.
    pub scalar: Option<f64>,
    /// `false` when a verification exceeded its tolerance.
    pub passed: bool,
}

impl Report {
    pub fn new(subcommand: &str) -> Self {
        Report {
            subcommand: subcommand.to_owned(),
            inputs: Vec::new(),
            result: Vec::new(),
            table: None,
            svg: None,
            scalar: None,
            passed: true,
        }
    }

    pub fn input(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.inputs.push((key, v.into()));
        self
    }

    pub fn result(mut self, key: &'static str, v: impl Into<Value>) -> Self {
        self.result.push((key, v.into()));
        self
    }

    pub fn table(mut self, json_key: Option<&'static str>, headers: &[&'static str], rows: Vec<Vec<Value>>) -> Self {
        self.table = Some(Table {
            json_key,
            headers: headers.to_vec(),
            rows,
        });
        self
    }

    pub fn json(&self, elapsed_ms: Option<f64>) -> String {
        let mut result = self.result.clone();
        if let Some(t) = &self.table {
            if let Some(key) = t.json_key {
                let rows = t
                    .rows
                    .iter()
                    .map(|r| Value::Record(t.headers.iter().copied().zip(r.iter().cloned()).collect()))
                    .collect();
                result.push((key, Value::List(rows)));
            }
        }
        let doc = Value::Record(vec![
            ("subcommand", Value::Str(self.subcommand.clone())),
            ("inputs", Value::Record(self.inputs.clone())),
            ("result", Value::Record(result)),
            ("elapsed_ms", elapsed_ms.into()),
        ]);
        let mut s = serde_json::to_string_pretty(&doc.to_json()).expect("JSON values serialize");
        s.push('\n');
        s
    }

    /// The table if there is one, otherwise a single row of the scalar result fields.
    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let write = |w: &mut csv::Writer<Vec<u8>>, row: Vec<String>| w.write_record(row).expect("in-memory CSV write");
        match &self.table {
            Some(t) => {
                write(&mut w, t.headers.iter().map(|h| h.to_string()).collect());
                for r in &t.rows {
                    write(&mut w, r.iter().map(Value::to_cell).collect());
                }
            }
            None => {
                let fields: Vec<_> = self
                    .result
                    .iter()
                    .filter(|(_, v)| !matches!(v, Value::List(_) | Value::Record(_)))
                    .collect();
                write(&mut w, fields.iter().map(|(k, _)| k.to_string()).collect());
                write(&mut w, fields.iter().map(|(_, v)| v.to_cell()).collect());
            }
        }
        String::from_utf8(w.into_inner().expect("in-memory CSV flush")).expect("CSV is UTF-8")
    }

    pub fn text(&self, elapsed_ms: Option<f64>) -> String {
        let mut out = String::new();
        if let Some(x) = self.scalar {
            out.push_str(&fmt_short(x));
            out.push('\n');
        } else {
            for (k, v) in &self.result {
                out.push_str(&format!("{k}: {}\n", v.to_text()));
            }
            if let Some(t) = self.table.as_ref().filter(|t| t.json_key.is_some()) {
                out.push_str(&t.headers.join(" "));
                out.push('\n');
                for r in &t.rows {
                    out.push_str(&r.iter().map(Value::to_text).collect::<Vec<_>>().join(" "));
                    out.push('\n');
                }
            }
        }
        if let Some(ms) = elapsed_ms {
            out.push_str(&format!("elapsed_ms: {ms:.3}\n"));
        }
        out
    }
}
