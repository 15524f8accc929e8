//! Deterministic JSON and CSV rendering.
//!
//! Floats are written with 17 significant digits and a lowercase exponent
//! (`{:.16e}`), so identical runs produce identical bytes. Complex values
//! become `{"re": .., "im": .., "abs": ..}` in JSON and three columns in CSV.

use std::fmt::Write;

use num_complex::Complex64;

#[derive(Debug, Clone)]
pub enum Val {
    Int(i64),
    Num(f64),
    Text(String),
    Complex(Complex64),
    Obj(Vec<(String, Val)>),
    List(Vec<Val>),
    Null,
}

impl From<i64> for Val {
    fn from(v: i64) -> Self {
        Val::Int(v)
    }
}

impl From<u64> for Val {
    fn from(v: u64) -> Self {
        Val::Int(v as i64)
    }
}

impl From<u32> for Val {
    fn from(v: u32) -> Self {
        Val::Int(v as i64)
    }
}

impl From<usize> for Val {
    fn from(v: usize) -> Self {
        Val::Int(v as i64)
    }
}

impl From<f64> for Val {
    fn from(v: f64) -> Self {
        Val::Num(v)
    }
}

impl From<Complex64> for Val {
    fn from(v: Complex64) -> Self {
        Val::Complex(v)
    }
}

impl From<String> for Val {
    fn from(v: String) -> Self {
        Val::Text(v)
    }
}

impl From<&str> for Val {
    fn from(v: &str) -> Self {
        Val::Text(v.to_string())
    }
}

impl<T: Into<Val>> From<Option<T>> for Val {
    fn from(v: Option<T>) -> Self {
        v.map_or(Val::Null, Into::into)
    }
}

pub fn obj<I, K>(fields: I) -> Val
where
    I: IntoIterator<Item = (K, Val)>,
    K: Into<String>,
{
    Val::Obj(fields.into_iter().map(|(k, v)| (k.into(), v)).collect())
}

pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn json_str(s: &str, out: &mut String) {
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

fn json_num(x: f64, out: &mut String) {
    if x.is_finite() {
        out.push_str(&fmt_f64(x));
    } else {
        out.push_str("null");
    }
}

fn json(v: &Val, out: &mut String) {
    match v {
        Val::Int(i) => {
            let _ = write!(out, "{i}");
        }
        Val::Num(x) => json_num(*x, out),
        Val::Text(s) => json_str(s, out),
        Val::Complex(z) => {
            out.push_str("{\"re\":");
            json_num(z.re, out);
            out.push_str(",\"im\":");
            json_num(z.im, out);
            out.push_str(",\"abs\":");
            json_num(z.norm(), out);
            out.push('}');
        }
        Val::Obj(fields) => {
            out.push('{');
            for (i, (k, v)) in fields.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                json_str(k, out);
                out.push(':');
                json(v, out);
            }
            out.push('}');
        }
        Val::List(items) => {
            out.push('[');
            for (i, v) in items.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                json(v, out);
            }
            out.push(']');
        }
        Val::Null => out.push_str("null"),
    }
}

pub fn to_json(v: &Val) -> String {
    let mut out = String::new();
    json(v, &mut out);
    out.push('\n');
    out
}

/// A CSV table with literal column names. A complex cell fills three
/// columns (`re`, `im`, `abs`), which the caller names explicitly so the
/// header is the same whether or not there are rows.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Val>>,
}

fn width(v: &Val) -> usize {
    if matches!(v, Val::Complex(_)) {
        3
    } else {
        1
    }
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Val>) {
        debug_assert_eq!(row.iter().map(width).sum::<usize>(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().flat_map(csv_cells).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn csv_num(x: f64) -> String {
    if x.is_finite() {
        fmt_f64(x)
    } else {
        String::new()
    }
}

fn csv_cells(v: &Val) -> Vec<String> {
    match v {
        Val::Int(i) => vec![i.to_string()],
        Val::Num(x) => vec![csv_num(*x)],
        Val::Text(s) if s.contains([',', '"', '\n']) => {
            vec![format!("\"{}\"", s.replace('"', "\"\""))]
        }
        Val::Text(s) => vec![s.clone()],
        Val::Complex(z) => vec![csv_num(z.re), csv_num(z.im), csv_num(z.norm())],
        Val::Null => vec![String::new()],
        Val::Obj(_) | Val::List(_) => {
            let mut s = String::new();
            json(v, &mut s);
            vec![format!("\"{}\"", s.replace('"', "\"\""))]
        }
    }
}
