//! Line-oriented `key=value` reports with a parallel JSON rendering.
//!
//! Keys appear in the order they were pushed, in both renderings, so output
//! is byte-identical across runs. Rationals render as `p/q` (or a bare
//! integer); decimal approximations appear only when explicitly requested
//! and are suffixed with `~`. In JSON, rationals become
//! `{"num": "...", "den": "..."}` with string fields so arbitrary precision
//! survives any JSON reader.

use serde_json::{json, Map, Value as Json};

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(Rational),
    UInt(usize),
    Bool(bool),
    Text(String),
    /// Comma-joined in text mode, array of strings in JSON.
    Labels(Vec<String>),
}

impl Scalar {
    fn render_text(&self, approx: bool) -> String {
        match self {
            Scalar::Rat(r) => {
                if approx {
                    format!("{r} ({:.6}~)", r.to_f64())
                } else {
                    r.to_string()
                }
            }
            Scalar::UInt(v) => v.to_string(),
            Scalar::Bool(b) => b.to_string(),
            Scalar::Text(s) => s.clone(),
            Scalar::Labels(ls) => ls.join(","),
        }
    }

    fn render_json(&self) -> Json {
        match self {
            Scalar::Rat(r) => json!({
                "num": r.numer().to_string(),
                "den": r.denom().to_string(),
            }),
            Scalar::UInt(v) => json!(v),
            Scalar::Bool(b) => json!(b),
            Scalar::Text(s) => json!(s),
            Scalar::Labels(ls) => json!(ls),
        }
    }
}

/// A named table: one text line per row, prefixed with the table name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Scalar>>,
}

#[derive(Debug, Clone, Default)]
pub struct Report {
    entries: Vec<(String, Scalar)>,
    tables: Vec<Table>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn rat(&mut self, key: &str, value: &Rational) -> &mut Self {
        self.entries
            .push((key.to_string(), Scalar::Rat(value.clone())));
        self
    }

    pub fn uint(&mut self, key: &str, value: usize) -> &mut Self {
        self.entries.push((key.to_string(), Scalar::UInt(value)));
        self
    }

    pub fn bool(&mut self, key: &str, value: bool) -> &mut Self {
        self.entries.push((key.to_string(), Scalar::Bool(value)));
        self
    }

    pub fn text(&mut self, key: &str, value: impl Into<String>) -> &mut Self {
        self.entries
            .push((key.to_string(), Scalar::Text(value.into())));
        self
    }

    pub fn labels(&mut self, key: &str, value: Vec<String>) -> &mut Self {
        self.entries.push((key.to_string(), Scalar::Labels(value)));
        self
    }

    pub fn table(&mut self, table: Table) -> &mut Self {
        self.tables.push(table);
        self
    }

    /// `key=value` lines, then one `name col...` line per table row.
    pub fn render_text(&self, approx: bool) -> String {
        let mut out = String::new();
        for (k, v) in &self.entries {
            out.push_str(k);
            out.push('=');
            out.push_str(&v.render_text(approx));
            out.push('\n');
        }
        for t in &self.tables {
            for row in &t.rows {
                out.push_str(&t.name);
                for cell in row {
                    out.push(' ');
                    out.push_str(&cell.render_text(approx));
                }
                out.push('\n');
            }
        }
        out
    }

    /// Pretty JSON object with insertion-ordered keys.
    pub fn render_json(&self) -> String {
        let mut map = Map::new();
        for (k, v) in &self.entries {
            map.insert(k.clone(), v.render_json());
        }
        for t in &self.tables {
            let rows: Vec<Json> = t
                .rows
                .iter()
                .map(|row| {
                    let mut obj = Map::new();
                    for (col, cell) in t.columns.iter().zip(row) {
                        obj.insert(col.clone(), cell.render_json());
                    }
                    Json::Object(obj)
                })
                .collect();
            map.insert(t.name.clone(), Json::Array(rows));
        }
        let mut s = serde_json::to_string_pretty(&Json::Object(map))
            .expect("report values serialize infallibly");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_rendering_is_ordered_and_exact() {
        let mut r = Report::new();
        r.rat("weak_sup", &Rational::new(2, 3))
            .bool("is_weak", true)
            .labels("fixed_points", vec!["1".into()])
            .labels("empty", vec![]);
        assert_eq!(
            r.render_text(false),
            "weak_sup=2/3\nis_weak=true\nfixed_points=1\nempty=\n"
        );
    }

    #[test]
    fn approx_rendering_suffixes_tilde() {
        let mut r = Report::new();
        r.rat("k", &Rational::new(1, 2));
        assert_eq!(r.render_text(true), "k=1/2 (0.500000~)\n");
    }

    #[test]
    fn json_rendering_keeps_order_and_bigint_strings() {
        let mut r = Report::new();
        r.rat("weak_sup", &Rational::new(2, 3)).bool("ok", true);
        let json = r.render_json();
        let weak = json.find("weak_sup").unwrap();
        let ok = json.find("\"ok\"").unwrap();
        assert!(weak < ok, "insertion order must survive");
        assert!(json.contains("\"num\": \"2\""));
        assert!(json.contains("\"den\": \"3\""));
    }

    #[test]
    fn tables_render_one_line_per_row() {
        let mut r = Report::new();
        r.table(Table {
            name: "profile".into(),
            columns: vec!["n".into(), "d".into()],
            rows: vec![
                vec![Scalar::UInt(1), Scalar::Rat(Rational::one())],
                vec![Scalar::UInt(2), Scalar::Rat(Rational::new(1, 2))],
            ],
        });
        assert_eq!(r.render_text(false), "profile 1 1\nprofile 2 1/2\n");
    }
}
