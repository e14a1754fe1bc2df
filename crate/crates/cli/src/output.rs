//! Tables and key-value reports in CSV or JSON, with shortest round-trip floats.

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Missing,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Missing, Cell::Num)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

/// Shortest decimal string that parses back to the same `f64`.
pub fn fmt_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else {
        let mut buf = ryu::Buffer::new();
        let s = buf.format_finite(v);
        s.strip_suffix(".0").unwrap_or(s).to_string()
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => fmt_float(*v),
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
            Cell::Text(s) => s.clone(),
            Cell::Missing => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => Number::from_f64(*v).map_or(Value::Null, Value::Number),
            Cell::Int(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Missing => Value::Null,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Scalars attached to the table, such as a series exponent.
    pub meta: Vec<(String, Cell)>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::new();
                for (k, v) in &self.meta {
                    out.push_str(&format!("# {k}={}\n", v.csv()));
                }
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    out.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut obj = Map::new();
                for (k, v) in &self.meta {
                    obj.insert(k.clone(), v.json());
                }
                obj.insert("columns".into(), Value::from(self.columns.clone()));
                let rows = self.rows.iter().map(|r| Value::Array(r.iter().map(Cell::json).collect())).collect();
                obj.insert("rows".into(), Value::Array(rows));
                let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
                s.push('\n');
                s
            }
        }
    }
}

/// Ordered key-value report.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    pub entries: Vec<(String, Cell)>,
}

impl Report {
    pub fn put(&mut self, key: &str, value: impl Into<Cell>) {
        self.entries.push((key.to_string(), value.into()));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = String::from("key,value\n");
                for (k, v) in &self.entries {
                    out.push_str(&format!("{k},{}\n", v.csv()));
                }
                out
            }
            Format::Json => {
                // Written by hand to keep the report order.
                let body: Vec<String> = self
                    .entries
                    .iter()
                    .map(|(k, v)| format!("  {}: {}", Value::from(k.as_str()), v.json()))
                    .collect();
                format!("{{\n{}\n}}\n", body.join(",\n"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 1.0, 0.0, -0.0, f64::MIN_POSITIVE] {
            let s = fmt_float(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(fmt_float(2.0), "2");
        assert_eq!(fmt_float(0.1), "0.1");
    }

    #[test]
    fn csv_marks_missing_as_empty() {
        let mut t = Table::new(&["x", "U"]);
        t.push(vec![1.0.into(), Cell::Missing]);
        assert_eq!(t.render(Format::Csv), "x,U\n1,\n");
    }

    #[test]
    fn json_marks_missing_as_null() {
        let mut t = Table::new(&["x", "U"]);
        t.push(vec![1.5.into(), Cell::Missing]);
        let v: Value = serde_json::from_str(&t.render(Format::Json)).unwrap();
        assert_eq!(v["rows"][0][1], Value::Null);
        assert_eq!(v["rows"][0][0], 1.5);
    }

    #[test]
    fn report_keeps_order() {
        let mut r = Report::default();
        r.put("status", "PASS");
        r.put("b", 2.0);
        r.put("a", 1usize);
        assert_eq!(r.render(Format::Csv), "key,value\nstatus,PASS\nb,2\na,1\n");
        let j = r.render(Format::Json);
        assert!(j.find("status").unwrap() < j.find("\"a\"").unwrap());
        let v: Value = serde_json::from_str(&j).unwrap();
        assert_eq!(v["b"], 2.0);
    }
}
