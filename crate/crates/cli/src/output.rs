use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// A pass/fail comparison of a measured value against a threshold.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub relation: &'static str,
    pub threshold: f64,
    pub pass: bool,
}

impl Check {
    pub fn at_least(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, relation: ">=", threshold, pass: value >= threshold }
    }

    pub fn above(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, relation: ">", threshold, pass: value > threshold }
    }

    pub fn below(name: &str, value: f64, threshold: f64) -> Self {
        Self { name: name.into(), value, relation: "<", threshold, pass: value < threshold }
    }

    pub fn equal(name: &str, value: f64, expected: f64) -> Self {
        Self { name: name.into(), value, relation: "==", threshold: expected, pass: value == expected }
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), self.name.clone().into());
        m.insert("value".into(), num(self.value));
        m.insert("relation".into(), self.relation.into());
        m.insert("threshold".into(), num(self.threshold));
        m.insert("pass".into(), self.pass.into());
        Value::Object(m)
    }
}

/// Non-finite values become strings so that JSON stays valid and lossless.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        Value::from(v)
    } else {
        Value::from(format!("{v}"))
    }
}

pub type Record = Map<String, Value>;

/// Builds a record from `(column, value)` pairs, keeping their order.
pub fn record<const N: usize>(fields: [(&str, Value); N]) -> Record {
    fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

#[derive(Debug, Clone, Default)]
pub struct Document {
    pub meta: Map<String, Value>,
    pub summary: Map<String, Value>,
    pub checks: Vec<Check>,
    pub records: Vec<Record>,
}

impl Document {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn full_meta(&self) -> Map<String, Value> {
        let mut meta = self.meta.clone();
        if !self.summary.is_empty() {
            meta.insert("summary".into(), Value::Object(self.summary.clone()));
        }
        if !self.checks.is_empty() {
            meta.insert("checks".into(), self.checks.iter().map(Check::to_json).collect());
        }
        meta
    }

    pub fn render(&self, format: Format) -> io::Result<Vec<u8>> {
        match format {
            Format::Json => {
                let mut doc = Map::new();
                doc.insert("meta".into(), Value::Object(self.full_meta()));
                doc.insert("records".into(), self.records.iter().cloned().map(Value::Object).collect());
                let mut out = serde_json::to_vec_pretty(&Value::Object(doc))?;
                out.push(b'\n');
                Ok(out)
            }
            Format::Csv => self.render_csv(),
        }
    }

    fn render_csv(&self) -> io::Result<Vec<u8>> {
        let mut out = Vec::new();
        for (k, v) in self.full_meta() {
            header_lines(&mut out, &k, &v)?;
        }
        let mut columns: Vec<String> = Vec::new();
        for r in &self.records {
            for k in r.keys() {
                if !columns.contains(k) {
                    columns.push(k.clone());
                }
            }
        }
        let mut w = csv::Writer::from_writer(out);
        if !columns.is_empty() {
            w.write_record(&columns)?;
        }
        for r in &self.records {
            w.write_record(columns.iter().map(|c| r.get(c).map(cell).unwrap_or_default()))?;
        }
        w.into_inner().map_err(|e| e.into_error())
    }

    pub fn write(&self, format: Format, out: Option<&Path>) -> io::Result<()> {
        let bytes = self.render(format)?;
        match out {
            Some(path) => File::create(path)?.write_all(&bytes),
            None => io::stdout().lock().write_all(&bytes),
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn header_lines(out: &mut Vec<u8>, key: &str, v: &Value) -> io::Result<()> {
    match v {
        Value::Object(m) => {
            for (k, inner) in m {
                header_lines(out, &format!("{key}.{k}"), inner)?;
            }
            Ok(())
        }
        Value::Array(items) if items.iter().all(Value::is_object) => {
            for (i, inner) in items.iter().enumerate() {
                header_lines(out, &format!("{key}.{i}"), inner)?;
            }
            Ok(())
        }
        other => writeln!(out, "# {key}: {}", cell(other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc() -> Document {
        let mut d = Document::default();
        d.meta.insert("command".into(), "demo".into());
        d.summary.insert("value".into(), num(1.5));
        d.checks.push(Check::above("value", 1.5, 1.0));
        d.records.push(record([("a", num(1.0)), ("b", "x,y".into())]));
        d.records.push(record([("a", num(f64::NAN)), ("c", num(2.0))]));
        d
    }

    #[test]
    fn csv_layout() {
        let text = String::from_utf8(doc().render(Format::Csv).unwrap()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# command: demo");
        assert_eq!(lines[1], "# summary.value: 1.5");
        assert!(lines.contains(&"# checks.0.pass: true"));
        assert!(lines.contains(&"a,b,c"));
        assert!(lines.contains(&"1.0,\"x,y\","));
        assert!(lines.contains(&"NaN,,2.0"));
    }

    #[test]
    fn json_layout() {
        let v: Value = serde_json::from_slice(&doc().render(Format::Json).unwrap()).unwrap();
        assert_eq!(v["meta"]["command"], "demo");
        assert_eq!(v["meta"]["checks"][0]["pass"], true);
        assert_eq!(v["records"][1]["a"], "NaN");
        assert!(doc().all_checks_pass());
    }
}
