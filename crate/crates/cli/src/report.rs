//! Tabular reports and their json, csv and text serializations.

use std::fmt::Write as _;

use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

/// One command's output: an echo of the arguments, rows with a fixed column
/// list, and an overall verdict.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: Map<String, Value>,
    pub columns: Vec<&'static str>,
    pub items: Vec<Map<String, Value>>,
    pub pass: bool,
    /// Extra lines for the text format only.
    pub notes: Vec<String>,
    /// Replaces the whole text output when set.
    pub plain: Option<String>,
}

impl Report {
    pub fn new(verb: &str, columns: &[&'static str]) -> Self {
        let mut command = Map::new();
        command.insert("verb".into(), verb.into());
        Report {
            command,
            columns: columns.to_vec(),
            items: Vec::new(),
            pass: true,
            notes: Vec::new(),
            plain: None,
        }
    }

    pub fn arg(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.command.insert(key.into(), value.into());
        self
    }

    /// Adds a row; a `pass` column set to false fails the report.
    pub fn push(&mut self, row: Vec<(&'static str, Value)>) {
        let mut map = Map::new();
        for (k, v) in row {
            debug_assert!(self.columns.contains(&k), "unknown column {k}");
            if k == "pass" || k == "equal" || k == "holds" {
                self.pass &= v.as_bool().unwrap_or(false);
            }
            map.insert(k.into(), v);
        }
        self.items.push(map);
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn emit(&self, format: Format) -> String {
        match format {
            Format::Json => self.json(),
            Format::Csv => self.csv(),
            Format::Text => self.text(),
        }
    }

    fn json(&self) -> String {
        let mut top = Map::new();
        top.insert("command".into(), Value::Object(self.command.clone()));
        top.insert(
            "items".into(),
            Value::Array(self.items.iter().cloned().map(Value::Object).collect()),
        );
        top.insert("verdict".into(), self.verdict().into());
        let mut s = serde_json::to_string_pretty(&Value::Object(top)).expect("json values serialize");
        s.push('\n');
        s
    }

    fn cell(&self, row: &Map<String, Value>, col: &str) -> String {
        match row.get(col) {
            None | Some(Value::Null) => String::new(),
            Some(Value::String(s)) => s.clone(),
            Some(v) => v.to_string(),
        }
    }

    fn csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.items {
            let cells: Vec<String> = self
                .columns
                .iter()
                .map(|c| csv_escape(&self.cell(row, c)))
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn text(&self) -> String {
        if let Some(p) = &self.plain {
            return p.clone();
        }
        let grid: Vec<Vec<String>> = self
            .items
            .iter()
            .map(|r| self.columns.iter().map(|c| self.cell(r, c)).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| {
                grid.iter()
                    .map(|r| r[i].chars().count())
                    .chain([c.len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| -> String {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        let _ = writeln!(out, "{}", line(self.columns.clone()));
        for r in &grid {
            let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        let _ = writeln!(out, "verdict: {}", self.verdict());
        out
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn empty_json_shape() {
        let r = Report::new("relations", &["kind"]);
        let v: Value = serde_json::from_str(&r.emit(Format::Json)).unwrap();
        assert_eq!(v["items"], json!([]));
        assert_eq!(v["verdict"], json!("pass"));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let mut r = Report::new("sst-dims", &["dim_vector", "degree", "pass"]);
        r.push(vec![("dim_vector", json!("1,2")), ("degree", json!(3)), ("pass", json!(true))]);
        assert_eq!(r.emit(Format::Csv), "dim_vector,degree,pass\n\"1,2\",3,true\n");
    }

    #[test]
    fn failing_row_fails_report() {
        let mut r = Report::new("x", &["pass"]);
        r.push(vec![("pass", json!(false))]);
        assert!(r.emit(Format::Text).ends_with("verdict: fail\n"));
    }
}
