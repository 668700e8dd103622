use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::Format;

/// A flat table backing the CSV rendering of a report.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&'static str]) -> Self {
        Table { header: header.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }
}

/// The outcome of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub command: &'static str,
    pub pass: bool,
    pub body: Map<String, Value>,
    pub table: Table,
    pub failures: Vec<Value>,
}

impl Report {
    pub fn new(command: &'static str, table: Table) -> Self {
        Report { command, pass: true, body: Map::new(), table, failures: Vec::new() }
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.body.insert(key.to_string(), serde_json::to_value(v).expect("report values serialize"));
    }

    /// Records one named check; a failure also lands in `failures`.
    pub fn check(&mut self, name: &str, pass: bool, detail: Value) {
        if !pass {
            self.pass = false;
            self.failures.push(json!({ "check": name, "detail": detail }));
        }
    }

    pub fn to_json(&self) -> Value {
        let mut m = self.body.clone();
        m.insert("command".into(), json!(self.command));
        m.insert("pass".into(), json!(self.pass));
        if !self.failures.is_empty() {
            m.insert("failures".into(), Value::Array(self.failures.clone()));
        }
        Value::Object(m)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("json");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.table.header).expect("csv header");
                for r in &self.table.rows {
                    w.write_record(r).expect("csv row");
                }
                String::from_utf8(w.into_inner().expect("csv flush")).expect("utf8")
            }
        }
    }

    /// What goes to stderr when a check fails.
    pub fn failure_detail(&self) -> Value {
        json!({ "command": self.command, "pass": false, "failures": self.failures })
    }
}
