//! Structured output: every command emits one record carrying the tool
//! version, the command name, its inputs, a provenance tag, and the value
//! payload. Exact values always serialize as "num/den" strings.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde_json::{json, Map, Value};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub enum Payload {
    /// A single scalar (exact rational "num/den", an integer count, …).
    Value(String),
    /// A list of items (partitions).
    List { header: &'static str, items: Vec<String> },
    /// A square matrix of scalars.
    Matrix(Vec<Vec<String>>),
    /// A table with named columns.
    Table { columns: Vec<&'static str>, rows: Vec<Vec<String>> },
}

pub struct Record {
    pub command: String,
    pub inputs: Map<String, Value>,
    /// "exact" | "count" | "montecarlo"
    pub provenance: &'static str,
    pub payload: Payload,
}

impl Record {
    pub fn new(command: &str, provenance: &'static str, payload: Payload) -> Self {
        Record { command: command.into(), inputs: Map::new(), provenance, payload }
    }

    pub fn input(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.inputs.insert(key.into(), value.into());
        self
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("tool_version".into(), json!(TOOL_VERSION));
        obj.insert("command".into(), json!(self.command));
        obj.insert("inputs".into(), Value::Object(self.inputs.clone()));
        obj.insert("provenance".into(), json!(self.provenance));
        match &self.payload {
            Payload::Value(v) => {
                obj.insert("value".into(), json!(v));
            }
            Payload::List { items, .. } => {
                obj.insert("values".into(), json!(items));
                obj.insert("count".into(), json!(items.len()));
            }
            Payload::Matrix(rows) => {
                obj.insert("values".into(), json!(rows));
            }
            Payload::Table { columns, rows } => {
                let objs: Vec<Value> = rows
                    .iter()
                    .map(|row| {
                        let mut m = Map::new();
                        for (c, v) in columns.iter().zip(row) {
                            m.insert((*c).into(), json!(v));
                        }
                        Value::Object(m)
                    })
                    .collect();
                obj.insert("values".into(), json!(objs));
            }
        }
        Value::Object(obj)
    }

    fn to_csv(&self) -> String {
        fn esc(field: &str) -> String {
            if field.contains(',') || field.contains('"') || field.contains('\n') {
                format!("\"{}\"", field.replace('"', "\"\""))
            } else {
                field.to_string()
            }
        }
        let mut out = String::new();
        match &self.payload {
            Payload::Value(v) => {
                out.push_str("command,value\n");
                out.push_str(&format!("{},{}\n", esc(&self.command), esc(v)));
            }
            Payload::List { header, items } => {
                out.push_str(&format!("index,{header}\n"));
                for (i, item) in items.iter().enumerate() {
                    out.push_str(&format!("{},{}\n", i, esc(item)));
                }
            }
            Payload::Matrix(rows) => {
                out.push_str("row,col,value\n");
                for (i, row) in rows.iter().enumerate() {
                    for (j, v) in row.iter().enumerate() {
                        out.push_str(&format!("{},{},{}\n", i, j, esc(v)));
                    }
                }
            }
            Payload::Table { columns, rows } => {
                out.push_str(&columns.join(","));
                out.push('\n');
                for row in rows {
                    let fields: Vec<String> = row.iter().map(|v| esc(v)).collect();
                    out.push_str(&fields.join(","));
                    out.push('\n');
                }
            }
        }
        out
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Value(v) => {
                out.push_str(&format!("{} = {}\n", self.command, v));
            }
            Payload::List { items, .. } => {
                for item in items {
                    out.push_str(item);
                    out.push('\n');
                }
                out.push_str(&format!("({} items)\n", items.len()));
            }
            Payload::Matrix(rows) => {
                let width = rows
                    .iter()
                    .flat_map(|r| r.iter().map(|v| v.len()))
                    .max()
                    .unwrap_or(0);
                for row in rows {
                    let line: Vec<String> = row.iter().map(|v| format!("{v:>width$}")).collect();
                    out.push_str(&format!("[ {} ]\n", line.join("  ")));
                }
            }
            Payload::Table { columns, rows } => {
                let mut widths: Vec<usize> = columns.iter().map(|c| c.len()).collect();
                for row in rows {
                    for (w, v) in widths.iter_mut().zip(row) {
                        *w = (*w).max(v.len());
                    }
                }
                let fmt_row = |cells: Vec<String>| -> String {
                    cells
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:<w$}"))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                out.push_str(&fmt_row(columns.iter().map(|c| c.to_string()).collect()));
                out.push('\n');
                for row in rows {
                    out.push_str(&fmt_row(row.clone()));
                    out.push('\n');
                }
            }
        }
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.to_json()).unwrap()),
            Format::Csv => self.to_csv(),
            Format::Text => self.to_text(),
        }
    }

    pub fn emit(&self, format: Format, out: Option<&Path>) -> io::Result<()> {
        let rendered = self.render(format);
        match out {
            Some(path) => fs::write(path, rendered),
            None => io::stdout().write_all(rendered.as_bytes()),
        }
    }
}

/// Machine-readable error record (exit code 1 cases).
pub fn error_record(command: &str, category: &str, message: &str, format: Format) -> String {
    match format {
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&json!({
                "tool_version": TOOL_VERSION,
                "command": command,
                "error": category,
                "message": message,
            }))
            .unwrap()
        ),
        Format::Csv => format!("command,error,message\n{command},{category},\"{message}\"\n"),
        Format::Text => format!("error[{category}]: {message}\n"),
    }
}
