//! Rendering of command results as JSON, CSV or markdown.

use clap::ValueEnum;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Md => "md",
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(headers: &[&str]) -> Self {
        Table { headers: headers.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    fn markdown(&self) -> String {
        let esc = |s: &str| s.replace('|', "\\|");
        let mut out = format!("| {} |\n", self.headers.iter().map(|h| esc(h)).collect::<Vec<_>>().join(" | "));
        out += &format!("|{}\n", "---|".repeat(self.headers.len()));
        for r in &self.rows {
            out += &format!("| {} |\n", r.iter().map(|c| esc(c)).collect::<Vec<_>>().join(" | "));
        }
        out
    }
}

/// One command result. `csv` is the machine table; `md` may add sections around it.
pub struct Output {
    pub kind: &'static str,
    pub payload: Value,
    pub csv: Table,
    pub md: Vec<(Option<String>, Table)>,
}

impl Output {
    pub fn single(kind: &'static str, payload: Value, table: Table) -> Self {
        Output { kind, payload, md: vec![(None, table.clone())], csv: table }
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Json => {
                let doc = json!({ "schema_version": SCHEMA_VERSION, "kind": self.kind, "payload": self.payload });
                serde_json::to_string_pretty(&doc)? + "\n"
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(Vec::new());
                w.write_record(&self.csv.headers)?;
                for r in &self.csv.rows {
                    w.write_record(r)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
            Format::Md => {
                let mut out = String::new();
                for (title, t) in &self.md {
                    if !out.is_empty() {
                        out.push('\n');
                    }
                    if let Some(title) = title {
                        out += &format!("### {title}\n\n");
                    }
                    out += &t.markdown();
                }
                out
            }
        })
    }
}
