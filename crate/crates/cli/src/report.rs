//! One report per invocation, rendered as an aligned table, CSV or JSON.

use std::io::Write;

use clap::ValueEnum;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

/// Outcome class mapped to the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    Failed,
    Critical,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::Critical => 3,
        }
    }
}

pub struct Report {
    pub command: &'static str,
    pub status: Status,
    /// Lines printed before the table in table format.
    pub summary: Vec<String>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
    /// Lines printed after the table in table format (certificates).
    pub details: Vec<String>,
    pub payload: Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str, header: Vec<&'static str>) -> Self {
        Report {
            command,
            status: Status::Ok,
            summary: Vec::new(),
            header,
            rows: Vec::new(),
            details: Vec::new(),
            payload: Map::new(),
        }
    }

    pub fn set(&mut self, key: &str, value: impl serde::Serialize) {
        self.payload.insert(key.to_string(), serde_json::to_value(value).expect("serializable"));
    }

    pub fn render(&self, format: Format, out: &mut impl Write) -> std::io::Result<()> {
        match format {
            Format::Table => self.render_table(out),
            Format::Csv => self.render_csv(out),
            Format::Json => {
                let mut doc = self.payload.clone();
                doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
                doc.insert("command".into(), json!(self.command));
                doc.insert("status".into(), json!(format!("{:?}", self.status).to_lowercase()));
                doc.insert("summary".into(), json!(self.summary));
                serde_json::to_writer_pretty(&mut *out, &Value::Object(doc))?;
                writeln!(out)
            }
        }
    }

    fn render_table(&self, out: &mut impl Write) -> std::io::Result<()> {
        for line in &self.summary {
            writeln!(out, "{line}")?;
        }
        if !self.rows.is_empty() {
            let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
            for row in &self.rows {
                for (w, cell) in widths.iter_mut().zip(row) {
                    *w = (*w).max(cell.chars().count());
                }
            }
            let line = |cells: Vec<&str>| {
                let padded: Vec<String> = cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                    .collect();
                padded.join("  ").trim_end().to_string()
            };
            writeln!(out, "{}", line(self.header.clone()))?;
            let rules: Vec<String> = widths.iter().map(|&w| "-".repeat(w)).collect();
            writeln!(out, "{}", line(rules.iter().map(String::as_str).collect()))?;
            for row in &self.rows {
                writeln!(out, "{}", line(row.iter().map(String::as_str).collect()))?;
            }
        }
        for line in &self.details {
            writeln!(out, "{line}")?;
        }
        Ok(())
    }

    fn render_csv(&self, out: &mut impl Write) -> std::io::Result<()> {
        let mut writer = csv::Writer::from_writer(out);
        writer.write_record(&self.header)?;
        for row in &self.rows {
            writer.write_record(row)?;
        }
        writer.flush()
    }
}

pub fn list<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|i| i.to_string()).collect();
    parts.join(" ")
}
