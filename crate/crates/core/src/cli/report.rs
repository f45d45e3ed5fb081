//! Command reports and their text, JSON, Markdown and CSV renderings.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Markdown,
    Csv,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: vec![],
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        String::from_utf8(bytes).map_err(|e| Error::Config(e.to_string()))
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("| {} |\n|", self.header.join(" | "));
        for _ in &self.header {
            s.push_str("---|");
        }
        s.push('\n');
        for r in &self.rows {
            let _ = writeln!(s, "| {} |", r.join(" | "));
        }
        s
    }
}

/// Outcome of one command.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub passed: bool,
    pub seed: u64,
    /// Grid sizes, tolerances and other settings the result depends on.
    pub settings: Map<String, Value>,
    /// Human-readable summary, one finding per line.
    pub lines: Vec<String>,
    pub data: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

impl Report {
    pub fn new(command: &str, seed: u64) -> Self {
        Report {
            command: command.into(),
            passed: true,
            seed,
            settings: Map::new(),
            lines: vec![],
            data: Value::Null,
            table: None,
        }
    }

    pub fn set(&mut self, key: &str, v: impl Serialize) {
        self.settings.insert(key.into(), serde_json::to_value(v).unwrap_or(Value::Null));
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// Records a check; a failing check fails the report.
    pub fn check(&mut self, ok: bool, s: impl Into<String>) {
        self.passed &= ok;
        self.lines.push(s.into());
    }

    pub fn verdict(&self) -> &'static str {
        if self.passed {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for l in &self.lines {
            let _ = writeln!(s, "{l}");
        }
        if let Some(t) = &self.table {
            s.push('\n');
            s.push_str(&t.to_markdown());
        }
        let _ = writeln!(s, "{}: {}", self.command, self.verdict());
        s
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("# {}\n\n**{}** (seed {})\n\n", self.command, self.verdict(), self.seed);
        if !self.settings.is_empty() {
            s.push_str("## Settings\n\n| key | value |\n|---|---|\n");
            for (k, v) in &self.settings {
                let _ = writeln!(s, "| {k} | {v} |");
            }
            s.push('\n');
        }
        s.push_str("## Findings\n\n");
        for l in &self.lines {
            let _ = writeln!(s, "- {l}");
        }
        if let Some(t) = &self.table {
            s.push_str("\n## Table\n\n");
            s.push_str(&t.to_markdown());
        }
        s
    }

    pub fn render(&self, f: Format) -> Result<String> {
        match f {
            Format::Text => Ok(self.to_text()),
            Format::Json => self.to_json(),
            Format::Markdown => Ok(self.to_markdown()),
            Format::Csv => match &self.table {
                Some(t) => t.to_csv(),
                None => Err(Error::Config(format!("{} has no tabular output", self.command))),
            },
        }
    }

    /// Writes `<stem>.json` and `<stem>.md`, plus `<stem>.csv` when there is a table.
    pub fn write_all(&self, dir: &Path, stem: &str) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{stem}.json")), self.to_json()?)?;
        std::fs::write(dir.join(format!("{stem}.md")), self.to_markdown())?;
        if let Some(t) = &self.table {
            std::fs::write(dir.join(format!("{stem}.csv")), t.to_csv()?)?;
        }
        Ok(())
    }
}

/// Exit status for an error: 2 for bad input, 1 for a failed check.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Shape(_) | Error::Domain(_) | Error::Quantization(_) | Error::Config(_) | Error::Io(_) | Error::Json(_) | Error::Csv(_) => 2,
        Error::Certification(_) | Error::Snap { .. } | Error::Mismatch(_) | Error::Integration(_) => 1,
    }
}

pub fn exit_code(r: &Result<Report>) -> i32 {
    match r {
        Ok(rep) if rep.passed => 0,
        Ok(_) => 1,
        Err(e) => error_exit_code(e),
    }
}
