//! Printing and writing command results: text tables on stdout, optional
//! CSV per table and a JSON document.

use std::fs;
use std::path::Path;

use anyhow::{Context, Result};
use ffd::experiments::{ExperimentReport, Table};
use serde::Serialize;
use serde_json::{json, Value};

use crate::config::{Config, Format};

/// What a command produced.
pub struct Output {
    pub name: String,
    pub lines: Vec<String>,
    pub tables: Vec<Table>,
    pub json: Value,
    /// `Some(false)` when a checked statement failed.
    pub passed: Option<bool>,
    /// Pre-rendered text (experiment reports render themselves).
    pub text: Option<String>,
}

impl Output {
    pub fn new(name: &str, cfg: &Config, result: impl Serialize) -> Self {
        let result = serde_json::to_value(result).expect("result serializes");
        Output {
            name: name.into(),
            lines: Vec::new(),
            tables: Vec::new(),
            json: json!({ "command": name, "config": cfg, "result": result }),
            passed: None,
            text: None,
        }
    }

    pub fn report(name: &str, rep: ExperimentReport) -> Self {
        Output {
            name: name.into(),
            lines: Vec::new(),
            tables: rep.tables.clone(),
            json: serde_json::to_value(&rep).expect("report serializes"),
            passed: Some(rep.passed),
            text: Some(rep.render()),
        }
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.lines.push(s.into());
        self
    }

    pub fn table(mut self, t: Table) -> Self {
        self.tables.push(t);
        self
    }

    pub fn render(&self) -> String {
        if let Some(t) = &self.text {
            return t.clone();
        }
        let mut out = String::new();
        for l in &self.lines {
            out += l;
            out.push('\n');
        }
        for t in &self.tables {
            out += &render_table(t);
        }
        out
    }

    pub fn emit(&self, cfg: &Config) -> Result<()> {
        match cfg.output.format {
            Format::Text => print!("{}", self.render()),
            Format::Json => println!("{}", serde_json::to_string_pretty(&self.json)?),
        }
        if let Some(dir) = &cfg.output.dir {
            write_files(Path::new(dir), self)?;
        }
        Ok(())
    }
}

fn render_table(t: &Table) -> String {
    let widths: Vec<usize> = (0..t.columns.len())
        .map(|i| t.rows.iter().map(|r| r[i].chars().count()).chain([t.columns[i].chars().count()]).max().unwrap_or(0))
        .collect();
    let line = |cells: &[String]| {
        let mut s = cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ");
        s.push('\n');
        s
    };
    let mut out = format!("-- {} --\n", t.name);
    out += &line(&t.columns);
    for r in &t.rows {
        out += &line(r);
    }
    out
}

/// `<dir>/<name>.json` plus `<dir>/<name>.<table>.csv` for every table.
pub fn write_files(dir: &Path, out: &Output) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let stem = out.name.replace(' ', "_");
    let json_path = dir.join(format!("{stem}.json"));
    fs::write(&json_path, serde_json::to_string_pretty(&out.json)? + "\n")
        .with_context(|| format!("writing {}", json_path.display()))?;
    for t in &out.tables {
        let path = dir.join(format!("{stem}.{}.csv", t.name));
        let mut w = csv::Writer::from_path(&path).with_context(|| format!("writing {}", path.display()))?;
        w.write_record(&t.columns)?;
        for r in &t.rows {
            w.write_record(r)?;
        }
        w.flush()?;
    }
    Ok(())
}
