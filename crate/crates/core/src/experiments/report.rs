//! Report plumbing shared by the experiments.

use serde::Serialize;

use crate::report::{decimal, frac_string, Exponent};

/// What kind of statement a verdict makes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictKind {
    /// An exact identity or inequality that must hold.
    Exact,
    /// A finite-depth lower-bound certificate.
    Certificate,
    /// A one-sided check of an upper bound against computed samples.
    Audit,
    /// Agreement of a finite-depth ratio with a limit, within a tolerance.
    Agreement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub rule: String,
    pub kind: VerdictKind,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table { name: name.into(), columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// Result of one experiment: the configuration it ran with, its tables
/// and its verdicts. Serializes with a fixed key order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub config: serde_json::Value,
    pub tolerances: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub verdicts: Vec<Verdict>,
    pub notes: Vec<String>,
    pub passed: bool,
}

impl ExperimentReport {
    pub fn new(experiment: &str, config: &impl Serialize) -> Self {
        ExperimentReport {
            experiment: experiment.into(),
            config: serde_json::to_value(config).expect("config serializes"),
            tolerances: Vec::new(),
            tables: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            passed: true,
        }
    }

    pub fn verdict(&mut self, rule: &str, kind: VerdictKind, passed: bool, detail: impl Into<String>) {
        self.passed &= passed;
        self.verdicts.push(Verdict { rule: rule.into(), kind, passed, detail: detail.into() });
    }

    pub fn tolerance(&mut self, name: &str, value: &Exponent) {
        self.tolerances.push((name.into(), frac_string(value)));
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Plain-text rendering: tables, then verdicts.
    pub fn render(&self) -> String {
        let mut out = format!("== {} ==\n", self.experiment);
        for t in &self.tables {
            out += &format!("-- {} --\n", t.name);
            let widths: Vec<usize> = (0..t.columns.len())
                .map(|i| t.rows.iter().map(|r| r[i].len()).chain([t.columns[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |cells: &[String]| {
                cells.iter().zip(&widths).map(|(c, w)| format!("{c:>w$}")).collect::<Vec<_>>().join("  ") + "\n"
            };
            out += &line(&t.columns);
            for r in &t.rows {
                out += &line(r);
            }
        }
        for v in &self.verdicts {
            out += &format!("[{}] {} ({:?}): {}\n", if v.passed { "pass" } else { "FAIL" }, v.rule, v.kind, v.detail);
        }
        for n in &self.notes {
            out += &format!("note: {n}\n");
        }
        out
    }
}

/// `"a/b (≈x.xxxx)"`.
pub fn show(r: &Exponent) -> String {
    format!("{} ({})", frac_string(r), decimal(r, 4))
}

pub fn abs_diff(a: &Exponent, b: &Exponent) -> Exponent {
    if a > b {
        a - b
    } else {
        b - a
    }
}
