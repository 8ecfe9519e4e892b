//! Report structures shared by every subcommand, with JSON and text output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

pub const SCHEMA: &str = "snabs-report/1";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub entries: Vec<Entry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub corpus: Option<CorpusSummary>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub props: Vec<PropReport>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub totals: Totals,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

/// One computed fact: a verdict, an omega value, or a construction summary.
#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub check: String,
    pub result: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Entry {
    pub fn new(check: impl Into<String>, result: impl Into<String>) -> Entry {
        Entry { check: check.into(), result: result.into(), witness: None, counterexample: None, detail: None }
    }

    pub fn witness(mut self, w: Option<String>) -> Entry {
        self.witness = w;
        self
    }

    pub fn counterexample(mut self, c: Option<Vec<String>>) -> Entry {
        self.counterexample = c;
        self
    }

    pub fn detail(mut self, d: impl Into<String>) -> Entry {
        self.detail = Some(d.into());
        self
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Totals {
    pub run: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub name: String,
    pub seed: u64,
    pub rings: usize,
    pub amalgamations: usize,
    pub products: usize,
    pub extensions: usize,
    pub surjections: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub excluded: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PropReport {
    pub id: String,
    pub slug: String,
    pub title: String,
    pub run: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub skip_reasons: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub clause: String,
    pub detail: String,
    pub replay: String,
}

impl Report {
    pub fn new(command: String) -> Report {
        Report {
            schema: SCHEMA,
            command,
            entries: Vec::new(),
            corpus: None,
            props: Vec::new(),
            notes: Vec::new(),
            totals: Totals::default(),
            wall_ms: None,
        }
    }

    /// A report whose entries all count as passed computations.
    pub fn with_entries(command: String, entries: Vec<Entry>) -> Report {
        let mut r = Report::new(command);
        let n = entries.len() as u64;
        r.entries = entries;
        r.totals = Totals { run: n, passed: n, failed: 0, skipped: 0 };
        r
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ {}", self.command);
        for e in &self.entries {
            let _ = write!(out, "{}: {}", e.check, e.result);
            if let Some(w) = &e.witness {
                let _ = write!(out, ", witness {w}");
            }
            if let Some(c) = &e.counterexample {
                let _ = write!(out, ", counterexample ({})", c.join(", "));
            }
            if let Some(d) = &e.detail {
                let _ = write!(out, " [{d}]");
            }
            out.push('\n');
        }
        if let Some(c) = &self.corpus {
            let _ = writeln!(
                out,
                "corpus {} (seed {}): {} rings, {} amalgamations, {} products, {} extensions, {} surjections",
                c.name, c.seed, c.rings, c.amalgamations, c.products, c.extensions, c.surjections
            );
            for x in &c.excluded {
                let _ = writeln!(out, "  excluded: {x}");
            }
        }
        for p in &self.props {
            let status = if p.failed > 0 { "FAIL" } else { "ok" };
            let _ = write!(
                out,
                "{:<4} {:<7} {:<26} run {:>7}  passed {:>7}  failed {:>4}  skipped {:>7}",
                status, p.id, p.slug, p.run, p.passed, p.failed, p.skipped
            );
            if let Some(ms) = p.wall_ms {
                let _ = write!(out, "  {ms} ms");
            }
            out.push('\n');
            for f in &p.failures {
                let _ = writeln!(out, "     failure [{}] {}: {}", f.clause, f.instance, f.detail);
                let _ = writeln!(out, "       replay: {}", f.replay);
            }
            for n in &p.notes {
                let _ = writeln!(out, "     note: {n}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "note: {n}");
        }
        let t = &self.totals;
        let _ = write!(out, "totals: run {}, passed {}, failed {}, skipped {}", t.run, t.passed, t.failed, t.skipped);
        if let Some(ms) = self.wall_ms {
            let _ = write!(out, ", {ms} ms");
        }
        out.push('\n');
        out
    }
}
