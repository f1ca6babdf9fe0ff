//! Verification reports in a text and a structured (JSON) rendering.
//! Field order is fixed by the struct definitions, so identical inputs give
//! byte-identical output.

use std::fmt::Write as _;
use std::path::Path;

use lambek_core::{Clause, Verdict};
use serde::Serialize;

use crate::diagram::DiagramFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Structured,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "text" => Ok(Format::Text),
            "structured" | "json" => Ok(Format::Structured),
            _ => Err(format!("unknown format '{s}' (expected text or structured)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub name: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObjectRecord {
    pub name: String,
    pub invariant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseRecord {
    pub theorem: String,
    pub clause: String,
    pub hypotheses: Vec<Flag>,
    pub conclusion: Option<bool>,
    /// `holds`, `FAILS`, `not required` or `skipped`.
    pub status: String,
}

impl ClauseRecord {
    pub fn from_clause(theorem: &str, c: &Clause) -> Self {
        let status = match (c.applicable(), c.conclusion) {
            (true, Some(true)) => "holds",
            (true, _) => "FAILS",
            (false, Some(_)) => "not required",
            (false, None) => "skipped",
        };
        ClauseRecord {
            theorem: theorem.to_string(),
            clause: c.name.clone(),
            hypotheses: c.hypotheses.iter().map(|(n, h)| Flag { name: n.clone(), holds: *h }).collect(),
            conclusion: c.conclusion,
            status: status.to_string(),
        }
    }

    pub fn must_hold_failure(&self) -> bool {
        self.status == "FAILS"
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub key: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagram: Option<DiagramFile>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub theorem: String,
    pub clause: String,
    pub applicable: u64,
    pub held: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignSummary {
    pub suite: String,
    pub mode: String,
    pub trials: u64,
    pub passed: u64,
    pub failed: u64,
    pub skipped: u64,
    pub tallies: Vec<Tally>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub backend: String,
    pub shape: Option<String>,
    pub status: Status,
    pub flags: Vec<Flag>,
    pub objects: Vec<ObjectRecord>,
    pub verdicts: Vec<ClauseRecord>,
    pub notes: Vec<String>,
    pub campaign: Option<CampaignSummary>,
    pub counterexamples: Vec<Counterexample>,
}

impl Report {
    pub fn new(command: &str, backend: &str, shape: Option<&str>) -> Self {
        Report {
            command: command.to_string(),
            backend: backend.to_string(),
            shape: shape.map(str::to_string),
            status: Status::Pass,
            flags: Vec::new(),
            objects: Vec::new(),
            verdicts: Vec::new(),
            notes: Vec::new(),
            campaign: None,
            counterexamples: Vec::new(),
        }
    }

    pub fn flag(&mut self, name: &str, holds: bool) {
        self.flags.push(Flag { name: name.to_string(), holds });
    }

    pub fn object(&mut self, name: &str, invariant: impl ToString) {
        self.objects.push(ObjectRecord { name: name.to_string(), invariant: invariant.to_string() });
    }

    pub fn verdict(&mut self, theorem: &str, v: &Verdict) {
        for c in &v.clauses {
            self.verdicts.push(ClauseRecord::from_clause(theorem, c));
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Records a MUST-hold failure that is not a clause.
    pub fn fail(&mut self, reason: impl Into<String>, diagram: Option<DiagramFile>) {
        self.counterexamples.push(Counterexample { reason: reason.into(), key: None, diagram });
    }

    /// Sets the status from the verdicts and counterexamples; a failing
    /// clause without a counterexample gets the given diagram attached.
    pub fn finish(mut self, diagram: Option<&DiagramFile>) -> Self {
        let failing: Vec<String> = self
            .verdicts
            .iter()
            .filter(|c| c.must_hold_failure())
            .map(|c| format!("{}: {}", c.theorem, c.clause))
            .collect();
        if !failing.is_empty() && self.counterexamples.is_empty() {
            self.counterexamples.push(Counterexample {
                reason: format!("conclusion fails with hypotheses satisfied: {}", failing.join("; ")),
                key: None,
                diagram: diagram.cloned(),
            });
        }
        let campaign_failed = self.campaign.as_ref().is_some_and(|c| c.failed > 0);
        self.status = if failing.is_empty() && self.counterexamples.is_empty() && !campaign_failed {
            Status::Pass
        } else {
            Status::Fail
        };
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Structured => {
                let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
                s.push('\n');
                s
            }
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let yes_no = |b: bool| if b { "yes" } else { "no" };
        let _ = writeln!(out, "command: {}", self.command);
        let _ = writeln!(out, "backend: {}", self.backend);
        if let Some(shape) = &self.shape {
            let _ = writeln!(out, "shape: {shape}");
        }
        let _ = writeln!(out, "status: {}", if self.passed() { "pass" } else { "FAIL" });
        if let Some(c) = &self.campaign {
            let _ = writeln!(out, "suite: {} ({})", c.suite, c.mode);
            let _ = writeln!(out, "trials: {} passed, {} failed, {} skipped of {}", c.passed, c.failed, c.skipped, c.trials);
            if !c.tallies.is_empty() {
                let _ = writeln!(out, "clauses:");
                for t in &c.tallies {
                    let _ = writeln!(out, "  [{}] {}: held {} of {} applicable", t.theorem, t.clause, t.held, t.applicable);
                }
            }
        }
        if !self.flags.is_empty() {
            let _ = writeln!(out, "flags:");
            for f in &self.flags {
                let _ = writeln!(out, "  {}: {}", f.name, yes_no(f.holds));
            }
        }
        if !self.objects.is_empty() {
            let _ = writeln!(out, "objects:");
            for o in &self.objects {
                let _ = writeln!(out, "  {}: {}", o.name, o.invariant);
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out, "verdicts:");
            for c in &self.verdicts {
                let _ = write!(out, "  [{}] {}: {}", c.theorem, c.clause, c.status);
                if !c.hypotheses.is_empty() {
                    let hs: Vec<String> = c.hypotheses.iter().map(|h| format!("{}={}", h.name, yes_no(h.holds))).collect();
                    let _ = write!(out, " [{}]", hs.join(", "));
                }
                out.push('\n');
            }
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "notes:");
            for n in &self.notes {
                let _ = writeln!(out, "  {n}");
            }
        }
        for c in &self.counterexamples {
            match c.key {
                Some(k) => {
                    let _ = writeln!(out, "counterexample (trial {k}): {}", c.reason);
                }
                None => {
                    let _ = writeln!(out, "counterexample: {}", c.reason);
                }
            }
            if let Some(d) = &c.diagram {
                for line in d.to_toml().lines() {
                    let _ = writeln!(out, "  | {line}");
                }
            }
        }
        out
    }
}

pub fn save_report(report: &Report, format: Format, path: &Path) -> std::io::Result<()> {
    std::fs::write(path, report.render(format))
}
