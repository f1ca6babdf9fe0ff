//! Theorem check results.
//!
//! A clause pairs named hypothesis flags with a conclusion. The conclusion
//! is only binding when every hypothesis holds; a failing conclusion under
//! satisfied hypotheses is a [`ChaseError::TheoremViolated`].

use std::fmt;

use crate::error::{ChaseError, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    pub name: String,
    pub hypotheses: Vec<(String, bool)>,
    /// `None` when the conclusion could not be evaluated, which is only
    /// acceptable if some hypothesis fails.
    pub conclusion: Option<bool>,
}

impl Clause {
    pub fn new(name: impl Into<String>) -> Self {
        Clause { name: name.into(), hypotheses: Vec::new(), conclusion: None }
    }

    pub fn given(mut self, hypothesis: impl Into<String>, holds: bool) -> Self {
        self.hypotheses.push((hypothesis.into(), holds));
        self
    }

    pub fn concludes(mut self, holds: bool) -> Self {
        self.conclusion = Some(holds);
        self
    }

    pub fn concludes_opt(mut self, holds: Option<bool>) -> Self {
        self.conclusion = holds;
        self
    }

    pub fn applicable(&self) -> bool {
        self.hypotheses.iter().all(|(_, h)| *h)
    }

    /// Satisfied, or not applicable.
    pub fn holds(&self) -> bool {
        !self.applicable() || self.conclusion == Some(true)
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = match (self.applicable(), self.conclusion) {
            (true, Some(true)) => "holds",
            (true, _) => "FAILS",
            (false, Some(true)) => "holds (not required)",
            (false, Some(false)) => "fails (not required)",
            (false, None) => "skipped",
        };
        write!(f, "{}: {status}", self.name)?;
        if !self.hypotheses.is_empty() {
            let hs: Vec<String> = self
                .hypotheses
                .iter()
                .map(|(h, v)| format!("{h}={}", if *v { "yes" } else { "no" }))
                .collect();
            write!(f, " [{}]", hs.join(", "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Verdict {
    pub clauses: Vec<Clause>,
}

impl Verdict {
    pub fn push(&mut self, c: Clause) {
        self.clauses.push(c);
    }

    pub fn all_hold(&self) -> bool {
        self.clauses.iter().all(Clause::holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Clause> {
        self.clauses.iter().filter(|c| !c.holds())
    }

    pub fn get(&self, name: &str) -> Option<&Clause> {
        self.clauses.iter().find(|c| c.name == name)
    }

    /// Passes the record through, or reports the first binding failure.
    pub fn into_result(self) -> Result<Self> {
        if let Some(c) = self.failures().next() {
            return Err(ChaseError::TheoremViolated(c.to_string()));
        }
        Ok(self)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.clauses {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}
