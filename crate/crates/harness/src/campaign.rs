//! Verification campaigns: many generated or enumerated diagrams per suite,
//! aggregated into one report.
//!
//! Random trials draw their seeds as the first `trials` outputs of
//! `rng_for(seed)` and are keyed by that seed. Exhaustive trials are keyed
//! by enumeration index. Trials run in parallel and are folded in key order,
//! so reports do not depend on scheduling.

use std::collections::{BTreeMap, BTreeSet};

use lambek_core::{Fgab, PSetCategory};
use rand::RngCore;
use rayon::prelude::*;
use thiserror::Error;

use crate::checks::{self, Outcome, TrialStatus};
use crate::diagram::{Backend, Diagram, DiagramFile, Payload, Shape};
use crate::duality::duality_verdict;
use crate::enumerate::{for_each_ladder, size_assignments, Ladder};
use crate::generate::{composable_pair, generate, generate_finite, rng_for, Constraint, Constraints};
use crate::report::{CampaignSummary, Counterexample, Report, Tally};

/// Counterexamples kept in a report; the failure count is always exact.
pub const MAX_COUNTEREXAMPLES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Axioms,
    Homology,
    Composition,
    LambekFormula,
    LambekIso,
    Nomura1,
    Nomura2,
    KernelRow,
    FiveLemma,
    Duality,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Axioms,
        Suite::Homology,
        Suite::Composition,
        Suite::LambekFormula,
        Suite::LambekIso,
        Suite::Nomura1,
        Suite::Nomura2,
        Suite::KernelRow,
        Suite::FiveLemma,
        Suite::Duality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Homology => "homology",
            Suite::Composition => "composition",
            Suite::LambekFormula => "lambek-formula",
            Suite::LambekIso => "lambek-iso",
            Suite::Nomura1 => "nomura1",
            Suite::Nomura2 => "nomura2",
            Suite::KernelRow => "kernel-row",
            Suite::FiveLemma => "fivelemma",
            Suite::Duality => "duality",
        }
    }

    /// Shape of the diagrams the suite checks.
    pub fn shape(self) -> Shape {
        match self {
            Suite::Homology | Suite::Composition => Shape::Pair,
            Suite::LambekFormula => Shape::Square,
            Suite::FiveLemma => Shape::FiveColumn,
            _ => Shape::TwoSquare,
        }
    }

    /// Backends the suite has something to check on.
    pub fn backends(self) -> &'static [Backend] {
        match self {
            Suite::LambekFormula | Suite::Duality => &[Backend::Fgab],
            _ => &[Backend::Fgab, Backend::Pset],
        }
    }

    /// Constraints for random trial `index`.
    fn constraints(self, index: u64) -> Constraints {
        use Constraint::*;
        let set: &[Constraint] = match self {
            Suite::LambekIso => &[RowsExact, BExact],
            Suite::Nomura1 | Suite::Nomura2 if index % 2 == 1 => &[BExact, RowsExact],
            Suite::Nomura1 | Suite::Nomura2 => &[BExact],
            Suite::KernelRow if index % 2 == 1 => &[RowsExact, FPrimeMono, GEpi],
            Suite::KernelRow => &[RowsExact, FPrimeMono],
            Suite::FiveLemma => &[RowsExact],
            _ => &[],
        };
        set.iter().copied().collect()
    }

    /// Default exhaustive enumeration as `(columns, rows, max_size, budget)`
    /// phases; `budget` bounds `Σ (size - 1)` over all objects.
    pub fn default_phases(self) -> Vec<Phase> {
        let phase = |columns, rows, max_size, budget| Phase { columns, rows, max_size, budget };
        match self {
            Suite::Axioms => vec![phase(3, 1, 5, 12), phase(2, 2, 3, 8)],
            Suite::Homology => vec![phase(3, 1, 5, 12)],
            Suite::LambekIso | Suite::Nomura1 | Suite::Nomura2 | Suite::KernelRow => {
                vec![phase(3, 2, 3, 12), phase(3, 2, 4, 8)]
            }
            Suite::FiveLemma => vec![phase(5, 2, 2, 10)],
            Suite::Composition | Suite::LambekFormula | Suite::Duality => vec![],
        }
    }
}

impl std::fmt::Display for Suite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "nomura1-null" {
            return Ok(Suite::Nomura1);
        }
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(|x| x.name()).collect();
                format!("unknown suite '{s}' (expected one of {})", names.join(", "))
            })
    }
}

/// One block of an exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Phase {
    pub columns: usize,
    pub rows: usize,
    pub max_size: usize,
    pub budget: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Mode {
    Random { trials: u64, seed: u64 },
    Exhaustive { phases: Vec<Phase> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CampaignSpec {
    pub suite: Suite,
    pub backend: Backend,
    pub mode: Mode,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum CampaignError {
    #[error("suite {suite} has nothing to check on the {backend} backend")]
    UnsupportedBackend { suite: Suite, backend: Backend },
    #[error("suite {suite} has no exhaustive enumeration on the {backend} backend")]
    NoEnumeration { suite: Suite, backend: Backend },
}

/// Per-trial summary; diagrams are only kept for failures.
struct Trial {
    key: u64,
    status: TrialStatus,
    clauses: Vec<(String, String, bool, bool)>,
    failure: Option<String>,
    diagram: Option<DiagramFile>,
}

/// Runs the suite's check on one diagram. `probe_seed` feeds the abelian
/// oracle's random probes.
pub fn evaluate(suite: Suite, diagram: &Diagram, probe_seed: u64) -> Outcome {
    match diagram {
        Diagram::Fgab(p) => evaluate_on(&Fgab::new(), suite, p, probe_seed, Some(p)),
        Diagram::Pset(p) => evaluate_on(&crate::pset_category(), suite, p, probe_seed, None),
    }
}

fn evaluate_on<C: checks::Oracles>(
    cat: &C,
    suite: Suite,
    p: &Payload<C::Mor>,
    probe_seed: u64,
    abelian: Option<&Payload<lambek_core::GroupMap>>,
) -> Outcome {
    let wrong_shape = || Outcome {
        error: Some(format!("suite {suite} needs a {} diagram, got {}", suite.shape(), p.shape())),
        ..Outcome::default()
    };
    let mut out = Outcome::default();
    match (suite, p) {
        (Suite::Axioms, _) => return checks::axioms_check(cat, p, &mut rng_for(probe_seed)),
        (Suite::Homology, _) => {
            for (label, f, g) in checks::null_pairs(p) {
                checks::pair_homology(cat, &label, &f, &g, &mut out);
            }
        }
        (Suite::Composition, Payload::Pair { f, g }) => checks::composition(cat, f, g, &mut out),
        (Suite::LambekFormula, _) => return checks::invariants_check(cat, p),
        (Suite::LambekIso, Payload::TwoSquare(d)) => return checks::lambek_check(cat, d),
        (Suite::Nomura1, Payload::TwoSquare(d)) => return checks::nomura1_check(cat, d),
        (Suite::Nomura2, Payload::TwoSquare(d)) => return checks::nomura2_check(cat, d),
        (Suite::KernelRow, Payload::TwoSquare(d)) => return checks::kernel_row_check(cat, d),
        (Suite::FiveLemma, Payload::FiveColumn(d)) => return checks::five_lemma_check(cat, d),
        (Suite::Duality, _) => match abelian {
            Some(Payload::TwoSquare(d)) => match duality_verdict(&Fgab::new(), d) {
                Ok(v) => out.verdicts.push(("duality".into(), v)),
                Err(e) => out.error = Some(format!("duality: {e}")),
            },
            _ => return wrong_shape(),
        },
        _ => return wrong_shape(),
    }
    out
}

fn trial(suite: Suite, key: u64, diagram: Result<Diagram, String>, probe_seed: u64) -> Trial {
    let diagram = match diagram {
        Ok(d) => d,
        Err(e) => {
            return Trial { key, status: TrialStatus::Fail, clauses: vec![], failure: Some(e), diagram: None };
        }
    };
    let out = evaluate(suite, &diagram, probe_seed);
    let status = out.status();
    let clauses = out
        .verdicts
        .iter()
        .flat_map(|(t, v)| v.clauses.iter().map(move |c| (t.clone(), c.name.clone(), c.applicable(), c.holds())))
        .collect();
    let failure = (status == TrialStatus::Fail).then(|| {
        let mut reasons = out.failing_clauses();
        reasons.extend(out.error.clone());
        reasons.join("; ")
    });
    let diagram = failure.as_ref().map(|_| DiagramFile::from_diagram(&diagram));
    Trial { key, status, clauses, failure, diagram }
}

/// Seeds of the random trials.
pub fn trial_seeds(seed: u64, trials: u64) -> Vec<u64> {
    let mut rng = rng_for(seed);
    (0..trials).map(|_| rng.next_u64()).collect()
}

/// The diagram a random trial of `suite` checks.
pub fn random_diagram(suite: Suite, backend: Backend, index: u64, seed: u64) -> Result<Diagram, String> {
    match suite {
        Suite::Composition => Ok(composable_pair(backend, seed)),
        Suite::Duality => generate_finite(Shape::TwoSquare, seed, &Constraints::new())
            .map(Diagram::Fgab)
            .map_err(|e| e.to_string()),
        _ => generate(backend, suite.shape(), seed, &suite.constraints(index)).map_err(|e| e.to_string()),
    }
}

fn ladder_diagram(cat: &PSetCategory, phase: &Phase, ladder: &Ladder) -> Result<Diagram, String> {
    let (shape, ms) = match (phase.columns, phase.rows) {
        (3, 1) => (Shape::Pair, ladder.top.clone()),
        (2, 2) => (
            Shape::Square,
            vec![ladder.top[0].clone(), ladder.verticals[0].clone(), ladder.verticals[1].clone(), ladder.bottom[0].clone()],
        ),
        (3, 2) | (5, 2) => {
            let shape = if phase.columns == 3 { Shape::TwoSquare } else { Shape::FiveColumn };
            (shape, ladder.top.iter().chain(&ladder.bottom).chain(&ladder.verticals).cloned().collect())
        }
        (c, r) => return Err(format!("no diagram shape has {r} row(s) of {c} objects")),
    };
    Payload::assemble(cat, shape, ms).map(Diagram::Pset).map_err(|e| e.to_string())
}

/// Running totals over trials folded in key order.
#[derive(Default)]
struct Aggregate {
    trials: u64,
    passed: u64,
    failed: u64,
    skipped: u64,
    tallies: BTreeMap<(String, String), (u64, u64)>,
    counterexamples: Vec<Counterexample>,
}

impl Aggregate {
    fn add(&mut self, t: Trial) {
        self.trials += 1;
        match t.status {
            TrialStatus::Pass => self.passed += 1,
            TrialStatus::Fail => self.failed += 1,
            TrialStatus::Skipped => self.skipped += 1,
        }
        for (theorem, clause, applicable, held) in t.clauses {
            let e = self.tallies.entry((theorem, clause)).or_default();
            if applicable {
                e.0 += 1;
                e.1 += u64::from(held);
            }
        }
        if let Some(reason) = t.failure {
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(Counterexample { reason, key: Some(t.key), diagram: t.diagram });
            }
        }
    }

    /// Appends `other`, whose keys start at zero, after the trials seen so far.
    fn extend(&mut self, other: Aggregate) {
        let offset = self.trials;
        self.trials += other.trials;
        self.passed += other.passed;
        self.failed += other.failed;
        self.skipped += other.skipped;
        for (k, (a, h)) in other.tallies {
            let e = self.tallies.entry(k).or_default();
            e.0 += a;
            e.1 += h;
        }
        for mut c in other.counterexamples {
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                c.key = c.key.map(|k| k + offset);
                self.counterexamples.push(c);
            }
        }
    }

    fn into_report(self, spec: &CampaignSpec, mode: String) -> Report {
        let mut report = Report::new("campaign", spec.backend.name(), Some(spec.suite.shape().name()));
        let shown = self.counterexamples.len() as u64;
        report.counterexamples = self.counterexamples;
        if self.failed > shown {
            report.note(format!("{} further failing trials not shown", self.failed - shown));
        }
        report.campaign = Some(CampaignSummary {
            suite: spec.suite.name().to_string(),
            mode,
            trials: self.trials,
            passed: self.passed,
            failed: self.failed,
            skipped: self.skipped,
            tallies: self
                .tallies
                .into_iter()
                .map(|((theorem, clause), (applicable, held))| Tally { theorem, clause, applicable, held })
                .collect(),
        });
        report.finish(None)
    }
}

pub fn run_campaign(spec: &CampaignSpec) -> Result<Report, CampaignError> {
    let (suite, backend) = (spec.suite, spec.backend);
    if !suite.backends().contains(&backend) {
        return Err(CampaignError::UnsupportedBackend { suite, backend });
    }
    match &spec.mode {
        Mode::Random { .. } => Ok(run_campaign_with(spec, |index, seed| random_diagram(suite, backend, index, seed))),
        Mode::Exhaustive { phases } => {
            if backend != Backend::Pset || phases.is_empty() {
                return Err(CampaignError::NoEnumeration { suite, backend });
            }
            Ok(run_exhaustive(spec, phases))
        }
    }
}

/// Random campaign with a caller-supplied generator taking the trial index
/// and seed.
pub fn run_campaign_with<G>(spec: &CampaignSpec, generator: G) -> Report
where
    G: Fn(u64, u64) -> Result<Diagram, String> + Sync,
{
    let (trials, seed) = match spec.mode {
        Mode::Random { trials, seed } => (trials, seed),
        Mode::Exhaustive { .. } => (0, 0),
    };
    let seeds = trial_seeds(seed, trials);
    let mut results: Vec<Trial> = seeds
        .par_iter()
        .enumerate()
        .map(|(i, &s)| trial(spec.suite, s, generator(i as u64, s), s ^ 0x5eed))
        .collect();
    results.sort_by_key(|t| t.key);
    let mut total = Aggregate::default();
    for t in results {
        total.add(t);
    }
    total.into_report(spec, format!("random, {trials} trials, seed {seed}"))
}

fn run_exhaustive(spec: &CampaignSpec, phases: &[Phase]) -> Report {
    let cat = crate::pset_category();
    let mut blocks: Vec<(Phase, Vec<usize>)> = Vec::new();
    let mut seen = BTreeSet::new();
    for phase in phases {
        for sizes in size_assignments(phase.columns, phase.rows, phase.max_size, phase.budget) {
            if seen.insert((phase.columns, phase.rows, sizes.clone())) {
                blocks.push((*phase, sizes));
            }
        }
    }
    let per_block: Vec<Aggregate> = blocks
        .par_iter()
        .map(|(phase, sizes)| {
            let mut agg = Aggregate::default();
            for_each_ladder(phase.columns, sizes, |ladder| {
                let index = agg.trials;
                agg.add(trial(spec.suite, index, ladder_diagram(&cat, phase, ladder), index));
            });
            agg
        })
        .collect();
    let mut total = Aggregate::default();
    for block in per_block {
        total.extend(block);
    }
    let desc: Vec<String> = phases
        .iter()
        .map(|p| format!("{}x{} sizes <= {} budget {}", p.rows, p.columns, p.max_size, p.budget))
        .collect();
    total.into_report(spec, format!("exhaustive, {}", desc.join(" + ")))
}
