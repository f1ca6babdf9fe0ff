//! Per-diagram verification, shared by the CLI commands and campaigns.

use lambek_core::fgab::{homology_group_formula, lambek_group_formula};
use lambek_core::homology::{composition_sequence, homology_pair};
use lambek_core::lambek::{check_lambek_iso, lambek_invariants, lambek_morphism};
use lambek_core::nomura::{
    five_lemma, five_lemma_homologies, kernel_row_exactness, nomura_first, nomura_first_verdict, nomura_second,
    nomura_second_verdict, short_exact_corollary, Endpoint,
};
use lambek_core::{
    Category, CategoryExt, ChaseError, Clause, Fgab, FiveColumnDiagram, GroupMap, LambekSide, PSetCategory, Square,
    TwoSquareDiagram, Verdict,
};
use rand_chacha::ChaCha8Rng;

use crate::diagram::{Payload, Shape};
use crate::oracle::{composition_closed, fgab_universal, library_data, pset_universal, UniversalKind};
use crate::report::Report;

/// Backend-specific oracles.
pub trait Oracles: Category {
    /// `Ker g / Im f` computed without the categorical construction.
    fn homology_formula(&self, f: &Self::Mor, g: &Self::Mor) -> Option<Self::Invariant>;
    /// Subquotient formula for a Lambek invariant.
    fn lambek_formula(&self, sq: &Square<Self::Mor>, side: LambekSide) -> Option<Self::Invariant>;
    fn universal(&self, kind: UniversalKind, f: &Self::Mor, g: Option<&Self::Mor>, rng: &mut ChaCha8Rng) -> lambek_core::Result<bool>;
}

impl Oracles for Fgab {
    fn homology_formula(&self, f: &GroupMap, g: &GroupMap) -> Option<Self::Invariant> {
        Some(homology_group_formula(f, g))
    }

    fn lambek_formula(&self, sq: &Square<GroupMap>, side: LambekSide) -> Option<Self::Invariant> {
        Some(lambek_group_formula(sq, side))
    }

    fn universal(&self, kind: UniversalKind, f: &GroupMap, g: Option<&GroupMap>, rng: &mut ChaCha8Rng) -> lambek_core::Result<bool> {
        fgab_universal(self, &library_data(self, kind, f, g)?, rng)
    }
}

impl Oracles for PSetCategory {
    fn homology_formula(&self, _: &Self::Mor, _: &Self::Mor) -> Option<Self::Invariant> {
        None
    }

    fn lambek_formula(&self, _: &Square<Self::Mor>, _: LambekSide) -> Option<Self::Invariant> {
        None
    }

    fn universal(&self, kind: UniversalKind, f: &Self::Mor, g: Option<&Self::Mor>, _: &mut ChaCha8Rng) -> lambek_core::Result<bool> {
        pset_universal(self, &library_data(self, kind, f, g)?)
    }
}

/// Result of one check on one diagram.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub flags: Vec<(String, bool)>,
    pub objects: Vec<(String, String)>,
    pub verdicts: Vec<(String, Verdict)>,
    pub notes: Vec<String>,
    /// A construction refused for a hypothesis of the theorem under test.
    pub refused: bool,
    /// An error that no hypothesis explains.
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrialStatus {
    Pass,
    Fail,
    Skipped,
}

impl Outcome {
    fn flag(&mut self, name: impl Into<String>, holds: bool) {
        self.flags.push((name.into(), holds));
    }

    fn object<C: Category + ?Sized>(&mut self, cat: &C, name: impl Into<String>, x: &C::Obj) {
        self.objects.push((name.into(), cat.invariant(x).to_string()));
    }

    fn verdict(&mut self, theorem: &str, v: Verdict) {
        self.verdicts.push((theorem.to_string(), v));
    }

    /// Runs `body`, turning a hypothesis refusal into a note and any other
    /// error into a failure.
    fn guard(&mut self, what: &str, body: impl FnOnce(&mut Self) -> lambek_core::Result<()>) {
        if let Err(e) = body(self) {
            match e {
                ChaseError::HypothesisViolated(_) => {
                    self.notes.push(format!("{what} refused: {e}"));
                    self.refused = true;
                }
                other => self.error = Some(format!("{what}: {other}")),
            }
        }
    }

    pub fn failing_clauses(&self) -> Vec<String> {
        self.verdicts
            .iter()
            .flat_map(|(t, v)| v.failures().map(move |c| format!("[{t}] {c}")))
            .collect()
    }

    pub fn status(&self) -> TrialStatus {
        if self.error.is_some() || !self.failing_clauses().is_empty() {
            return TrialStatus::Fail;
        }
        let applicable = self.verdicts.iter().any(|(_, v)| v.clauses.iter().any(Clause::applicable));
        if self.refused || !applicable {
            TrialStatus::Skipped
        } else {
            TrialStatus::Pass
        }
    }

    pub fn into_report(self, report: &mut Report) {
        for (n, h) in &self.flags {
            report.flag(n, *h);
        }
        for (n, i) in &self.objects {
            report.object(n, i);
        }
        for (t, v) in &self.verdicts {
            report.verdict(t, v);
        }
        for n in self.notes {
            report.note(n);
        }
        if let Some(e) = self.error {
            report.fail(e, None);
        }
    }
}

/// Null pairs appearing as consecutive row maps, with labels.
pub fn null_pairs<M: Clone>(p: &Payload<M>) -> Vec<(String, M, M)> {
    match p {
        Payload::Pair { f, g } => vec![("(f,g)".into(), f.clone(), g.clone())],
        Payload::Square(_) => vec![],
        Payload::TwoSquare(d) => vec![
            ("(f,g)".into(), d.f.clone(), d.g.clone()),
            ("(f',g')".into(), d.fp.clone(), d.gp.clone()),
        ],
        Payload::FiveColumn(d) => {
            let names = ["f", "g", "h", "k"];
            let mut out = Vec::new();
            for i in 0..3 {
                out.push((format!("({},{})", names[i], names[i + 1]), d.top[i].clone(), d.top[i + 1].clone()));
                out.push((format!("({}',{}')", names[i], names[i + 1]), d.bottom[i].clone(), d.bottom[i + 1].clone()));
            }
            out
        }
    }
}

/// Labelled squares of a payload.
fn squares<M: Clone>(p: &Payload<M>) -> Vec<(String, Square<M>)> {
    match p {
        Payload::Pair { .. } => vec![],
        Payload::Square(s) => vec![("S".into(), s.clone())],
        Payload::TwoSquare(d) => vec![("S".into(), d.s()), ("T".into(), d.t())],
        Payload::FiveColumn(d) => (0..4).map(|i| (format!("S{}", i + 1), d.square(i))).collect(),
    }
}

/// Homology of one null pair: `m(f,g)` is an isomorphism, exactness agrees
/// with null homology, and (abelian) the invariant matches `Ker g / Im f`.
pub fn pair_homology<C: Oracles + ?Sized>(cat: &C, label: &str, f: &C::Mor, g: &C::Mor, out: &mut Outcome) {
    out.guard(&format!("homology {label}"), |out| {
        let h = homology_pair(cat, f, g)?;
        out.object(cat, format!("H-{label}"), &h.h_minus);
        out.object(cat, format!("H+{label}"), &h.h_plus);
        let exact = cat.exact_at(f, g);
        out.flag(format!("exact at {label}"), exact);
        let mut v = Verdict::default();
        v.push(Clause::new(format!("m{label} is an isomorphism")).concludes(cat.is_iso(&h.m)));
        v.push(Clause::new(format!("exact at {label} iff homology is null")).concludes(exact == cat.is_null_object(&h.h_minus)));
        if let Some(formula) = cat.homology_formula(f, g) {
            v.push(Clause::new(format!("H{label} matches Ker g / Im f")).concludes(cat.invariant(&h.h_minus) == formula));
        }
        out.verdict("homology", v);
        Ok(())
    });
}

/// The six-term sequence of a composable pair.
pub fn composition<C: Category + ?Sized>(cat: &C, f: &C::Mor, g: &C::Mor, out: &mut Outcome) {
    out.guard("composition sequence", |out| {
        let seq = composition_sequence(cat, f, g)?;
        out.flag("f exact", seq.f_exact);
        out.flag("g exact", seq.g_exact);
        for (name, x) in [
            ("Ker f", &seq.ker_f),
            ("Ker gf", &seq.ker_gf),
            ("Ker g", &seq.ker_g),
            ("Coker f", &seq.coker_f),
            ("Coker gf", &seq.coker_gf),
            ("Coker g", &seq.coker_g),
        ] {
            out.object(cat, name, x);
        }
        out.verdict("composition", seq.verdict(cat)?);
        Ok(())
    });
}

pub fn homology_check<C: Oracles + ?Sized>(cat: &C, p: &Payload<C::Mor>) -> Outcome {
    let mut out = Outcome::default();
    for (label, f, g) in null_pairs(p) {
        pair_homology(cat, &label, &f, &g, &mut out);
    }
    if let Payload::Pair { f, g } = p {
        composition(cat, f, g, &mut out);
    }
    out
}

pub fn square_invariants<C: Oracles + ?Sized>(cat: &C, label: &str, sq: &Square<C::Mor>, out: &mut Outcome) {
    out.guard(&format!("invariants of {label}"), |out| {
        let (img, _) = lambek_invariants(cat, sq, LambekSide::Img)?;
        let (ker, _) = lambek_invariants(cat, sq, LambekSide::Ker)?;
        out.object(cat, format!("Img {label}"), &img);
        out.object(cat, format!("Ker {label}"), &ker);
        let mut v = Verdict::default();
        if let Some(formula) = cat.lambek_formula(sq, LambekSide::Img) {
            v.push(Clause::new(format!("Img {label} matches (Im right ∩ Im bottom)/Im(diagonal)")).concludes(cat.invariant(&img) == formula));
        }
        if let Some(formula) = cat.lambek_formula(sq, LambekSide::Ker) {
            v.push(Clause::new(format!("Ker {label} matches Ker(diagonal)/(Ker top + Ker left)")).concludes(cat.invariant(&ker) == formula));
        }
        out.verdict("invariants", v);
        Ok(())
    });
}

pub fn invariants_check<C: Oracles + ?Sized>(cat: &C, p: &Payload<C::Mor>) -> Outcome {
    let mut out = Outcome::default();
    for (label, sq) in squares(p) {
        square_invariants(cat, &label, &sq, &mut out);
    }
    out
}

fn two_square<M: Clone>(p: &Payload<M>, command: &str) -> Result<TwoSquareDiagram<M>, String> {
    match p {
        Payload::TwoSquare(d) => Ok(d.clone()),
        other => Err(format!("{command} needs a {} diagram, got {}", Shape::TwoSquare, other.shape())),
    }
}

fn five_column<M: Clone>(p: &Payload<M>) -> Result<FiveColumnDiagram<M>, String> {
    match p {
        Payload::FiveColumn(d) => Ok(d.clone()),
        other => Err(format!("fivelemma needs a {} diagram, got {}", Shape::FiveColumn, other.shape())),
    }
}

fn row_flags<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>, out: &mut Outcome) -> lambek_core::Result<bool> {
    let b_exact = cat.is_exact_morphism(&d.b)?;
    out.flag("b exact", b_exact);
    out.flag("f exact", cat.is_exact_morphism(&d.f)?);
    out.flag("g' exact", cat.is_exact_morphism(&d.gp)?);
    out.flag("top row exact at B", cat.exact_at(&d.f, &d.g));
    out.flag("bottom row exact at B'", cat.exact_at(&d.fp, &d.gp));
    Ok(b_exact)
}

pub fn lambek_check<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Outcome {
    let mut out = Outcome::default();
    out.guard("flags", |out| row_flags(cat, d, out).map(|_| ()));
    out.guard("lambek_morphism", |out| {
        let l = lambek_morphism(cat, d)?;
        out.object(cat, "Img S", &l.img_s.object);
        out.object(cat, "Ker T", &l.ker_t.object);
        Ok(())
    });
    out.guard("Lambek isomorphism check", |out| {
        out.verdict("lambek", check_lambek_iso(cat, d)?);
        Ok(())
    });
    out
}

pub fn nomura1_check<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Outcome {
    let mut out = Outcome::default();
    out.guard("flags", |out| row_flags(cat, d, out).map(|_| ()));
    out.guard("first sequence", |out| {
        let n = nomura_first(cat, d)?;
        out.object(cat, "H(f,g)", &n.top.h_minus);
        out.object(cat, "H(f',g')", &n.bottom.h_minus);
        out.object(cat, "Ker h", &n.ker_h);
        out.object(cat, "Img S", &n.lambek.img_s.object);
        out.object(cat, "Ker T", &n.lambek.ker_t.object);
        out.object(cat, "Coker h", &n.coker_h);
        out.verdict("nomura1", nomura_first_verdict(cat, d, &n)?);
        Ok(())
    });
    if !out.refused && out.error.is_none() {
        match short_exact_corollary(cat, d) {
            Ok(v) => out.verdict("short-exact", v),
            Err(ChaseError::HypothesisViolated(hs)) => {
                let names: Vec<String> = hs.iter().map(ToString::to_string).collect();
                out.notes.push(format!("short exact corollary not applicable: {}", names.join(", ")));
            }
            Err(e) => out.error = Some(format!("short exact corollary: {e}")),
        }
    }
    out
}

pub fn nomura2_check<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Outcome {
    let mut out = Outcome::default();
    out.guard("flags", |out| row_flags(cat, d, out).map(|_| ()));
    out.guard("second sequence", |out| {
        let n = nomura_second(cat, d)?;
        let name = |e: Endpoint, lambek: &str, fallback: &str| match e {
            Endpoint::Lambek => lambek.to_string(),
            Endpoint::Fallback => fallback.to_string(),
        };
        out.object(cat, name(n.left, "Ker S", "Img S0"), &n.left_object);
        out.object(cat, "H(Ker a → Ker b → Ker c)", &n.ker_row.h_minus);
        out.object(cat, "Ker h", &n.first.ker_h);
        out.object(cat, "Img S", &n.first.lambek.img_s.object);
        out.object(cat, "Ker T", &n.first.lambek.ker_t.object);
        out.object(cat, "Coker h", &n.first.coker_h);
        out.object(cat, "H(Coker a → Coker b → Coker c)", &n.coker_row.h_minus);
        out.object(cat, name(n.right, "Img T", "Ker T0"), &n.right_object);
        out.verdict("nomura2", nomura_second_verdict(cat, d, &n)?);
        Ok(())
    });
    out.guard("kernel row", |out| {
        out.verdict("kernel-row", kernel_row_exactness(cat, d)?);
        Ok(())
    });
    out
}

pub fn kernel_row_check<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Outcome {
    let mut out = Outcome::default();
    out.guard("kernel row", |out| {
        out.verdict("kernel-row", kernel_row_exactness(cat, d)?);
        Ok(())
    });
    out
}

pub fn five_lemma_check<C: Category + ?Sized>(cat: &C, d: &FiveColumnDiagram<C::Mor>) -> Outcome {
    let mut out = Outcome::default();
    out.guard("homologies", |out| {
        let (ker, coker) = five_lemma_homologies(cat, d)?;
        out.object(cat, "H(Ker c → Ker d → Ker e)", &ker);
        out.object(cat, "H(Coker a → Coker b → Coker c)", &coker);
        Ok(())
    });
    out.guard("five-column comparison", |out| {
        let r = five_lemma(cat, d)?;
        out.verdict("five-lemma", r.verdict);
        Ok(())
    });
    out
}

/// Universal properties of every kernel, cokernel, pullback and pushout the
/// diagram gives rise to, closure of kernels and cokernels under
/// composition, and the homology comparison on every null pair.
pub fn axioms_check<C: Oracles + ?Sized>(cat: &C, p: &Payload<C::Mor>, rng: &mut ChaCha8Rng) -> Outcome {
    let mut out = Outcome::default();
    let roles = p.shape().roles();
    let mut v = Verdict::default();
    out.guard("universal properties", |_| {
        for (role, m) in roles.iter().zip(p.morphisms()) {
            v.push(Clause::new(format!("kernel of {role} is universal")).concludes(cat.universal(UniversalKind::Kernel, &m, None, rng)?));
            v.push(Clause::new(format!("cokernel of {role} is universal")).concludes(cat.universal(UniversalKind::Cokernel, &m, None, rng)?));
        }
        for (label, sq) in squares(p) {
            let pb = cat.universal(UniversalKind::Pullback, &sq.right, Some(&sq.bottom), rng)?;
            v.push(Clause::new(format!("pullback of the corner of {label} is universal")).concludes(pb));
            let po = cat.universal(UniversalKind::Pushout, &sq.top, Some(&sq.left), rng)?;
            v.push(Clause::new(format!("pushout of the corner of {label} is universal")).concludes(po));
        }
        for (label, f, g) in null_pairs(p) {
            // Im f ⊆ Ker g as a composite of kernels, dually for cokernels.
            let ker_g = cat.kernel(&g);
            let sigma = cat.factor_through_kernel(&ker_g, &f)?;
            let k1 = cat.image(&sigma);
            let coker_f = cat.cokernel(&f);
            let tau = cat.factor_through_cokernel(&coker_f, &g)?;
            let q2 = cat.coimage(&tau);
            let closed = composition_closed(cat, &k1, &ker_g)? && composition_closed(cat, &coker_f, &q2)?;
            v.push(Clause::new(format!("kernels and cokernels compose on {label}")).concludes(closed));
            let h = homology_pair(cat, &f, &g)?;
            v.push(Clause::new(format!("m{label} is an isomorphism")).concludes(cat.is_iso(&h.m)));
        }
        Ok(())
    });
    out.verdict("axioms", v);
    out
}

/// Dispatches a command name to its check.
pub fn run_check<C: Oracles + ?Sized>(cat: &C, command: &str, p: &Payload<C::Mor>, rng: &mut ChaCha8Rng) -> Result<Outcome, String> {
    Ok(match command {
        "check-axioms" => axioms_check(cat, p, rng),
        "homology" => homology_check(cat, p),
        "invariants" => invariants_check(cat, p),
        "lambek" => lambek_check(cat, &two_square(p, command)?),
        "nomura1" => nomura1_check(cat, &two_square(p, command)?),
        "nomura2" => nomura2_check(cat, &two_square(p, command)?),
        "fivelemma" => five_lemma_check(cat, &five_column(p)?),
        other => return Err(format!("unknown check '{other}'")),
    })
}
