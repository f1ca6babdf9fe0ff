//! Character duals of finite abelian groups, used to spot-check that the
//! dual constructions agree with the primal ones on reversed diagrams.
//!
//! For `G = Z^n / B Z^n` with `B` square and nonsingular, the dual is
//! presented as `Z^n / Bᵀ Z^n`. A map `G → H` with matrix `A` satisfies
//! `A B = C N` for an integer `N`, and its dual `Ĥ → Ĝ` has matrix `Nᵀ`.

use lambek_core::homology::homology;
use lambek_core::lambek::{lambek_invariants, lambek_morphism};
use lambek_core::{
    Category, ChaseError, Clause, Fgab, Group, GroupMap, IntMatrix, LambekSide, Result, TwoSquareDiagram, Verdict,
};

pub fn is_finite(g: &Group) -> bool {
    g.relations().rank() == g.rank()
}

pub fn dual_object(g: &Group) -> Result<Group> {
    if !is_finite(g) {
        return Err(ChaseError::IllDefined("the dual presentation needs a finite group".into()));
    }
    Group::new(g.rank(), &g.relations().basis().transpose())
}

pub fn dual_morphism(f: &GroupMap) -> Result<GroupMap> {
    let (g, h) = (f.dom(), f.cod());
    let ab = f.matrix().mul(g.relations().basis());
    let cols = (0..ab.cols())
        .map(|j| {
            h.relations()
                .coordinates(&ab.column(j))
                .ok_or_else(|| ChaseError::IllDefined("relations are not preserved".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let n = IntMatrix::from_columns(h.rank(), &cols);
    GroupMap::new(dual_object(h)?, dual_object(g)?, n.transpose())
}

/// The reversed diagram: rows `Ĉ' → B̂' → Â'` over `Ĉ → B̂ → Â` with
/// verticals `ĉ, b̂, â`.
pub fn dual_diagram(cat: &Fgab, d: &TwoSquareDiagram<GroupMap>) -> Result<TwoSquareDiagram<GroupMap>> {
    let du = dual_morphism;
    TwoSquareDiagram::new(cat, du(&d.gp)?, du(&d.fp)?, du(&d.g)?, du(&d.f)?, du(&d.c)?, du(&d.b)?, du(&d.a)?)
}

/// Invariants that duality must exchange, as verdict clauses.
pub fn duality_verdict(cat: &Fgab, d: &TwoSquareDiagram<GroupMap>) -> Result<Verdict> {
    let e = dual_diagram(cat, d)?;
    let inv = |x: &Group| cat.invariant(x);
    let side = |d: &TwoSquareDiagram<GroupMap>, left: bool, s: LambekSide| -> Result<_> {
        let sq = if left { d.s() } else { d.t() };
        Ok(inv(&lambek_invariants(cat, &sq, s)?.0))
    };
    let mut v = Verdict::default();
    v.push(Clause::new("Img S of dual = Ker T").concludes(side(&e, true, LambekSide::Img)? == side(d, false, LambekSide::Ker)?));
    v.push(Clause::new("Ker S of dual = Img T").concludes(side(&e, true, LambekSide::Ker)? == side(d, false, LambekSide::Img)?));
    v.push(Clause::new("Img T of dual = Ker S").concludes(side(&e, false, LambekSide::Img)? == side(d, true, LambekSide::Ker)?));
    v.push(Clause::new("Ker T of dual = Img S").concludes(side(&e, false, LambekSide::Ker)? == side(d, true, LambekSide::Img)?));
    let h = |f: &GroupMap, g: &GroupMap| -> Result<_> { Ok(inv(&homology(cat, f, g)?)) };
    v.push(Clause::new("top homology of dual = bottom homology").concludes(h(&e.f, &e.g)? == h(&d.fp, &d.gp)?));
    v.push(Clause::new("bottom homology of dual = top homology").concludes(h(&e.fp, &e.gp)? == h(&d.f, &d.g)?));
    let iso = |d: &TwoSquareDiagram<GroupMap>| -> Result<bool> { Ok(cat.is_iso(&lambek_morphism(cat, d)?.lambda)) };
    v.push(Clause::new("Lambda of dual is iso iff Lambda is iso").concludes(iso(&e)? == iso(d)?));
    Ok(v)
}
