//! Independent checks of universal properties.
//!
//! Pointed sets are checked by brute force over every test object of size
//! at most [`TEST_OBJECT_MAX`] and every cone or cocone on it. Abelian
//! groups are checked with lattice arithmetic: uniqueness is the nullity of
//! differences (a joint kernel equal to the relations), existence is a
//! lattice inclusion, and one solver probe confirms the factorization that
//! the library computes.

use lambek_core::{
    Category, CategoryExt, ChaseError, Fgab, GroupMap, IntMatrix, PSetCategory, PSetMorphism, PSetObject, Result,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const TEST_OBJECT_MAX: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniversalKind {
    Kernel,
    Cokernel,
    Pullback,
    Pushout,
}

/// A proposed limit or colimit of a diagram.
#[derive(Clone, Debug)]
pub enum UniversalData<M> {
    /// `leg: K → X` proposed as a kernel of `f: X → Y`.
    Kernel { f: M, leg: M },
    /// `leg: Y → Q` proposed as a cokernel of `f: X → Y`.
    Cokernel { f: M, leg: M },
    /// `(p1, p2)` proposed as a pullback of `f: X → Z ← Y: g`.
    Pullback { f: M, g: M, p1: M, p2: M },
    /// `(q1, q2)` proposed as a pushout of `f: Z → X`, `g: Z → Y`.
    Pushout { f: M, g: M, q1: M, q2: M },
}

impl<M> UniversalData<M> {
    pub fn kind(&self) -> UniversalKind {
        match self {
            UniversalData::Kernel { .. } => UniversalKind::Kernel,
            UniversalData::Cokernel { .. } => UniversalKind::Cokernel,
            UniversalData::Pullback { .. } => UniversalKind::Pullback,
            UniversalData::Pushout { .. } => UniversalKind::Pushout,
        }
    }
}

/// The data built by the library's own constructions for `f` (and `g`).
pub fn library_data<C: Category + ?Sized>(cat: &C, kind: UniversalKind, f: &C::Mor, g: Option<&C::Mor>) -> Result<UniversalData<C::Mor>> {
    let need_g = || g.cloned().ok_or_else(|| ChaseError::NotComposable("a second morphism is required".into()));
    Ok(match kind {
        UniversalKind::Kernel => UniversalData::Kernel { f: f.clone(), leg: cat.kernel(f) },
        UniversalKind::Cokernel => UniversalData::Cokernel { f: f.clone(), leg: cat.cokernel(f) },
        UniversalKind::Pullback => {
            let g = need_g()?;
            let (p1, p2) = cat.pullback(f, &g)?;
            UniversalData::Pullback { f: f.clone(), g, p1, p2 }
        }
        UniversalKind::Pushout => {
            let g = need_g()?;
            let (q1, q2) = cat.pushout(f, &g)?;
            UniversalData::Pushout { f: f.clone(), g, q1, q2 }
        }
    })
}

fn shape_ok<C: Category + ?Sized>(cat: &C, data: &UniversalData<C::Mor>) -> bool {
    match data {
        UniversalData::Kernel { f, leg } => cat.cod(leg) == cat.dom(f),
        UniversalData::Cokernel { f, leg } => cat.dom(leg) == cat.cod(f),
        UniversalData::Pullback { f, g, p1, p2 } => {
            cat.cod(f) == cat.cod(g) && cat.dom(p1) == cat.dom(p2) && cat.cod(p1) == cat.dom(f) && cat.cod(p2) == cat.dom(g)
        }
        UniversalData::Pushout { f, g, q1, q2 } => {
            cat.dom(f) == cat.dom(g) && cat.cod(q1) == cat.cod(q2) && cat.dom(q1) == cat.cod(f) && cat.dom(q2) == cat.cod(g)
        }
    }
}

/// Whether the data is a cone (cocone) at all.
fn commutes<C: Category + ?Sized>(cat: &C, data: &UniversalData<C::Mor>) -> Result<bool> {
    Ok(match data {
        UniversalData::Kernel { f, leg } => cat.is_null(&cat.compose(f, leg)?),
        UniversalData::Cokernel { f, leg } => cat.is_null(&cat.compose(leg, f)?),
        UniversalData::Pullback { f, g, p1, p2 } => cat.mor_eq(&cat.compose(f, p1)?, &cat.compose(g, p2)?),
        UniversalData::Pushout { f, g, q1, q2 } => cat.mor_eq(&cat.compose(q1, f)?, &cat.compose(q2, g)?),
    })
}

/// Exhaustive check: every cone from a test object factors through the
/// proposed one in exactly one way.
///
/// Cones are enumerated in full. Factorizations are counted pointwise: a
/// pointed map is an independent choice of image for each non-base element,
/// so the number of maps `u` with `leg_i ∘ u = x_i` is a product of
/// per-element counts (dually for maps out of a cocone vertex).
pub fn pset_universal(cat: &PSetCategory, data: &UniversalData<PSetMorphism>) -> Result<bool> {
    if !shape_ok(cat, data) || !commutes(cat, data)? {
        return Ok(false);
    }
    for n in 1..=TEST_OBJECT_MAX {
        let w = PSetObject::new(n)?;
        let ok = match data {
            UniversalData::Kernel { f, leg } => {
                let mut ok = true;
                for x in cat.morphisms(w, f.dom())? {
                    if cat.is_null(&cat.compose(f, &x)?) {
                        ok &= lifts(&[(leg, &x)]) == 1;
                    }
                }
                ok
            }
            UniversalData::Cokernel { f, leg } => {
                let mut ok = true;
                for y in cat.morphisms(f.cod(), w)? {
                    if cat.is_null(&cat.compose(&y, f)?) {
                        ok &= descents(n, &[(leg, &y)]) == 1;
                    }
                }
                ok
            }
            UniversalData::Pullback { f, g, p1, p2 } => {
                let mut ok = true;
                for x1 in cat.morphisms(w, f.dom())? {
                    for x2 in cat.morphisms(w, g.dom())? {
                        if cat.mor_eq(&cat.compose(f, &x1)?, &cat.compose(g, &x2)?) {
                            ok &= lifts(&[(p1, &x1), (p2, &x2)]) == 1;
                        }
                    }
                }
                ok
            }
            UniversalData::Pushout { f, g, q1, q2 } => {
                let mut ok = true;
                for y1 in cat.morphisms(f.cod(), w)? {
                    for y2 in cat.morphisms(g.cod(), w)? {
                        if cat.mor_eq(&cat.compose(&y1, f)?, &cat.compose(&y2, g)?) {
                            ok &= descents(n, &[(q1, &y1), (q2, &y2)]) == 1;
                        }
                    }
                }
                ok
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of pointed `u: W → V` with `leg ∘ u = x` for every `(leg, x)`;
/// all legs start at `V` and all `x` start at `W`.
fn lifts(cone: &[(&PSetMorphism, &PSetMorphism)]) -> u128 {
    let v = cone[0].0.dom().size();
    let w = cone[0].1.dom().size();
    (1..w)
        .map(|e| (0..v).filter(|&p| cone.iter().all(|(leg, x)| leg.apply(p) == x.apply(e))).count() as u128)
        .product()
}

/// Number of pointed `u: V → W` with `u ∘ leg = y` for every `(leg, y)`;
/// all legs end at `V`, all `y` end at `W` of size `w`.
fn descents(w: usize, cocone: &[(&PSetMorphism, &PSetMorphism)]) -> u128 {
    let v = cocone[0].0.cod().size();
    let mut forced: Vec<Option<usize>> = vec![None; v];
    forced[0] = Some(0);
    for (leg, y) in cocone {
        for b in 0..leg.dom().size() {
            let q = leg.apply(b);
            match forced[q] {
                Some(val) if val != y.apply(b) => return 0,
                Some(_) => {}
                None => forced[q] = Some(y.apply(b)),
            }
        }
    }
    forced.iter().map(|f| if f.is_some() { 1 } else { w as u128 }).product()
}

/// `[m1 | m2]` out of the direct sum of the domains.
fn row_join(cat: &Fgab, m1: &GroupMap, m2: &GroupMap) -> Result<GroupMap> {
    let bp = cat.biproduct(m1.dom(), m2.dom());
    GroupMap::new(bp.object, m1.cod().clone(), m1.matrix().hcat(m2.matrix()))
}

/// `(m1; m2)` into the direct sum of the codomains.
fn column_join(cat: &Fgab, m1: &GroupMap, m2: &GroupMap) -> Result<GroupMap> {
    let bp = cat.biproduct(m1.cod(), m2.cod());
    GroupMap::new(m1.dom().clone(), bp.object, m1.matrix().vcat(m2.matrix()))
}

fn neg(m: &GroupMap) -> GroupMap {
    Fgab::new().neg(m)
}

/// Random integer matrix, read as a map out of a free group.
fn probe(rng: &mut ChaCha8Rng, cod_rank: usize, cols: usize) -> IntMatrix {
    let mut m = IntMatrix::zeros(cod_rank, cols);
    for i in 0..cod_rank {
        for j in 0..cols {
            m[(i, j)] = rng.gen_range(-4i64..=4).into();
        }
    }
    m
}

/// Monic: the kernel lattice is exactly the domain relations, so two
/// factorizations with a null difference agree.
fn monic(m: &GroupMap) -> bool {
    m.kernel_lattice() == *m.dom().relations()
}

/// Epic: the image lattice is the whole codomain.
fn epic(m: &GroupMap) -> bool {
    m.image_lattice() == lambek_core::lattice::Lattice::full(m.cod().rank())
}

/// Difference-nullity check for abelian data, plus one factorization probe
/// through the library solver.
pub fn fgab_universal(cat: &Fgab, data: &UniversalData<GroupMap>, rng: &mut ChaCha8Rng) -> Result<bool> {
    if !shape_ok(cat, data) || !commutes(cat, data)? {
        return Ok(false);
    }
    match data {
        UniversalData::Kernel { f, leg } => {
            if !(monic(leg) && f.kernel_lattice().is_sublattice_of(&leg.image_lattice())) {
                return Ok(false);
            }
            // x = (ker f) r for a random r; the lift must reproduce x.
            let k = cat.kernel(f);
            let w = lambek_core::Group::free(2);
            let r = GroupMap::new(w, k.dom().clone(), probe(rng, k.dom().rank(), 2))?;
            let x = cat.compose(&k, &r)?;
            let Ok(u) = cat.factor_through_kernel(leg, &x) else { return Ok(false) };
            Ok(cat.mor_eq(&cat.compose(leg, &u)?, &x))
        }
        UniversalData::Cokernel { f, leg } => {
            if !(epic(leg) && leg.kernel_lattice().is_sublattice_of(&f.image_lattice())) {
                return Ok(false);
            }
            let q = cat.cokernel(f);
            let coeffs: Vec<i64> = (0..6).map(|_| rng.gen_range(-4..=4)).collect();
            let r = cat.hom_combination(q.cod(), q.cod(), &coeffs);
            let y = cat.compose(&r, &q)?;
            let Ok(u) = cat.factor_through_cokernel(leg, &y) else { return Ok(false) };
            Ok(cat.mor_eq(&cat.compose(&u, leg)?, &y))
        }
        UniversalData::Pullback { f, g, p1, p2 } => {
            let joint = column_join(cat, p1, p2)?;
            let diff = row_join(cat, f, &neg(g))?;
            if !(monic(&joint) && diff.kernel_lattice().is_sublattice_of(&joint.image_lattice())) {
                return Ok(false);
            }
            let (c1, c2) = cat.pullback(f, g)?;
            let Ok(u) = cat.pullback_factor(p1, p2, &c1, &c2) else { return Ok(false) };
            Ok(cat.mor_eq(&cat.compose(p1, &u)?, &c1) && cat.mor_eq(&cat.compose(p2, &u)?, &c2))
        }
        UniversalData::Pushout { f, g, q1, q2 } => {
            let joint = row_join(cat, q1, q2)?;
            let diff = column_join(cat, f, &neg(g))?;
            if !(epic(&joint) && joint.kernel_lattice().is_sublattice_of(&diff.image_lattice())) {
                return Ok(false);
            }
            let (c1, c2) = cat.pushout(f, g)?;
            let Ok(u) = cat.pushout_factor(q1, q2, &c1, &c2) else { return Ok(false) };
            Ok(cat.mor_eq(&cat.compose(&u, q1)?, &c1) && cat.mor_eq(&cat.compose(&u, q2)?, &c2))
        }
    }
}

/// Composites of kernels are kernels and composites of cokernels are
/// cokernels, checked against `ker(coker)` and `coker(ker)`.
pub fn composition_closed<C: Category + ?Sized>(cat: &C, first: &C::Mor, second: &C::Mor) -> Result<bool> {
    let comp = cat.compose(second, first)?;
    let kernels = cat.is_kernel(first)? && cat.is_kernel(second)?;
    let cokernels = cat.is_cokernel(first)? && cat.is_cokernel(second)?;
    Ok((!kernels || cat.is_kernel(&comp)?) && (!cokernels || cat.is_cokernel(&comp)?))
}
