//! Seeded random diagrams.
//!
//! Abelian diagrams are assembled from pullbacks, pushouts and direct sums
//! so that squares commute by construction. Pointed-set diagrams use the
//! same constructions and are retried when an object outgrows the size cap
//! or a constraint that is only checked after the fact fails.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use lambek_core::{
    Category, CategoryExt, Fgab, FiveColumnDiagram, Group, GroupMap, IntMatrix, PSetCategory, PSetMorphism, PSetObject, Result,
    Square, TwoSquareDiagram,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::diagram::{Backend, Diagram, DiagramFile, Payload, Shape};

pub const PSET_SIZE_CAP: usize = 6;
pub const MAX_ATTEMPTS: usize = 2000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Constraint {
    RowsExact,
    BExact,
    FExact,
    GPrimeExact,
    BKernel,
    VerticalsIdentity,
    /// `f'` is an N-monomorphism.
    FPrimeMono,
    /// `g` is an N-epimorphism.
    GEpi,
}

impl Constraint {
    pub const ALL: [Constraint; 8] = [
        Constraint::RowsExact,
        Constraint::BExact,
        Constraint::FExact,
        Constraint::GPrimeExact,
        Constraint::BKernel,
        Constraint::VerticalsIdentity,
        Constraint::FPrimeMono,
        Constraint::GEpi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Constraint::RowsExact => "rows-exact",
            Constraint::BExact => "b-exact",
            Constraint::FExact => "f-exact",
            Constraint::GPrimeExact => "g'-exact",
            Constraint::BKernel => "b-kernel",
            Constraint::VerticalsIdentity => "verticals-identity",
            Constraint::FPrimeMono => "f'-mono",
            Constraint::GEpi => "g-epi",
        }
    }

    fn shapes(self) -> &'static [Shape] {
        use Shape::*;
        match self {
            Constraint::RowsExact => &[Pair, TwoSquare, FiveColumn],
            Constraint::FExact => &[Pair, Square, TwoSquare],
            Constraint::BExact | Constraint::BKernel => &[Square, TwoSquare],
            Constraint::VerticalsIdentity => &[Square, TwoSquare, FiveColumn],
            Constraint::GPrimeExact | Constraint::FPrimeMono | Constraint::GEpi => &[TwoSquare],
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Constraint {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let s = s.replace('′', "'");
        Constraint::ALL
            .into_iter()
            .find(|c| c.name() == s || c.name().replace('\'', "p") == s)
            .ok_or_else(|| format!("unknown constraint '{s}'"))
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GenerateError {
    #[error("constraint {constraint} does not apply to shape {shape}")]
    Unsupported { constraint: Constraint, shape: Shape },
    #[error("generation failed after {attempts} attempts")]
    GenerationFailed { attempts: usize },
}

pub type Constraints = BTreeSet<Constraint>;

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A diagram of `shape` satisfying `constraints`; the same seed always
/// gives the same diagram.
pub fn generate(
    backend: Backend,
    shape: Shape,
    seed: u64,
    constraints: &Constraints,
) -> std::result::Result<Diagram, GenerateError> {
    for &c in constraints {
        if !c.shapes().contains(&shape) {
            return Err(GenerateError::Unsupported { constraint: c, shape });
        }
    }
    let mut rng = rng_for(seed);
    for _ in 0..MAX_ATTEMPTS {
        let attempt = match backend {
            Backend::Fgab => FgabGen { rng: &mut rng, cat: Fgab::new(), finite: false }.payload(shape, constraints).map(Diagram::Fgab),
            Backend::Pset => PsetGen { rng: &mut rng, cat: PSetCategory::new() }.payload(shape, constraints).map(Diagram::Pset),
        };
        if let Some(d) = attempt {
            return Ok(d);
        }
    }
    Err(GenerateError::GenerationFailed { attempts: MAX_ATTEMPTS })
}

/// Abelian diagram in which every object is finite.
pub fn generate_finite(shape: Shape, seed: u64, constraints: &Constraints) -> std::result::Result<Payload<GroupMap>, GenerateError> {
    let mut rng = rng_for(seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(p) = (FgabGen { rng: &mut rng, cat: Fgab::new(), finite: true }).payload(shape, constraints) {
            return Ok(p);
        }
    }
    Err(GenerateError::GenerationFailed { attempts: MAX_ATTEMPTS })
}

/// Random composable (not necessarily null) pair `X → Y → Z`.
pub fn composable_pair(backend: Backend, seed: u64) -> Diagram {
    let mut rng = rng_for(seed);
    fn build<B: Builder>(b: &mut B) -> Payload<<B::C as Category>::Mor> {
        let (x, y, z) = (b.object(), b.object(), b.object());
        let f = b.hom(&x, &y);
        let g = b.hom(&y, &z);
        Payload::Pair { f, g }
    }
    match backend {
        Backend::Fgab => Diagram::Fgab(build(&mut FgabGen { rng: &mut rng, cat: Fgab::new(), finite: false })),
        Backend::Pset => Diagram::Pset(build(&mut PsetGen { rng: &mut rng, cat: PSetCategory::new() })),
    }
}

pub fn generate_file(
    backend: Backend,
    shape: Shape,
    seed: u64,
    constraints: &Constraints,
) -> std::result::Result<DiagramFile, GenerateError> {
    generate(backend, shape, seed, constraints).map(|d| DiagramFile::from_diagram(&d))
}

/// Construction steps shared by both backends.
trait Builder {
    type C: Category;
    fn cat(&self) -> &Self::C;
    fn object(&mut self) -> <Self::C as Category>::Obj;
    fn hom(&mut self, x: &<Self::C as Category>::Obj, y: &<Self::C as Category>::Obj) -> <Self::C as Category>::Mor;
    /// `ker` of a random map out of `x`, landing in `x`.
    fn kernel_into(&mut self, x: &<Self::C as Category>::Obj) -> Option<<Self::C as Category>::Mor>;
    /// An exact map into `x` (cokernel followed by a kernel).
    fn exact_into(&mut self, x: &<Self::C as Category>::Obj) -> Option<<Self::C as Category>::Mor>;
    /// A kernel leg out of `x`; an isomorphism when `epi` is set.
    fn kernel_out_of(&mut self, x: &<Self::C as Category>::Obj, epi: bool) -> Option<<Self::C as Category>::Mor>;
    /// Extends `r: X → Y` along `m: X → M` from [`Builder::kernel_out_of`].
    fn extend(&mut self, m: &<Self::C as Category>::Mor, r: &<Self::C as Category>::Mor) -> Option<<Self::C as Category>::Mor>;
    fn fits(&self, m: &<Self::C as Category>::Mor) -> bool;

    fn compose(&self, g: &<Self::C as Category>::Mor, f: &<Self::C as Category>::Mor) -> <Self::C as Category>::Mor {
        self.cat().compose(g, f).expect("composable by construction")
    }

    /// `Y → Z` with `g f` null.
    fn null_after(&mut self, f: &<Self::C as Category>::Mor) -> <Self::C as Category>::Mor {
        let y = self.cat().cod(f);
        let z = self.object();
        let g0 = self.hom(&y, &z);
        let q = self.cat().cokernel(&self.compose(&g0, f));
        self.compose(&q, &g0)
    }

    /// `m ∘ coker f` with `m` a kernel, so that `f, g` is exact at `Y`.
    fn exact_after(&mut self, f: &<Self::C as Category>::Mor, epi: bool) -> Option<<Self::C as Category>::Mor> {
        let q = self.cat().cokernel(f);
        let m = self.kernel_out_of(&self.cat().cod(&q), epi)?;
        Some(self.compose(&m, &q))
    }

    fn next_in_row(&mut self, f: &<Self::C as Category>::Mor, exact: bool) -> Option<<Self::C as Category>::Mor> {
        if exact {
            self.exact_after(f, false)
        } else {
            Some(self.null_after(f))
        }
    }

    fn pair(&mut self, cs: &Constraints) -> Option<Payload<<Self::C as Category>::Mor>> {
        let y = self.object();
        let f = if cs.contains(&Constraint::FExact) {
            self.exact_into(&y)?
        } else {
            let x = self.object();
            self.hom(&x, &y)
        };
        let g = self.next_in_row(&f, cs.contains(&Constraint::RowsExact))?;
        Some(Payload::Pair { f, g })
    }

    fn vertical_b(&mut self, cs: &Constraints) -> Option<<Self::C as Category>::Mor> {
        let b1 = self.object();
        if cs.contains(&Constraint::BKernel) {
            self.kernel_into(&b1)
        } else if cs.contains(&Constraint::BExact) {
            self.exact_into(&b1)
        } else {
            let b0 = self.object();
            Some(self.hom(&b0, &b1))
        }
    }

    /// Left square: `A` is the pullback of `f' a₀` along `b`.
    fn left_square(&mut self, cs: &Constraints) -> Option<Square<<Self::C as Category>::Mor>> {
        let b = self.vertical_b(cs)?;
        let b1 = self.cat().cod(&b);
        let fp = if cs.contains(&Constraint::FPrimeMono) {
            self.kernel_into(&b1)?
        } else {
            let a1 = self.object();
            self.hom(&a1, &b1)
        };
        let a1 = self.cat().dom(&fp);
        let a0 = self.object();
        let a_0 = self.hom(&a0, &a1);
        let (p1, p2) = self.cat().pullback(&self.compose(&fp, &a_0), &b).ok()?;
        let a = self.compose(&a_0, &p1);
        Some(Square { top: p2, left: a, right: b, bottom: fp })
    }

    fn square(&mut self, cs: &Constraints) -> Option<Payload<<Self::C as Category>::Mor>> {
        if cs.contains(&Constraint::VerticalsIdentity) {
            let x = self.object();
            let y = self.object();
            let f = if cs.contains(&Constraint::FExact) { self.exact_into(&y)? } else { self.hom(&x, &y) };
            let (ia, ib) = (self.cat().identity(&self.cat().dom(&f)), self.cat().identity(&y));
            return Some(Payload::Square(Square { top: f.clone(), left: ia, right: ib, bottom: f }));
        }
        Some(Payload::Square(self.left_square(cs)?))
    }

    fn two_square(&mut self, cs: &Constraints) -> Option<Payload<<Self::C as Category>::Mor>> {
        let exact = cs.contains(&Constraint::RowsExact);
        if cs.contains(&Constraint::VerticalsIdentity) {
            let y = self.object();
            let f = if cs.contains(&Constraint::FPrimeMono) {
                self.kernel_into(&y)?
            } else if cs.contains(&Constraint::FExact) {
                self.exact_into(&y)?
            } else {
                let x = self.object();
                self.hom(&x, &y)
            };
            let g = if exact { self.exact_after(&f, cs.contains(&Constraint::GEpi))? } else { self.null_after(&f) };
            let id = |s: &Self, m: &<Self::C as Category>::Mor| s.cat().identity(&s.cat().dom(m));
            let (a, b, c) = (id(self, &f), id(self, &g), self.cat().identity(&self.cat().cod(&g)));
            return Some(Payload::TwoSquare(TwoSquareDiagram { f: f.clone(), g: g.clone(), fp: f, gp: g, a, b, c }));
        }
        let s = self.left_square(cs)?;
        let (f, a, b, fp) = (s.top.clone(), s.left, s.right, s.bottom);
        let d = if exact {
            // g = m ∘ coker f, g' = m' ∘ coker f', c = m' b̌ on the image of m.
            let q = self.cat().cokernel(&f);
            let qp = self.cat().cokernel(&fp);
            let m = self.kernel_out_of(&self.cat().cod(&q), cs.contains(&Constraint::GEpi))?;
            let mp = self.kernel_out_of(&self.cat().cod(&qp), false)?;
            let sq = Square { top: f.clone(), left: a.clone(), right: b.clone(), bottom: fp.clone() };
            let b_check = self.cat().induced_cokernel_morphism(&sq).ok()?;
            let c = self.extend(&m, &self.compose(&mp, &b_check))?;
            let (g, gp) = (self.compose(&m, &q), self.compose(&mp, &qp));
            TwoSquareDiagram { f, g, fp, gp, a, b, c }
        } else {
            let g = self.null_after(&f);
            let gp1 = self.null_after(&fp);
            let (q1, q2) = self.cat().pushout(&g, &self.compose(&gp1, &b)).ok()?;
            let gp = self.compose(&q2, &gp1);
            TwoSquareDiagram { f, g, fp, gp, a, b, c: q1 }
        };
        Some(Payload::TwoSquare(d))
    }

    fn row(&mut self, exact: bool) -> Option<[<Self::C as Category>::Mor; 4]> {
        let (x0, x1) = (self.object(), self.object());
        let t0 = self.hom(&x0, &x1);
        let t1 = self.next_in_row(&t0, exact)?;
        let t2 = self.next_in_row(&t1, exact)?;
        let t3 = self.next_in_row(&t2, exact)?;
        Some([t0, t1, t2, t3])
    }

    fn five_column(&mut self, cs: &Constraints) -> Option<Payload<<Self::C as Category>::Mor>>;

    fn payload(&mut self, shape: Shape, cs: &Constraints) -> Option<Payload<<Self::C as Category>::Mor>> {
        let p = match shape {
            Shape::Pair => self.pair(cs)?,
            Shape::Square => self.square(cs)?,
            Shape::TwoSquare => self.two_square(cs)?,
            Shape::FiveColumn => self.five_column(cs)?,
        };
        let ms = p.morphisms();
        if !ms.iter().all(|m| self.fits(m)) {
            return None;
        }
        let p = Payload::assemble(self.cat(), shape, ms).ok()?;
        satisfies(self.cat(), &p, cs).ok()?.then_some(p)
    }
}

/// Whether a payload meets every constraint; used to reject candidates
/// whose constraints are not guaranteed by construction.
pub fn satisfies<C: Category + ?Sized>(cat: &C, p: &Payload<C::Mor>, cs: &Constraints) -> Result<bool> {
    let (f, g, fp, gp, b, verticals): (_, _, _, _, _, Vec<C::Mor>) = match p {
        Payload::Pair { f, g } => (f.clone(), Some(g.clone()), None, None, None, vec![]),
        Payload::Square(s) => (s.top.clone(), None, Some(s.bottom.clone()), None, Some(s.right.clone()), vec![s.left.clone(), s.right.clone()]),
        Payload::TwoSquare(d) => (
            d.f.clone(),
            Some(d.g.clone()),
            Some(d.fp.clone()),
            Some(d.gp.clone()),
            Some(d.b.clone()),
            vec![d.a.clone(), d.b.clone(), d.c.clone()],
        ),
        Payload::FiveColumn(d) => (d.top[0].clone(), Some(d.top[1].clone()), None, None, None, d.verticals.to_vec()),
    };
    for c in cs {
        let ok = match c {
            Constraint::RowsExact => match p {
                Payload::Pair { f, g } => cat.exact_at(f, g),
                Payload::TwoSquare(d) => cat.exact_at(&d.f, &d.g) && cat.exact_at(&d.fp, &d.gp),
                Payload::FiveColumn(d) => {
                    (0..3).all(|i| cat.exact_at(&d.top[i], &d.top[i + 1]) && cat.exact_at(&d.bottom[i], &d.bottom[i + 1]))
                }
                Payload::Square(_) => true,
            },
            Constraint::FExact => cat.is_exact_morphism(&f)?,
            Constraint::BExact => b.as_ref().map_or(Ok(true), |b| cat.is_exact_morphism(b))?,
            Constraint::BKernel => b.as_ref().map_or(Ok(true), |b| cat.is_kernel(b))?,
            Constraint::GPrimeExact => gp.as_ref().map_or(Ok(true), |g| cat.is_exact_morphism(g))?,
            Constraint::FPrimeMono => fp.as_ref().map_or(true, |m| cat.is_n_mono(m)),
            Constraint::GEpi => g.as_ref().map_or(true, |m| cat.is_n_epi(m)),
            Constraint::VerticalsIdentity => verticals.iter().all(|v| cat.mor_eq(v, &cat.identity(&cat.dom(v)))),
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

struct FgabGen<'a> {
    rng: &'a mut ChaCha8Rng,
    cat: Fgab,
    /// Only finite cyclic summands.
    finite: bool,
}

impl FgabGen<'_> {
    fn sum(&self, a: &Group, b: &Group) -> lambek_core::fgab::Biproduct<lambek_core::Int> {
        self.cat.biproduct(a, b)
    }

    /// `n·(id on R) ⊕ 0` between `R ⊕ S` and `R ⊕ U`, summand by summand.
    fn direct_sum_rows(&mut self, exact: bool) -> Option<([GroupMap; 4], [GroupMap; 4], [GroupMap; 5])> {
        let r = self.row(exact)?;
        let s = self.row(exact)?;
        let u = self.row(exact)?;
        let n = self.rng.gen_range(0..=3i64);
        let objs = |row: &[GroupMap; 4]| -> Vec<Group> {
            let mut v: Vec<Group> = row.iter().map(|m| m.dom().clone()).collect();
            v.push(row[3].cod().clone());
            v
        };
        let (or, os, ou) = (objs(&r), objs(&s), objs(&u));
        let tops: Vec<_> = (0..5).map(|i| self.sum(&or[i], &os[i])).collect();
        let bots: Vec<_> = (0..5).map(|i| self.sum(&or[i], &ou[i])).collect();
        let row_map = |sums: &[lambek_core::fgab::Biproduct<lambek_core::Int>], x: &[GroupMap; 4], y: &[GroupMap; 4], i: usize| {
            let c = &self.cat;
            let first = c.chain(&[&sums[i + 1].inj1, &x[i], &sums[i].proj1]).expect("composable");
            let second = c.chain(&[&sums[i + 1].inj2, &y[i], &sums[i].proj2]).expect("composable");
            c.add(&first, &second).expect("same ends")
        };
        let top: Vec<GroupMap> = (0..4).map(|i| row_map(&tops, &r, &s, i)).collect();
        let bottom: Vec<GroupMap> = (0..4).map(|i| row_map(&bots, &r, &u, i)).collect();
        let verticals: Vec<GroupMap> = (0..5)
            .map(|i| {
                let scaled = scale(&self.cat, &self.cat.identity(&or[i]), n);
                self.cat.chain(&[&bots[i].inj1, &scaled, &tops[i].proj1]).expect("composable")
            })
            .collect();
        Some((top.try_into().ok()?, bottom.try_into().ok()?, verticals.try_into().ok()?))
    }
}

fn scale(cat: &Fgab, m: &GroupMap, n: i64) -> GroupMap {
    let mut acc = cat.null_morphism(m.dom(), m.cod());
    for _ in 0..n {
        acc = cat.add(&acc, m).expect("same ends");
    }
    acc
}

impl Builder for FgabGen<'_> {
    type C = Fgab;

    fn cat(&self) -> &Fgab {
        &self.cat
    }

    /// Direct sum of up to two cyclic groups, `Z` included unless finite.
    fn object(&mut self) -> Group {
        let k = self.rng.gen_range(0..=2);
        let mut g = Group::zero();
        let orders: &[i64] = if self.finite { &[2, 3, 4, 6] } else { &[0, 0, 2, 3, 4, 6] };
        for _ in 0..k {
            let n = orders[self.rng.gen_range(0..orders.len())];
            g = self.cat.biproduct(&g, &Group::cyclic(n)).object;
        }
        g
    }

    fn hom(&mut self, x: &Group, y: &Group) -> GroupMap {
        let coeffs: Vec<i64> = (0..8).map(|_| self.rng.gen_range(-3..=3)).collect();
        self.cat.hom_combination(x, y, &coeffs)
    }

    fn kernel_into(&mut self, x: &Group) -> Option<GroupMap> {
        let w = self.object();
        let t = self.hom(x, &w);
        Some(self.cat.kernel(&t))
    }

    fn exact_into(&mut self, x: &Group) -> Option<GroupMap> {
        let w = self.object();
        Some(self.hom(&w, x))
    }

    fn kernel_out_of(&mut self, x: &Group, epi: bool) -> Option<GroupMap> {
        if epi {
            return Some(self.cat.identity(x));
        }
        let extra = self.object();
        Some(self.sum(x, &extra).inj1)
    }

    /// `r p + w (coker m)`, where `p` retracts the summand inclusion `m`.
    fn extend(&mut self, m: &GroupMap, r: &GroupMap) -> Option<GroupMap> {
        let (n, k) = (m.dom().rank(), m.cod().rank());
        let p_matrix = IntMatrix::identity(n).hcat(&IntMatrix::zeros(n, k - n));
        let p = GroupMap::new(m.cod().clone(), m.dom().clone(), p_matrix).ok()?;
        if !self.cat.mor_eq(&self.cat.compose(&p, m).ok()?, &self.cat.identity(m.dom())) {
            return None;
        }
        let q = self.cat.cokernel(m);
        let w = self.hom(&self.cat.cod(&q), r.cod());
        self.cat.add(&self.compose(r, &p), &self.compose(&w, &q)).ok()
    }

    fn fits(&self, _: &GroupMap) -> bool {
        true
    }

    fn five_column(&mut self, cs: &Constraints) -> Option<Payload<GroupMap>> {
        let exact = cs.contains(&Constraint::RowsExact);
        if cs.contains(&Constraint::VerticalsIdentity) {
            let r = self.row(exact)?;
            let ids: Vec<GroupMap> = r
                .iter()
                .map(|m| self.cat.identity(m.dom()))
                .chain(std::iter::once(self.cat.identity(r[3].cod())))
                .collect();
            return Some(Payload::FiveColumn(FiveColumnDiagram { top: r.clone(), bottom: r, verticals: ids.try_into().ok()? }));
        }
        let (top, bottom, verticals) = self.direct_sum_rows(exact)?;
        Some(Payload::FiveColumn(FiveColumnDiagram { top, bottom, verticals }))
    }
}

struct PsetGen<'a> {
    rng: &'a mut ChaCha8Rng,
    cat: PSetCategory,
}

impl PsetGen<'_> {
    fn size(&mut self) -> usize {
        self.rng.gen_range(1..=4)
    }

    fn table(&mut self, n: usize, m: usize) -> Vec<usize> {
        (0..n).map(|i| if i == 0 { 0 } else { self.rng.gen_range(0..m) }).collect()
    }

    /// Random basepoint-preserving injection from `n` into a set of at least
    /// `n` elements.
    fn injection(&mut self, n: usize, extra: usize) -> PSetMorphism {
        let m = n + extra;
        let mut targets: Vec<usize> = (1..m).collect();
        for i in (1..targets.len()).rev() {
            let j = self.rng.gen_range(0..=i);
            targets.swap(i, j);
        }
        let table = std::iter::once(0).chain(targets.into_iter().take(n - 1)).collect();
        PSetMorphism::new(obj(n), obj(m), table).expect("valid injection")
    }
}

fn obj(n: usize) -> PSetObject {
    PSetObject::new(n).expect("positive size")
}

impl Builder for PsetGen<'_> {
    type C = PSetCategory;

    fn cat(&self) -> &PSetCategory {
        &self.cat
    }

    fn object(&mut self) -> PSetObject {
        obj(self.size())
    }

    fn hom(&mut self, x: &PSetObject, y: &PSetObject) -> PSetMorphism {
        let t = self.table(x.size(), y.size());
        PSetMorphism::new(*x, *y, t).expect("valid table")
    }

    fn kernel_into(&mut self, x: &PSetObject) -> Option<PSetMorphism> {
        let n = self.rng.gen_range(1..=x.size());
        Some(self.injection(n, x.size() - n))
    }

    /// A collapse followed by an injection.
    fn exact_into(&mut self, x: &PSetObject) -> Option<PSetMorphism> {
        let (w, r) = (self.object(), self.object());
        let src = self.hom(&r, &w);
        let q = self.cat.cokernel(&src);
        let q_size = self.cat.cod(&q).size();
        if q_size > x.size() {
            return None;
        }
        let inj = self.injection(q_size, x.size() - q_size);
        Some(self.compose(&inj, &q))
    }

    fn kernel_out_of(&mut self, x: &PSetObject, epi: bool) -> Option<PSetMorphism> {
        let extra = if epi { 0 } else { self.rng.gen_range(0..=2) };
        Some(self.injection(x.size(), extra))
    }

    fn extend(&mut self, m: &PSetMorphism, r: &PSetMorphism) -> Option<PSetMorphism> {
        let mut table = self.table(m.cod().size(), r.cod().size());
        for (x, &y) in m.table().iter().enumerate() {
            table[y] = r.apply(x);
        }
        PSetMorphism::new(m.cod(), r.cod(), table).ok()
    }

    fn fits(&self, m: &PSetMorphism) -> bool {
        m.dom().size() <= PSET_SIZE_CAP && m.cod().size() <= PSET_SIZE_CAP
    }

    fn five_column(&mut self, cs: &Constraints) -> Option<Payload<PSetMorphism>> {
        let exact = cs.contains(&Constraint::RowsExact);
        let top = self.row(exact)?;
        if cs.contains(&Constraint::VerticalsIdentity) {
            let ids: Vec<PSetMorphism> = top
                .iter()
                .map(|m| self.cat.identity(&m.dom()))
                .chain(std::iter::once(self.cat.identity(&top[3].cod())))
                .collect();
            return Some(Payload::FiveColumn(FiveColumnDiagram { top: top.clone(), bottom: top, verticals: ids.try_into().ok()? }));
        }
        let bottom = self.row(exact)?;
        let mut verticals = vec![self.hom(&top[0].dom(), &bottom[0].dom())];
        for i in 0..4 {
            let (src, dst) = (top[i].cod(), bottom[i].cod());
            let mut forced: Vec<Option<usize>> = vec![None; src.size()];
            for x in 0..top[i].dom().size() {
                let want = bottom[i].apply(verticals[i].apply(x));
                match forced[top[i].apply(x)] {
                    Some(v) if v != want => return None,
                    _ => forced[top[i].apply(x)] = Some(want),
                }
            }
            let free = self.table(src.size(), dst.size());
            let table = forced.iter().zip(free).map(|(f, r)| f.unwrap_or(r)).collect();
            verticals.push(PSetMorphism::new(src, dst, table).ok()?);
        }
        Some(Payload::FiveColumn(FiveColumnDiagram { top, bottom, verticals: verticals.try_into().ok()? }))
    }
}
