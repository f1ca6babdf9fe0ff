//! Finite pointed sets `{0, 1, .., n-1}` with basepoint `0`; the null
//! morphisms are the constant maps to the basepoint.
//!
//! Every constructed object is relabeled ascending with the basepoint
//! first, so results are reproducible.

use std::fmt;
use smallvec::SmallVec;

use crate::category::Category;
use crate::error::{ChaseError, Result};

pub const DEFAULT_ENUM_CAP: u128 = 1_000_000;

/// Pointed set with `size` elements, basepoint `0`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PSetObject {
    size: usize,
}

impl PSetObject {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(ChaseError::IllDefined("a pointed set has at least its basepoint".into()));
        }
        Ok(PSetObject { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn point() -> Self {
        PSetObject { size: 1 }
    }
}

impl fmt::Debug for PSetObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.size)
    }
}

/// Small tables stay inline; morphisms are cloned and built constantly.
type Table = SmallVec<[usize; 8]>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PSetMorphism {
    dom: PSetObject,
    cod: PSetObject,
    table: Table,
}

impl PSetMorphism {
    pub fn new(dom: PSetObject, cod: PSetObject, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.size {
            return Err(ChaseError::IllDefined(format!(
                "table has {} entries for a domain of size {}",
                table.len(),
                dom.size
            )));
        }
        if table[0] != 0 {
            return Err(ChaseError::IllDefined("basepoint is not preserved".into()));
        }
        if let Some(v) = table.iter().find(|&&v| v >= cod.size) {
            return Err(ChaseError::IllDefined(format!("value {v} outside codomain of size {}", cod.size)));
        }
        Ok(Self::raw(dom, cod, Table::from_slice(&table)))
    }

    fn raw(dom: PSetObject, cod: PSetObject, table: Table) -> Self {
        PSetMorphism { dom, cod, table }
    }

    pub fn dom(&self) -> PSetObject {
        self.dom
    }

    pub fn cod(&self) -> PSetObject {
        self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        self.table.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.cod.size];
        for &v in self.table.iter() {
            seen[v] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Debug for PSetMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {:?} -> {:?}", &self.table[..], self.dom, self.cod)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PSetInvariant(pub usize);

impl fmt::Display for PSetInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pointed set, {} elements", self.0)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct PSetCategory {
    enum_cap: u128,
}

impl Default for PSetCategory {
    fn default() -> Self {
        PSetCategory { enum_cap: DEFAULT_ENUM_CAP }
    }
}

impl PSetCategory {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_enum_cap(enum_cap: u128) -> Self {
        PSetCategory { enum_cap }
    }

    pub fn enum_cap(&self) -> u128 {
        self.enum_cap
    }

    /// Number of basepoint-preserving maps `x → y`.
    pub fn hom_count(x: PSetObject, y: PSetObject) -> u128 {
        let mut n: u128 = 1;
        for _ in 1..x.size {
            n = n.saturating_mul(y.size as u128);
        }
        n
    }

    /// All maps `x → y` in lexicographic order of their tables.
    pub fn enumerate_morphisms(&self, x: PSetObject, y: PSetObject) -> Result<Vec<PSetMorphism>> {
        Ok(self.morphisms(x, y)?.collect())
    }

    /// Lazy version of [`PSetCategory::enumerate_morphisms`].
    pub fn morphisms(&self, x: PSetObject, y: PSetObject) -> Result<MorphismIter> {
        let count = Self::hom_count(x, y);
        if count > self.enum_cap {
            return Err(ChaseError::EnumerationTooLarge { count, cap: self.enum_cap });
        }
        Ok(MorphismIter { dom: x, cod: y, next: Some(vec![0; x.size]) })
    }
}

pub struct MorphismIter {
    dom: PSetObject,
    cod: PSetObject,
    next: Option<Vec<usize>>,
}

impl Iterator for MorphismIter {
    type Item = PSetMorphism;

    fn next(&mut self) -> Option<PSetMorphism> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        let mut i = succ.len();
        loop {
            if i <= 1 {
                break;
            }
            i -= 1;
            if succ[i] + 1 < self.cod.size {
                succ[i] += 1;
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(PSetMorphism::raw(self.dom, self.cod, Table::from_slice(&cur)))
    }
}

/// Union-find over `0..n` with path halving.
struct Classes {
    parent: Vec<usize>,
}

impl Classes {
    fn new(n: usize) -> Self {
        Classes { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // the smaller root wins, so every root is its class minimum
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    /// Class index of each element, classes numbered by their minima.
    fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut out = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            if label[r] == usize::MAX {
                label[r] = count;
                count += 1;
            }
            out[x] = label[r];
        }
        (out, count)
    }
}

impl Category for PSetCategory {
    type Obj = PSetObject;
    type Mor = PSetMorphism;
    type Invariant = PSetInvariant;

    fn dom(&self, f: &Self::Mor) -> Self::Obj {
        f.dom
    }

    fn cod(&self, f: &Self::Mor) -> Self::Obj {
        f.cod
    }

    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        PSetMorphism::raw(*x, *x, (0..x.size).collect())
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        if f.cod != g.dom {
            return Err(ChaseError::NotComposable(format!("{:?} after {:?}", g.dom, f.cod)));
        }
        Ok(PSetMorphism::raw(f.dom, g.cod, f.table.iter().map(|&x| g.table[x]).collect()))
    }

    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        f == g
    }

    fn is_null(&self, f: &Self::Mor) -> bool {
        f.table.iter().all(|&v| v == 0)
    }

    fn null_object(&self) -> Self::Obj {
        PSetObject::point()
    }

    fn null_morphism(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor {
        PSetMorphism::raw(*x, *y, smallvec::smallvec![0; x.size])
    }

    fn kernel(&self, f: &Self::Mor) -> Self::Mor {
        let fiber: Table = (0..f.dom.size).filter(|&x| f.table[x] == 0).collect();
        PSetMorphism::raw(PSetObject { size: fiber.len() }, f.dom, fiber)
    }

    fn cokernel(&self, f: &Self::Mor) -> Self::Mor {
        let mut hit = vec![false; f.cod.size];
        for &v in f.table.iter() {
            hit[v] = true;
        }
        let mut next = 1;
        let table = (0..f.cod.size)
            .map(|y| {
                if hit[y] {
                    0
                } else {
                    next += 1;
                    next - 1
                }
            })
            .collect();
        PSetMorphism::raw(f.cod, PSetObject { size: next }, table)
    }

    fn factor_through_kernel(&self, k: &Self::Mor, x: &Self::Mor) -> Result<Self::Mor> {
        if k.cod != x.cod {
            return Err(ChaseError::NotComposable("factor through kernel: codomains differ".into()));
        }
        if !k.is_injective() {
            return Err(ChaseError::FactorizationFailure("leg is not monic".into()));
        }
        let mut pre = vec![usize::MAX; k.cod.size];
        for (i, &v) in k.table.iter().enumerate() {
            pre[v] = i;
        }
        let table = x
            .table
            .iter()
            .map(|&v| (pre[v] != usize::MAX).then_some(pre[v]))
            .collect::<Option<Table>>()
            .ok_or_else(|| ChaseError::FactorizationFailure("morphism does not land in the subobject".into()))?;
        Ok(PSetMorphism::raw(x.dom, k.dom, table))
    }

    fn factor_through_cokernel(&self, q: &Self::Mor, y: &Self::Mor) -> Result<Self::Mor> {
        if q.dom != y.dom {
            return Err(ChaseError::NotComposable("factor through cokernel: domains differ".into()));
        }
        let mut table: Table = smallvec::smallvec![usize::MAX; q.cod.size];
        for (e, &c) in q.table.iter().enumerate() {
            let v = y.table[e];
            if table[c] == usize::MAX {
                table[c] = v;
            } else if table[c] != v {
                return Err(ChaseError::FactorizationFailure("morphism is not constant on the fibers of the leg".into()));
            }
        }
        if table.contains(&usize::MAX) {
            return Err(ChaseError::FactorizationFailure("leg is not epic".into()));
        }
        Ok(PSetMorphism::raw(q.cod, y.cod, table))
    }

    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Mor, Self::Mor)> {
        if f.cod != g.cod {
            return Err(ChaseError::NotComposable("pullback: codomains differ".into()));
        }
        let mut t1 = Table::new();
        let mut t2 = Table::new();
        for a in 0..f.dom.size {
            for c in 0..g.dom.size {
                if f.table[a] == g.table[c] {
                    t1.push(a);
                    t2.push(c);
                }
            }
        }
        let p = PSetObject { size: t1.len() };
        Ok((PSetMorphism::raw(p, f.dom, t1), PSetMorphism::raw(p, g.dom, t2)))
    }

    fn pullback_factor(&self, p1: &Self::Mor, p2: &Self::Mor, x1: &Self::Mor, x2: &Self::Mor) -> Result<Self::Mor> {
        if p1.dom != p2.dom || x1.dom != x2.dom || p1.cod != x1.cod || p2.cod != x2.cod {
            return Err(ChaseError::NotComposable("pullback factor: cone shape".into()));
        }
        let table = (0..x1.dom.size)
            .map(|z| {
                let target = (x1.table[z], x2.table[z]);
                (0..p1.dom.size).find(|&i| (p1.table[i], p2.table[i]) == target)
            })
            .collect::<Option<Table>>()
            .ok_or_else(|| ChaseError::FactorizationFailure("cone does not factor through the pullback".into()))?;
        let u = PSetMorphism::raw(x1.dom, p1.dom, table);
        Ok(u)
    }

    fn pushout(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Mor, Self::Mor)> {
        if f.dom != g.dom {
            return Err(ChaseError::NotComposable("pushout: domains differ".into()));
        }
        let nb = f.cod.size;
        let mut classes = Classes::new(nb + g.cod.size);
        for a in 0..f.dom.size {
            classes.union(f.table[a], nb + g.table[a]);
        }
        let (labels, count) = classes.labels();
        let q = PSetObject { size: count };
        Ok((
            PSetMorphism::raw(f.cod, q, Table::from_slice(&labels[..nb])),
            PSetMorphism::raw(g.cod, q, Table::from_slice(&labels[nb..])),
        ))
    }

    fn pushout_factor(&self, q1: &Self::Mor, q2: &Self::Mor, y1: &Self::Mor, y2: &Self::Mor) -> Result<Self::Mor> {
        if q1.cod != q2.cod || y1.cod != y2.cod || q1.dom != y1.dom || q2.dom != y2.dom {
            return Err(ChaseError::NotComposable("pushout factor: cocone shape".into()));
        }
        let mut table: Table = smallvec::smallvec![usize::MAX; q1.cod.size];
        let pairs = q1.table.iter().zip(y1.table.iter()).chain(q2.table.iter().zip(y2.table.iter()));
        for (&c, &v) in pairs {
            if table[c] == usize::MAX {
                table[c] = v;
            } else if table[c] != v {
                return Err(ChaseError::FactorizationFailure("cocone does not factor through the pushout".into()));
            }
        }
        if table.contains(&usize::MAX) {
            return Err(ChaseError::FactorizationFailure("pushout legs are not jointly epic".into()));
        }
        Ok(PSetMorphism::raw(q1.cod, y1.cod, table))
    }

    fn is_iso(&self, f: &Self::Mor) -> bool {
        f.dom.size == f.cod.size && f.is_injective()
    }

    fn inverse(&self, f: &Self::Mor) -> Result<Self::Mor> {
        if !self.is_iso(f) {
            return Err(ChaseError::FactorizationFailure("map is not a bijection".into()));
        }
        let mut inv: Table = smallvec::smallvec![0; f.cod.size];
        for (x, &y) in f.table.iter().enumerate() {
            inv[y] = x;
        }
        Ok(PSetMorphism::raw(f.cod, f.dom, inv))
    }

    fn invariant(&self, x: &Self::Obj) -> Self::Invariant {
        PSetInvariant(x.size)
    }
}
