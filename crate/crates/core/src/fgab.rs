//! Finitely generated abelian groups as integer presentations `Z^n / L`.
//!
//! `L` (the relation lattice) is stored in column Hermite form, so two
//! presentations are equal as objects iff their lattices are equal. A
//! morphism is an integer matrix whose columns are kept reduced modulo the
//! codomain relations, which makes morphism equality a plain comparison.

use std::fmt;
use std::marker::PhantomData;
use std::sync::{Arc, OnceLock};

use crate::category::{Category, Square};
use crate::error::{ChaseError, Result};
use crate::lattice::{column_hermite, AbelianInvariant, Lattice};
use crate::matrix::Matrix;
use crate::scalar::IntScalar;

struct ObjectInner<T> {
    relations: Lattice<T>,
    invariant: OnceLock<AbelianInvariant<T>>,
}

#[derive(Clone)]
pub struct FgabObject<T> {
    inner: Arc<ObjectInner<T>>,
}

impl<T: IntScalar> FgabObject<T> {
    /// `Z^rank` modulo the column span of `relations` (`rank` rows).
    pub fn new(rank: usize, relations: &Matrix<T>) -> Result<Self> {
        if relations.rows() != rank {
            return Err(ChaseError::IllDefined(format!(
                "relation matrix has {} rows, expected {rank}",
                relations.rows()
            )));
        }
        Ok(Self::from_lattice(Lattice::from_generators(relations)))
    }

    pub fn from_lattice(relations: Lattice<T>) -> Self {
        FgabObject { inner: Arc::new(ObjectInner { relations, invariant: OnceLock::new() }) }
    }

    pub fn free(rank: usize) -> Self {
        Self::from_lattice(Lattice::zero(rank))
    }

    /// `Z/n`; `n = 0` gives `Z`.
    pub fn cyclic(n: i64) -> Self {
        let rel = Matrix::from_columns(1, &[vec![T::from_i64_exact(n)]]);
        Self::new(1, &rel).expect("one row")
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    /// Number of generators.
    pub fn rank(&self) -> usize {
        self.inner.relations.dim()
    }

    pub fn relations(&self) -> &Lattice<T> {
        &self.inner.relations
    }

    pub fn invariant(&self) -> &AbelianInvariant<T> {
        self.inner
            .invariant
            .get_or_init(|| AbelianInvariant::of_presentation(self.inner.relations.basis()))
    }

    /// Every element is a relation.
    pub fn is_trivial(&self) -> bool {
        self.inner.relations.rank() == self.rank() && self.inner.relations == Lattice::full(self.rank())
    }
}

impl<T: IntScalar> PartialEq for FgabObject<T> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.relations == other.inner.relations
    }
}

impl<T: IntScalar> Eq for FgabObject<T> {}

impl<T: IntScalar> fmt::Debug for FgabObject<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z^{}/{:?}", self.rank(), self.inner.relations.basis())
    }
}

#[derive(Clone)]
pub struct FgabMorphism<T> {
    dom: FgabObject<T>,
    cod: FgabObject<T>,
    matrix: Matrix<T>,
}

impl<T: IntScalar> PartialEq for FgabMorphism<T> {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix && self.dom == other.dom && self.cod == other.cod
    }
}

impl<T: IntScalar> Eq for FgabMorphism<T> {}

impl<T: IntScalar> FgabMorphism<T> {
    /// Checks shape and that relations of `dom` land in relations of `cod`.
    pub fn new(dom: FgabObject<T>, cod: FgabObject<T>, matrix: Matrix<T>) -> Result<Self> {
        if matrix.rows() != cod.rank() || matrix.cols() != dom.rank() {
            return Err(ChaseError::IllDefined(format!(
                "matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                cod.rank(),
                dom.rank()
            )));
        }
        if !cod.relations().contains_columns(&matrix.mul(dom.relations().basis())) {
            return Err(ChaseError::IllDefined("relations of the domain are not sent to relations".into()));
        }
        Ok(Self::raw(dom, cod, matrix))
    }

    pub fn from_i64(dom: &FgabObject<T>, cod: &FgabObject<T>, rows: &[&[i64]]) -> Result<Self> {
        let m = if rows.is_empty() {
            Matrix::zeros(0, dom.rank())
        } else {
            Matrix::from_i64_rows(rows)
        };
        Self::new(dom.clone(), cod.clone(), m)
    }

    /// Caller guarantees well-definedness.
    fn raw(dom: FgabObject<T>, cod: FgabObject<T>, matrix: Matrix<T>) -> Self {
        let matrix = cod.relations().reduce_columns(&matrix);
        FgabMorphism { dom, cod, matrix }
    }

    pub fn dom(&self) -> &FgabObject<T> {
        &self.dom
    }

    pub fn cod(&self) -> &FgabObject<T> {
        &self.cod
    }

    /// Canonical matrix: columns reduced modulo the codomain relations.
    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    /// Lattice of `Z^{cod rank}` corresponding to the image subgroup.
    pub fn image_lattice(&self) -> Lattice<T> {
        self.cod.relations().sum(&Lattice::from_generators(&self.matrix))
    }

    /// Lattice of `Z^{dom rank}` corresponding to the kernel subgroup.
    pub fn kernel_lattice(&self) -> Lattice<T> {
        self.cod.relations().preimage(&self.matrix)
    }
}

impl<T: IntScalar> fmt::Debug for FgabMorphism<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {:?} -> {:?}", self.matrix, self.dom, self.cod)
    }
}

/// Direct sum with its injections and projections.
#[derive(Clone, Debug)]
pub struct Biproduct<T: IntScalar> {
    pub object: FgabObject<T>,
    pub inj1: FgabMorphism<T>,
    pub inj2: FgabMorphism<T>,
    pub proj1: FgabMorphism<T>,
    pub proj2: FgabMorphism<T>,
}

/// The category of finitely generated abelian groups over scalar `T`.
pub struct FgabCategory<T>(PhantomData<fn() -> T>);

impl<T> Default for FgabCategory<T> {
    fn default() -> Self {
        FgabCategory(PhantomData)
    }
}

impl<T> Clone for FgabCategory<T> {
    fn clone(&self) -> Self {
        Self::default()
    }
}

impl<T> Copy for FgabCategory<T> {}

impl<T> fmt::Debug for FgabCategory<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("fgab")
    }
}

impl<T: IntScalar> FgabCategory<T> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn biproduct(&self, a: &FgabObject<T>, b: &FgabObject<T>) -> Biproduct<T> {
        let (n, m) = (a.rank(), b.rank());
        let rel = a.relations().basis().block_diag(b.relations().basis());
        let object = FgabObject::from_lattice(Lattice::from_generators(&rel));
        let id_n = Matrix::identity(n);
        let id_m = Matrix::identity(m);
        let inj1 = id_n.vcat(&Matrix::zeros(m, n));
        let inj2 = Matrix::zeros(n, m).vcat(&id_m);
        let proj1 = id_n.hcat(&Matrix::zeros(n, m));
        let proj2 = Matrix::zeros(m, n).hcat(&id_m);
        Biproduct {
            inj1: FgabMorphism::raw(a.clone(), object.clone(), inj1),
            inj2: FgabMorphism::raw(b.clone(), object.clone(), inj2),
            proj1: FgabMorphism::raw(object.clone(), a.clone(), proj1),
            proj2: FgabMorphism::raw(object.clone(), b.clone(), proj2),
            object,
        }
    }

    pub fn add(&self, f: &FgabMorphism<T>, g: &FgabMorphism<T>) -> Result<FgabMorphism<T>> {
        same_ends(f, g)?;
        Ok(FgabMorphism::raw(f.dom.clone(), f.cod.clone(), f.matrix.add(&g.matrix)))
    }

    pub fn neg(&self, f: &FgabMorphism<T>) -> FgabMorphism<T> {
        FgabMorphism::raw(f.dom.clone(), f.cod.clone(), f.matrix.neg())
    }

    pub fn sub(&self, f: &FgabMorphism<T>, g: &FgabMorphism<T>) -> Result<FgabMorphism<T>> {
        same_ends(f, g)?;
        Ok(FgabMorphism::raw(f.dom.clone(), f.cod.clone(), f.matrix.sub(&g.matrix)))
    }

    /// Generators of `Hom(dom, cod)`, nonzero ones only.
    pub fn hom_generators(&self, dom: &FgabObject<T>, cod: &FgabObject<T>) -> Vec<FgabMorphism<T>> {
        let (m, n) = (dom.rank(), cod.rank());
        let rel = dom.relations().basis();
        // vec(M) is column-major; row block k maps vec(M) to M r_k.
        let mut stacked = Matrix::zeros(n * rel.cols(), n * m);
        for k in 0..rel.cols() {
            for j in 0..m {
                for i in 0..n {
                    stacked[(k * n + i, j * n + i)] = rel[(j, k)].clone();
                }
            }
        }
        let mut target = Matrix::zeros(0, 0);
        for _ in 0..rel.cols() {
            target = target.block_diag(cod.relations().basis());
        }
        let target = Lattice::from_generators(&target);
        let homs = target.preimage(&stacked);
        let basis = homs.basis();
        (0..basis.cols())
            .map(|c| {
                let v = basis.column(c);
                let mut mat = Matrix::zeros(n, m);
                for j in 0..m {
                    for i in 0..n {
                        mat[(i, j)] = v[j * n + i].clone();
                    }
                }
                FgabMorphism::raw(dom.clone(), cod.clone(), mat)
            })
            .filter(|f| !f.matrix.is_zero())
            .collect()
    }

    /// `Σ coeffs[i] · hom_generators[i]`, cycling through `coeffs`.
    pub fn hom_combination(&self, dom: &FgabObject<T>, cod: &FgabObject<T>, coeffs: &[i64]) -> FgabMorphism<T> {
        let mut acc = Matrix::zeros(cod.rank(), dom.rank());
        if !coeffs.is_empty() {
            for (i, g) in self.hom_generators(dom, cod).iter().enumerate() {
                let c = T::from_i64_exact(coeffs[i % coeffs.len()]);
                acc = acc.add(&g.matrix.scale(&c));
            }
        }
        FgabMorphism::raw(dom.clone(), cod.clone(), acc)
    }

    /// Solves `[A | R] (y; w) = x` column by column and returns the `y` part.
    fn solve_modulo(a: &Matrix<T>, rel: &Lattice<T>, rhs: &Matrix<T>) -> Option<Matrix<T>> {
        let joint = a.hcat(rel.basis());
        let h = column_hermite(&joint, true);
        let mut cols = Vec::with_capacity(rhs.cols());
        for j in 0..rhs.cols() {
            let sol = h.solve(&rhs.column(j))?;
            cols.push(sol[..a.cols()].to_vec());
        }
        Some(Matrix::from_columns(a.cols(), &cols))
    }
}

fn same_ends<T: IntScalar>(f: &FgabMorphism<T>, g: &FgabMorphism<T>) -> Result<()> {
    if f.dom != g.dom || f.cod != g.cod {
        return Err(ChaseError::NotComposable("morphisms do not share domain and codomain".into()));
    }
    Ok(())
}

impl<T: IntScalar> Category for FgabCategory<T> {
    type Obj = FgabObject<T>;
    type Mor = FgabMorphism<T>;
    type Invariant = AbelianInvariant<T>;

    fn dom(&self, f: &Self::Mor) -> Self::Obj {
        f.dom.clone()
    }

    fn cod(&self, f: &Self::Mor) -> Self::Obj {
        f.cod.clone()
    }

    fn identity(&self, x: &Self::Obj) -> Self::Mor {
        FgabMorphism::raw(x.clone(), x.clone(), Matrix::identity(x.rank()))
    }

    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor> {
        if f.cod != g.dom {
            return Err(ChaseError::NotComposable(format!("{:?} after {:?}", g.dom, f.cod)));
        }
        Ok(FgabMorphism::raw(f.dom.clone(), g.cod.clone(), g.matrix.mul(&f.matrix)))
    }

    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        f == g
    }

    fn is_null(&self, f: &Self::Mor) -> bool {
        f.matrix.is_zero()
    }

    fn null_object(&self) -> Self::Obj {
        FgabObject::zero()
    }

    fn null_morphism(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor {
        FgabMorphism::raw(x.clone(), y.clone(), Matrix::zeros(y.rank(), x.rank()))
    }

    fn kernel(&self, f: &Self::Mor) -> Self::Mor {
        let m = f.kernel_lattice();
        let leg = m.basis().clone();
        let dom_rel = f.dom.relations().basis();
        let cols: Vec<Vec<T>> = (0..dom_rel.cols())
            .map(|j| m.coordinates(&dom_rel.column(j)).expect("domain relations lie in the kernel lattice"))
            .collect();
        let rel = Matrix::from_columns(m.rank(), &cols);
        let k = FgabObject::from_lattice(Lattice::from_generators(&rel));
        FgabMorphism::raw(k, f.dom.clone(), leg)
    }

    fn cokernel(&self, f: &Self::Mor) -> Self::Mor {
        let q = FgabObject::from_lattice(f.image_lattice());
        FgabMorphism::raw(f.cod.clone(), q, Matrix::identity(f.cod.rank()))
    }

    fn factor_through_kernel(&self, k: &Self::Mor, x: &Self::Mor) -> Result<Self::Mor> {
        if k.cod != x.cod {
            return Err(ChaseError::NotComposable("factor through kernel: codomains differ".into()));
        }
        let y = Self::solve_modulo(&k.matrix, k.cod.relations(), &x.matrix)
            .ok_or_else(|| ChaseError::FactorizationFailure("morphism does not land in the subobject".into()))?;
        FgabMorphism::new(x.dom.clone(), k.dom.clone(), y)
            .map_err(|_| ChaseError::FactorizationFailure("lift is not well defined (leg not monic)".into()))
    }

    fn factor_through_cokernel(&self, q: &Self::Mor, y: &Self::Mor) -> Result<Self::Mor> {
        if q.dom != y.dom {
            return Err(ChaseError::NotComposable("factor through cokernel: domains differ".into()));
        }
        let n = q.cod.rank();
        let preimages = Self::solve_modulo(&q.matrix, q.cod.relations(), &Matrix::identity(n))
            .ok_or_else(|| ChaseError::FactorizationFailure("leg is not epic".into()))?;
        let yp = y.matrix.mul(&preimages);
        let yp = FgabMorphism::new(q.cod.clone(), y.cod.clone(), yp)
            .map_err(|_| ChaseError::FactorizationFailure("descended morphism is not well defined".into()))?;
        if self.compose(&yp, q)? != *y {
            return Err(ChaseError::FactorizationFailure("morphism does not vanish on the kernel of the leg".into()));
        }
        Ok(yp)
    }

    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Mor, Self::Mor)> {
        if f.cod != g.cod {
            return Err(ChaseError::NotComposable("pullback: codomains differ".into()));
        }
        let bp = self.biproduct(&f.dom, &g.dom);
        let diff = FgabMorphism::raw(bp.object.clone(), f.cod.clone(), f.matrix.hcat(&g.matrix.neg()));
        let k = self.kernel(&diff);
        Ok((self.compose(&bp.proj1, &k)?, self.compose(&bp.proj2, &k)?))
    }

    fn pullback_factor(&self, p1: &Self::Mor, p2: &Self::Mor, x1: &Self::Mor, x2: &Self::Mor) -> Result<Self::Mor> {
        if p1.dom != p2.dom || x1.dom != x2.dom {
            return Err(ChaseError::NotComposable("pullback factor: cone shape".into()));
        }
        let bp = self.biproduct(&p1.cod, &p2.cod);
        let leg = FgabMorphism::raw(p1.dom.clone(), bp.object.clone(), p1.matrix.vcat(&p2.matrix));
        let x = FgabMorphism::raw(x1.dom.clone(), bp.object, x1.matrix.vcat(&x2.matrix));
        self.factor_through_kernel(&leg, &x)
    }

    fn pushout(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Mor, Self::Mor)> {
        if f.dom != g.dom {
            return Err(ChaseError::NotComposable("pushout: domains differ".into()));
        }
        let bp = self.biproduct(&f.cod, &g.cod);
        let diff = FgabMorphism::raw(f.dom.clone(), bp.object.clone(), f.matrix.vcat(&g.matrix.neg()));
        let q = self.cokernel(&diff);
        Ok((self.compose(&q, &bp.inj1)?, self.compose(&q, &bp.inj2)?))
    }

    fn pushout_factor(&self, q1: &Self::Mor, q2: &Self::Mor, y1: &Self::Mor, y2: &Self::Mor) -> Result<Self::Mor> {
        if q1.cod != q2.cod || y1.cod != y2.cod {
            return Err(ChaseError::NotComposable("pushout factor: cocone shape".into()));
        }
        let bp = self.biproduct(&q1.dom, &q2.dom);
        let leg = FgabMorphism::raw(bp.object.clone(), q1.cod.clone(), q1.matrix.hcat(&q2.matrix));
        let y = FgabMorphism::raw(bp.object, y1.cod.clone(), y1.matrix.hcat(&y2.matrix));
        self.factor_through_cokernel(&leg, &y)
    }

    fn is_iso(&self, f: &Self::Mor) -> bool {
        // injective: kernel lattice equals the domain relations; surjective: image lattice is everything
        f.kernel_lattice() == *f.dom.relations() && f.image_lattice() == Lattice::full(f.cod.rank())
    }

    fn inverse(&self, f: &Self::Mor) -> Result<Self::Mor> {
        if !self.is_iso(f) {
            return Err(ChaseError::FactorizationFailure("morphism is not invertible".into()));
        }
        self.factor_through_cokernel(f, &self.identity(&f.dom))
    }

    fn invariant(&self, x: &Self::Obj) -> Self::Invariant {
        x.invariant().clone()
    }
}

/// Which Lambek invariant to compute.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambekSide {
    Img,
    Ker,
}

/// Classical subquotient formulas for the Lambek invariants of a square,
/// computed with lattice arithmetic only:
/// `Img = (Im right ∩ Im bottom) / Im(right∘top)` inside the corner `D`,
/// `Ker = Ker(right∘top) / (Ker top + Ker left)` inside the corner `A`.
pub fn lambek_group_formula<T: IntScalar>(sq: &Square<FgabMorphism<T>>, side: LambekSide) -> AbelianInvariant<T> {
    let diag = FgabMorphism::raw(sq.top.dom.clone(), sq.right.cod.clone(), sq.right.matrix.mul(&sq.top.matrix));
    match side {
        LambekSide::Img => {
            let upper = sq.right.image_lattice().intersection(&sq.bottom.image_lattice());
            AbelianInvariant::of_subquotient(&upper, &diag.image_lattice())
        }
        LambekSide::Ker => {
            let lower = sq.top.kernel_lattice().sum(&sq.left.kernel_lattice());
            AbelianInvariant::of_subquotient(&diag.kernel_lattice(), &lower)
        }
    }
}

/// `Ker g / Im f` for a null pair, by lattice arithmetic.
pub fn homology_group_formula<T: IntScalar>(f: &FgabMorphism<T>, g: &FgabMorphism<T>) -> AbelianInvariant<T> {
    AbelianInvariant::of_subquotient(&g.kernel_lattice(), &f.image_lattice())
}
