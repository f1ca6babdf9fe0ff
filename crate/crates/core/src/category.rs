//! The decidable semiexact-category interface and the constructions that
//! only need kernels, cokernels, pullbacks and pushouts.
//!
//! Everything here is backend-generic. A backend supplies exact morphism
//! equality, the null ideal, canonical kernel/cokernel legs, factorization
//! through a monic/epic leg, and binary pullbacks/pushouts. Subobjects are
//! compared by mutual factorization, never by payload.

use std::fmt::{Debug, Display};

use crate::error::{ChaseError, Result};

/// A category with a closed ideal of null morphisms in which every morphism
/// has a kernel and a cokernel, with decidable equality.
pub trait Category: Sync {
    type Obj: Clone + PartialEq + Debug + Send + Sync;
    type Mor: Clone + Debug + Send + Sync;
    /// Complete isomorphism invariant of objects.
    type Invariant: Clone + PartialEq + Eq + Debug + Display + Send + Sync;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;
    fn mor_eq(&self, f: &Self::Mor, g: &Self::Mor) -> bool;
    fn is_null(&self, f: &Self::Mor) -> bool;
    fn null_object(&self) -> Self::Obj;
    fn null_morphism(&self, x: &Self::Obj, y: &Self::Obj) -> Self::Mor;

    /// Canonical kernel leg `k: Ker f → dom f`.
    fn kernel(&self, f: &Self::Mor) -> Self::Mor;
    /// Canonical cokernel leg `q: cod f → Coker f`.
    fn cokernel(&self, f: &Self::Mor) -> Self::Mor;
    /// The unique `x'` with `k ∘ x' = x`, for a monic `k`.
    fn factor_through_kernel(&self, k: &Self::Mor, x: &Self::Mor) -> Result<Self::Mor>;
    /// The unique `y'` with `y' ∘ q = y`, for an epic `q`.
    fn factor_through_cokernel(&self, q: &Self::Mor, y: &Self::Mor) -> Result<Self::Mor>;

    /// Pullback legs `(p1, p2)` of `f: A → D`, `g: C → D`, with `f p1 = g p2`.
    fn pullback(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Mor, Self::Mor)>;
    /// Universal map into a pullback produced by [`Category::pullback`].
    fn pullback_factor(
        &self,
        p1: &Self::Mor,
        p2: &Self::Mor,
        x1: &Self::Mor,
        x2: &Self::Mor,
    ) -> Result<Self::Mor>;
    /// Pushout legs `(q1, q2)` of `f: A → B`, `g: A → C`, with `q1 f = q2 g`.
    fn pushout(&self, f: &Self::Mor, g: &Self::Mor) -> Result<(Self::Mor, Self::Mor)>;
    /// Universal map out of a pushout produced by [`Category::pushout`].
    fn pushout_factor(
        &self,
        q1: &Self::Mor,
        q2: &Self::Mor,
        y1: &Self::Mor,
        y2: &Self::Mor,
    ) -> Result<Self::Mor>;

    fn is_iso(&self, f: &Self::Mor) -> bool;
    fn inverse(&self, f: &Self::Mor) -> Result<Self::Mor>;
    fn invariant(&self, x: &Self::Obj) -> Self::Invariant;
}

/// `f = im ∘ mid ∘ coim`.
#[derive(Clone, Debug)]
pub struct Factorization<M> {
    pub coim: M,
    pub mid: M,
    pub im: M,
}

/// A commutative square `right ∘ top = bottom ∘ left`.
///
/// ```text
///   A --top--> B
///   |          |
///  left      right
///   v          v
///   C -bottom->D
/// ```
#[derive(Clone, Debug)]
pub struct Square<M> {
    pub top: M,
    pub left: M,
    pub right: M,
    pub bottom: M,
}

impl<M: Clone> Square<M> {
    pub fn new<C>(cat: &C, top: M, left: M, right: M, bottom: M) -> Result<Self>
    where
        C: Category<Mor = M> + ?Sized,
    {
        let shape_ok = cat.dom(&top) == cat.dom(&left)
            && cat.cod(&top) == cat.dom(&right)
            && cat.cod(&left) == cat.dom(&bottom)
            && cat.cod(&right) == cat.cod(&bottom);
        if !shape_ok {
            return Err(ChaseError::NotComposable("square corners do not match".into()));
        }
        let rt = cat.compose(&right, &top)?;
        let bl = cat.compose(&bottom, &left)?;
        if !cat.mor_eq(&rt, &bl) {
            return Err(ChaseError::NotCommutative("right∘top ≠ bottom∘left".into()));
        }
        Ok(Square { top, left, right, bottom })
    }

    /// Reflect along the diagonal: rows become columns.
    pub fn transpose(&self) -> Self {
        Square {
            top: self.left.clone(),
            left: self.top.clone(),
            right: self.bottom.clone(),
            bottom: self.right.clone(),
        }
    }
}

/// Two adjacent commutative squares `S = (f, a, b, f')`, `T = (g, b, c, g')`
/// with null rows.
///
/// ```text
///   A --f--> B --g--> C
///   a        b        c
///   A'-f'--> B'-g'--> C'
/// ```
#[derive(Clone, Debug)]
pub struct TwoSquareDiagram<M> {
    pub f: M,
    pub g: M,
    pub fp: M,
    pub gp: M,
    pub a: M,
    pub b: M,
    pub c: M,
}

impl<M: Clone> TwoSquareDiagram<M> {
    #[allow(clippy::too_many_arguments)]
    pub fn new<C>(cat: &C, f: M, g: M, fp: M, gp: M, a: M, b: M, c: M) -> Result<Self>
    where
        C: Category<Mor = M> + ?Sized,
    {
        Square::new(cat, f.clone(), a.clone(), b.clone(), fp.clone())
            .map_err(|e| relabel(e, "square S"))?;
        Square::new(cat, g.clone(), b.clone(), c.clone(), gp.clone())
            .map_err(|e| relabel(e, "square T"))?;
        if !cat.is_null(&cat.compose(&g, &f)?) {
            return Err(ChaseError::NotNullRows("g∘f is not null".into()));
        }
        if !cat.is_null(&cat.compose(&gp, &fp)?) {
            return Err(ChaseError::NotNullRows("g'∘f' is not null".into()));
        }
        Ok(TwoSquareDiagram { f, g, fp, gp, a, b, c })
    }

    /// The left square `S`.
    pub fn s(&self) -> Square<M> {
        Square { top: self.f.clone(), left: self.a.clone(), right: self.b.clone(), bottom: self.fp.clone() }
    }

    /// The right square `T`.
    pub fn t(&self) -> Square<M> {
        Square { top: self.g.clone(), left: self.b.clone(), right: self.c.clone(), bottom: self.gp.clone() }
    }

    /// Diagram whose squares are `upper` stacked over `lower`, read as a
    /// horizontal pair after transposition. `upper.bottom` must equal
    /// `lower.top`.
    pub fn from_vertical(upper: &Square<M>, lower: &Square<M>) -> Self {
        TwoSquareDiagram {
            f: upper.left.clone(),
            g: lower.left.clone(),
            fp: upper.right.clone(),
            gp: lower.right.clone(),
            a: upper.top.clone(),
            b: upper.bottom.clone(),
            c: lower.bottom.clone(),
        }
    }
}

fn relabel(e: ChaseError, what: &str) -> ChaseError {
    match e {
        ChaseError::NotCommutative(_) => ChaseError::NotCommutative(format!("{what} does not commute")),
        ChaseError::NotComposable(m) => ChaseError::NotComposable(format!("{what}: {m}")),
        other => other,
    }
}

/// Five columns with null rows:
///
/// ```text
///   A -f-> B -g-> C -h-> D -k-> E
///   a      b      c      d      e
///   A'-f'> B'-g'> C'-h'> D'-k'> E'
/// ```
#[derive(Clone, Debug)]
pub struct FiveColumnDiagram<M> {
    /// `[f, g, h, k]`
    pub top: [M; 4],
    /// `[f', g', h', k']`
    pub bottom: [M; 4],
    /// `[a, b, c, d, e]`
    pub verticals: [M; 5],
}

impl<M: Clone> FiveColumnDiagram<M> {
    pub fn new<C>(cat: &C, top: [M; 4], bottom: [M; 4], verticals: [M; 5]) -> Result<Self>
    where
        C: Category<Mor = M> + ?Sized,
    {
        for i in 0..4 {
            Square::new(
                cat,
                top[i].clone(),
                verticals[i].clone(),
                verticals[i + 1].clone(),
                bottom[i].clone(),
            )
            .map_err(|e| relabel(e, &format!("square {}", i + 1)))?;
        }
        for i in 0..3 {
            if !cat.is_null(&cat.compose(&top[i + 1], &top[i])?) {
                return Err(ChaseError::NotNullRows(format!("top row not null at position {}", i + 1)));
            }
            if !cat.is_null(&cat.compose(&bottom[i + 1], &bottom[i])?) {
                return Err(ChaseError::NotNullRows(format!("bottom row not null at position {}", i + 1)));
            }
        }
        Ok(FiveColumnDiagram { top, bottom, verticals })
    }

    /// Square number `i` (0-based), left to right.
    pub fn square(&self, i: usize) -> Square<M> {
        Square {
            top: self.top[i].clone(),
            left: self.verticals[i].clone(),
            right: self.verticals[i + 1].clone(),
            bottom: self.bottom[i].clone(),
        }
    }
}

/// The comparison isomorphisms of the 3×3 lemma for a square
/// `(f, a, b, g)`:
/// `λ: Ker(f̂: Ker a → Ker b) → Ker(â: Ker f → Ker g)` with
/// `(ker a)(ker f̂) = (ker f)(ker â) λ`, and
/// `μ: Coker(ǧ: Coker a → Coker b) → Coker(b̌: Coker f → Coker g)` with
/// `μ (coker ǧ)(coker b) = (coker b̌)(coker g)`.
#[derive(Clone, Debug)]
pub struct ThreeByThreeIsos<M> {
    pub lambda_iso: M,
    pub mu_iso: M,
}

/// Constructions available in every backend.
pub trait CategoryExt: Category {
    /// Right-to-left composite: `chain(&[h, g, f]) = h ∘ g ∘ f`.
    fn chain(&self, ms: &[&Self::Mor]) -> Result<Self::Mor> {
        let (last, rest) = ms.split_last().expect("empty composite");
        let mut acc = (*last).clone();
        for m in rest.iter().rev() {
            acc = self.compose(m, &acc)?;
        }
        Ok(acc)
    }

    fn is_null_object(&self, x: &Self::Obj) -> bool {
        self.is_null(&self.identity(x))
    }

    fn kernel_object(&self, f: &Self::Mor) -> Self::Obj {
        self.dom(&self.kernel(f))
    }

    fn cokernel_object(&self, f: &Self::Mor) -> Self::Obj {
        self.cod(&self.cokernel(f))
    }

    /// `im f = ker(coker f)`.
    fn image(&self, f: &Self::Mor) -> Self::Mor {
        self.kernel(&self.cokernel(f))
    }

    /// `coim f = coker(ker f)`.
    fn coimage(&self, f: &Self::Mor) -> Self::Mor {
        self.cokernel(&self.kernel(f))
    }

    fn normal_factorization(&self, f: &Self::Mor) -> Result<Factorization<Self::Mor>> {
        let im = self.image(f);
        let coim = self.coimage(f);
        let through_im = self.factor_through_kernel(&im, f)?;
        let mid = self.factor_through_cokernel(&coim, &through_im)?;
        Ok(Factorization { coim, mid, im })
    }

    /// `f̄` of the normal factorization is an isomorphism.
    fn is_exact_morphism(&self, f: &Self::Mor) -> Result<bool> {
        Ok(self.is_iso(&self.normal_factorization(f)?.mid))
    }

    fn is_n_mono(&self, f: &Self::Mor) -> bool {
        self.is_null_object(&self.kernel_object(f))
    }

    fn is_n_epi(&self, f: &Self::Mor) -> bool {
        self.is_null_object(&self.cokernel_object(f))
    }

    /// Two monics into the same object factor through each other.
    fn subobject_equal(&self, m1: &Self::Mor, m2: &Self::Mor) -> bool {
        self.cod(m1) == self.cod(m2)
            && self.factor_through_kernel(m2, m1).is_ok()
            && self.factor_through_kernel(m1, m2).is_ok()
    }

    /// Two epics out of the same object factor through each other.
    fn quotient_equal(&self, e1: &Self::Mor, e2: &Self::Mor) -> bool {
        self.dom(e1) == self.dom(e2)
            && self.factor_through_cokernel(e2, e1).is_ok()
            && self.factor_through_cokernel(e1, e2).is_ok()
    }

    /// `m` is (isomorphic to) a kernel leg: `m = (im m) u` with `u` iso.
    fn is_kernel(&self, m: &Self::Mor) -> Result<bool> {
        let u = self.factor_through_kernel(&self.image(m), m)?;
        Ok(self.is_iso(&u))
    }

    /// `e` is (isomorphic to) a cokernel leg: `e = u (coim e)` with `u` iso.
    fn is_cokernel(&self, e: &Self::Mor) -> Result<bool> {
        let u = self.factor_through_cokernel(&self.coimage(e), e)?;
        Ok(self.is_iso(&u))
    }

    /// `m = ker f` up to a unique isomorphism.
    fn is_kernel_of(&self, m: &Self::Mor, f: &Self::Mor) -> bool {
        if self.cod(m) != self.dom(f) {
            return false;
        }
        match self.factor_through_kernel(&self.kernel(f), m) {
            Ok(u) => self.is_iso(&u),
            Err(_) => false,
        }
    }

    /// `e = coker f` up to a unique isomorphism.
    fn is_cokernel_of(&self, e: &Self::Mor, f: &Self::Mor) -> bool {
        if self.dom(e) != self.cod(f) {
            return false;
        }
        match self.factor_through_cokernel(&self.cokernel(f), e) {
            Ok(u) => self.is_iso(&u),
            Err(_) => false,
        }
    }

    /// Exactness of `X -f-> Y -g-> Z` at `Y`: `im f = ker g`.
    fn exact_at(&self, f: &Self::Mor, g: &Self::Mor) -> bool {
        self.subobject_equal(&self.image(f), &self.kernel(g))
    }

    /// Morphism of the row kernels induced by the left vertical:
    /// `(ker bottom) ĝ = left ∘ ker top`.
    fn induced_kernel_morphism(&self, sq: &Square<Self::Mor>) -> Result<Self::Mor> {
        let x = self.compose(&sq.left, &self.kernel(&sq.top))?;
        self.factor_through_kernel(&self.kernel(&sq.bottom), &x)
    }

    /// Morphism of the row cokernels induced by the right vertical:
    /// `f̌ (coker top) = (coker bottom) right`.
    fn induced_cokernel_morphism(&self, sq: &Square<Self::Mor>) -> Result<Self::Mor> {
        let y = self.compose(&self.cokernel(&sq.bottom), &sq.right)?;
        self.factor_through_cokernel(&self.cokernel(&sq.top), &y)
    }

    fn three_by_three(&self, sq: &Square<Self::Mor>) -> Result<ThreeByThreeIsos<Self::Mor>> {
        let internal = |what: &'static str| {
            move |e: ChaseError| ChaseError::InternalInvariantViolation(format!("3x3 lemma, {what}: {e}"))
        };
        // kernels of the columns, induced by the top row; kernels of the rows, induced by the left column
        let f_hat = self.induced_kernel_morphism(&sq.transpose())?;
        let a_hat = self.induced_kernel_morphism(sq)?;
        let ker_a = self.kernel(&sq.left);
        let ker_f = self.kernel(&sq.top);
        let lhs = self.compose(&ker_a, &self.kernel(&f_hat))?;
        let via = self.compose(&ker_f, &self.kernel(&a_hat))?;
        let lambda_iso = self.factor_through_kernel(&via, &lhs).map_err(internal("λ"))?;

        let g_check = self.induced_cokernel_morphism(&sq.transpose())?;
        let b_check = self.induced_cokernel_morphism(sq)?;
        let lhs = self.compose(&self.cokernel(&g_check), &self.cokernel(&sq.right))?;
        let rhs = self.compose(&self.cokernel(&b_check), &self.cokernel(&sq.bottom))?;
        let mu_iso = self.factor_through_cokernel(&lhs, &rhs).map_err(internal("μ"))?;

        if !self.is_iso(&lambda_iso) {
            return Err(ChaseError::InternalInvariantViolation("3x3 lemma: λ is not an isomorphism".into()));
        }
        if !self.is_iso(&mu_iso) {
            return Err(ChaseError::InternalInvariantViolation("3x3 lemma: μ is not an isomorphism".into()));
        }
        Ok(ThreeByThreeIsos { lambda_iso, mu_iso })
    }

    /// `(p1, p2)` is a pullback of `(f, g)`: the comparison into the
    /// canonical pullback is an isomorphism.
    fn is_pullback_square(&self, p1: &Self::Mor, p2: &Self::Mor, f: &Self::Mor, g: &Self::Mor) -> Result<bool> {
        if !self.mor_eq(&self.compose(f, p1)?, &self.compose(g, p2)?) {
            return Ok(false);
        }
        let (c1, c2) = self.pullback(f, g)?;
        let u = self.pullback_factor(&c1, &c2, p1, p2)?;
        Ok(self.is_iso(&u))
    }

    fn is_pushout_square(&self, q1: &Self::Mor, q2: &Self::Mor, f: &Self::Mor, g: &Self::Mor) -> Result<bool> {
        if !self.mor_eq(&self.compose(q1, f)?, &self.compose(q2, g)?) {
            return Ok(false);
        }
        let (c1, c2) = self.pushout(f, g)?;
        let u = self.pushout_factor(&c1, &c2, q1, q2)?;
        Ok(self.is_iso(&u))
    }

    /// For a square `(top b, left a, right c, bottom d)` with `c` an
    /// N-monomorphism, the square `(ker b, â, a, ker d)` is a pullback,
    /// where `â` is the induced morphism of row kernels.
    fn verify_pullback_lemma(&self, sq: &Square<Self::Mor>) -> Result<bool> {
        if !self.is_n_mono(&sq.right) {
            return Err(ChaseError::HypothesisViolated(vec![crate::error::Hypothesis::RightVerticalNMono]));
        }
        let a_hat = self.induced_kernel_morphism(sq)?;
        let ker_b = self.kernel(&sq.top);
        let ker_d = self.kernel(&sq.bottom);
        self.is_pullback_square(&ker_b, &a_hat, &sq.left, &ker_d)
    }
}

impl<C: Category + ?Sized> CategoryExt for C {}
