//! Lambek invariants of a commutative square and the Lambek morphism of two
//! adjacent squares.
//!
//! For a square `(top f, left a, right b, bottom g)` with corners
//! `A, B, C, D`:
//! `Img S = Coker λ_S`, where `λ_S: A → M` is the universal map into the
//! pullback `M` of `(im b, im g)`, and `Ker S = Ker ρ_S`, where
//! `ρ_S: N → D` is the universal map out of the pushout `N` of
//! `(coim f, coim a)`.

use crate::category::{Category, CategoryExt, Square, TwoSquareDiagram};
use crate::error::{ChaseError, Hypothesis, Result};
use crate::fgab::LambekSide;
use crate::verdict::{Clause, Verdict};

/// Pullback side of a square.
#[derive(Clone, Debug)]
pub struct ImgData<M, O> {
    /// `λ_S: A → M`
    pub lambda: M,
    /// `M`
    pub vertex: O,
    /// Leg `M → Im(right)`.
    pub l: M,
    /// Leg `M → Im(bottom)`.
    pub s: M,
    /// `coker λ_S: M → Img S`
    pub coker: M,
    pub object: O,
}

/// Pushout side of a square.
#[derive(Clone, Debug)]
pub struct KerData<M, O> {
    /// `ρ_S: N → D`
    pub rho: M,
    /// `N`
    pub vertex: O,
    /// Leg `Coim(top) → N`.
    pub t: M,
    /// Leg `Coim(left) → N`.
    pub r: M,
    /// `ker ρ_S: Ker S → N`
    pub ker: M,
    pub object: O,
}

pub type ImgOf<C> = ImgData<<C as Category>::Mor, <C as Category>::Obj>;
pub type KerOf<C> = KerData<<C as Category>::Mor, <C as Category>::Obj>;

pub fn img_data<C: Category + ?Sized>(cat: &C, sq: &Square<C::Mor>) -> Result<ImgOf<C>> {
    let im_b = cat.image(&sq.right);
    let im_g = cat.image(&sq.bottom);
    let (l, s) = cat.pullback(&im_b, &im_g)?;
    let x1 = cat.factor_through_kernel(&im_b, &cat.compose(&sq.right, &sq.top)?)?;
    let x2 = cat.factor_through_kernel(&im_g, &cat.compose(&sq.bottom, &sq.left)?)?;
    let lambda = cat.pullback_factor(&l, &s, &x1, &x2)?;
    let coker = cat.cokernel(&lambda);
    Ok(ImgData { vertex: cat.dom(&l), object: cat.cod(&coker), lambda, l, s, coker })
}

pub fn ker_data<C: Category + ?Sized>(cat: &C, sq: &Square<C::Mor>) -> Result<KerOf<C>> {
    let coim_f = cat.coimage(&sq.top);
    let coim_a = cat.coimage(&sq.left);
    let (t, r) = cat.pushout(&coim_f, &coim_a)?;
    let y1 = cat.factor_through_cokernel(&coim_f, &cat.compose(&sq.right, &sq.top)?)?;
    let y2 = cat.factor_through_cokernel(&coim_a, &cat.compose(&sq.bottom, &sq.left)?)?;
    let rho = cat.pushout_factor(&t, &r, &y1, &y2)?;
    let ker = cat.kernel(&rho);
    Ok(KerData { vertex: cat.cod(&t), object: cat.dom(&ker), rho, t, r, ker })
}

/// `Img S` with `coker λ_S`, or `Ker S` with `ker ρ_S`.
pub fn lambek_invariants<C: Category + ?Sized>(
    cat: &C,
    sq: &Square<C::Mor>,
    side: LambekSide,
) -> Result<(C::Obj, C::Mor)> {
    match side {
        LambekSide::Img => img_data(cat, sq).map(|d| (d.object, d.coker)),
        LambekSide::Ker => ker_data(cat, sq).map(|d| (d.object, d.ker)),
    }
}

#[derive(Clone, Debug)]
pub struct LambekData<M, O> {
    pub img_s: ImgData<M, O>,
    pub ker_t: KerData<M, O>,
    /// `b̄⁻¹: Im b → Coim b`, through which `l_S` and `r_T` are joined.
    pub b_bar_inv: M,
    /// `Λ: Img S → Ker T`
    pub lambda: M,
}

pub type LambekOf<C> = LambekData<<C as Category>::Mor, <C as Category>::Obj>;

pub(crate) fn internal(what: &'static str) -> impl Fn(ChaseError) -> ChaseError {
    move |e| ChaseError::InternalInvariantViolation(format!("{what}: {e}"))
}

pub(crate) fn check_rows<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<()> {
    if !cat.is_null(&cat.compose(&d.g, &d.f)?) {
        return Err(ChaseError::NotNullRows("g∘f is not null".into()));
    }
    if !cat.is_null(&cat.compose(&d.gp, &d.fp)?) {
        return Err(ChaseError::NotNullRows("g'∘f' is not null".into()));
    }
    Ok(())
}

/// The unique `Λ` with `r_T l_S = (ker ρ_T) Λ (coker λ_S)`, where `Im b`
/// and `Coim b` are identified through `b̄`.
pub fn lambek_morphism<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<LambekOf<C>> {
    check_rows(cat, d)?;
    let fact = cat.normal_factorization(&d.b)?;
    if !cat.is_iso(&fact.mid) {
        return Err(ChaseError::HypothesisViolated(vec![Hypothesis::BExact]));
    }
    let b_bar_inv = cat.inverse(&fact.mid)?;
    let img_s = img_data(cat, &d.s())?;
    let ker_t = ker_data(cat, &d.t())?;
    let u = cat.chain(&[&ker_t.r, &b_bar_inv, &img_s.l])?;
    let lifted = cat.factor_through_kernel(&ker_t.ker, &u).map_err(internal("Λ through ker ρ_T"))?;
    let lambda = cat
        .factor_through_cokernel(&img_s.coker, &lifted)
        .map_err(internal("Λ through coker λ_S"))?;
    Ok(LambekData { img_s, ker_t, b_bar_inv, lambda })
}

impl<M, O> LambekData<M, O> {
    /// `r_T l_S = (ker ρ_T) Λ (coker λ_S)`, with `b̄⁻¹` between.
    pub fn defining_identity_holds<C: Category<Mor = M, Obj = O> + ?Sized>(&self, cat: &C) -> Result<bool> {
        let lhs = cat.chain(&[&self.ker_t.r, &self.b_bar_inv, &self.img_s.l])?;
        let rhs = cat.chain(&[&self.ker_t.ker, &self.lambda, &self.img_s.coker])?;
        Ok(cat.mor_eq(&lhs, &rhs))
    }
}

/// Hypothesis flags and conclusions of the Lambek isomorphism theorem and
/// the nullity lemma.
pub fn check_lambek_iso<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<Verdict> {
    check_rows(cat, d)?;
    let b_exact = cat.is_exact_morphism(&d.b)?;
    let top_exact = cat.exact_at(&d.f, &d.g);
    let bottom_exact = cat.exact_at(&d.fp, &d.gp);
    let f_epi = cat.is_n_epi(&d.f);
    let gp_mono = cat.is_n_mono(&d.gp);
    let data = if b_exact { Some(lambek_morphism(cat, d)?) } else { None };
    let mut v = Verdict::default();
    let identity = match &data {
        Some(l) => Some(l.defining_identity_holds(cat)?),
        None => None,
    };
    v.push(Clause::new("Lambda satisfies its defining identity").given("b exact", b_exact).concludes_opt(identity));
    v.push(
        Clause::new("Lambda is an isomorphism")
            .given("b exact", b_exact)
            .given("top row exact at B", top_exact)
            .given("bottom row exact at B'", bottom_exact)
            .concludes_opt(data.as_ref().map(|l| cat.is_iso(&l.lambda))),
    );
    v.push(
        Clause::new("Lambda is null")
            .given("b exact", b_exact)
            .given("f N-epi or g' N-mono", f_epi || gp_mono)
            .concludes_opt(data.as_ref().map(|l| cat.is_null(&l.lambda))),
    );
    Ok(v)
}

/// `Img S → Img Sᵀ`, swapping the pullback legs.
pub fn transpose_img_iso<C: Category + ?Sized>(cat: &C, sq: &Square<C::Mor>) -> Result<C::Mor> {
    let a = img_data(cat, sq)?;
    let b = img_data(cat, &sq.transpose())?;
    let swap = cat.pullback_factor(&b.l, &b.s, &a.s, &a.l)?;
    let y = cat.compose(&b.coker, &swap)?;
    cat.factor_through_cokernel(&a.coker, &y).map_err(internal("transpose of Img"))
}

/// `Ker S → Ker Sᵀ`, swapping the pushout legs.
pub fn transpose_ker_iso<C: Category + ?Sized>(cat: &C, sq: &Square<C::Mor>) -> Result<C::Mor> {
    let a = ker_data(cat, sq)?;
    let b = ker_data(cat, &sq.transpose())?;
    let swap = cat.pushout_factor(&a.t, &a.r, &b.r, &b.t)?;
    let x = cat.compose(&swap, &a.ker)?;
    cat.factor_through_kernel(&b.ker, &x).map_err(internal("transpose of Ker"))
}

/// Lambek morphism `Img upper → Ker lower` of two vertically stacked
/// squares sharing `upper.bottom = lower.top`.
pub fn vertical_lambek<C: Category + ?Sized>(
    cat: &C,
    upper: &Square<C::Mor>,
    lower: &Square<C::Mor>,
) -> Result<C::Mor> {
    let d = TwoSquareDiagram::from_vertical(upper, lower);
    let l = lambek_morphism(cat, &d)?;
    let into = transpose_img_iso(cat, upper)?;
    let out = transpose_ker_iso(cat, &lower.transpose())?;
    cat.chain(&[&out, &l.lambda, &into])
}

/// `Coker(left) → Img S` for a square whose right side is N-epi and whose
/// bottom is a kernel; an isomorphism in that situation.
pub fn coker_left_to_img<C: Category + ?Sized>(cat: &C, sq: &Square<C::Mor>) -> Result<C::Mor> {
    let img = img_data(cat, sq)?;
    let x1 = cat.factor_through_kernel(&cat.image(&sq.right), &sq.bottom)?;
    let x2 = cat.factor_through_kernel(&cat.image(&sq.bottom), &sq.bottom)?;
    let j = cat.pullback_factor(&img.l, &img.s, &x1, &x2)?;
    let y = cat.compose(&img.coker, &j)?;
    let out = cat.factor_through_cokernel(&cat.cokernel(&sq.left), &y)?;
    if !cat.is_iso(&out) {
        return Err(ChaseError::InternalInvariantViolation("Coker(left) → Img S is not an isomorphism".into()));
    }
    Ok(out)
}

/// `Ker S → Ker(right)` for a square whose left side is N-mono and whose
/// top is a cokernel; an isomorphism in that situation.
pub fn ker_to_ker_right<C: Category + ?Sized>(cat: &C, sq: &Square<C::Mor>) -> Result<C::Mor> {
    let ker = ker_data(cat, sq)?;
    let y1 = cat.factor_through_cokernel(&cat.coimage(&sq.top), &sq.top)?;
    let y2 = cat.factor_through_cokernel(&cat.coimage(&sq.left), &sq.top)?;
    let j = cat.pushout_factor(&ker.t, &ker.r, &y1, &y2)?;
    let x = cat.compose(&j, &ker.ker)?;
    let out = cat.factor_through_kernel(&cat.kernel(&sq.right), &x)?;
    if !cat.is_iso(&out) {
        return Err(ChaseError::InternalInvariantViolation("Ker S → Ker(right) is not an isomorphism".into()));
    }
    Ok(out)
}
