//! Homology of null pairs, the comparison `m(f, g)`, exactness at a node,
//! and the six-term sequence attached to a composite.

use crate::category::{Category, CategoryExt, Square, TwoSquareDiagram};
use crate::error::{ChaseError, Result};
use crate::verdict::{Clause, Verdict};

/// Left and right homology of a null pair `X -f-> Y -g-> Z`.
///
/// `σ: X → Ker g` with `(ker g) σ = f`, `H₋ = Coker σ`;
/// `τ: Coker f → Z` with `τ (coker f) = g`, `H₊ = Ker τ`;
/// `m: H₋ → H₊` with `(ker τ) m (coker σ) = (coker f)(ker g)`.
#[derive(Clone, Debug)]
pub struct HomologyData<M, O> {
    pub sigma: M,
    pub tau: M,
    pub h_minus: O,
    pub h_plus: O,
    pub m: M,
    pub coker_sigma: M,
    pub ker_tau: M,
    pub ker_g: M,
    pub coker_f: M,
}

pub type HomologyOf<C> = HomologyData<<C as Category>::Mor, <C as Category>::Obj>;

fn check_null_pair<C: Category + ?Sized>(cat: &C, f: &C::Mor, g: &C::Mor) -> Result<()> {
    let gf = cat.compose(g, f)?;
    if !cat.is_null(&gf) {
        return Err(ChaseError::NotNullComposite);
    }
    Ok(())
}

pub fn homology_pair<C: Category + ?Sized>(cat: &C, f: &C::Mor, g: &C::Mor) -> Result<HomologyOf<C>> {
    check_null_pair(cat, f, g)?;
    let ker_g = cat.kernel(g);
    let coker_f = cat.cokernel(f);
    let sigma = cat.factor_through_kernel(&ker_g, f)?;
    let tau = cat.factor_through_cokernel(&coker_f, g)?;
    let coker_sigma = cat.cokernel(&sigma);
    let ker_tau = cat.kernel(&tau);
    let chi = cat.compose(&coker_f, &ker_g)?;
    let lifted = cat.factor_through_kernel(&ker_tau, &chi)?;
    let m = cat.factor_through_cokernel(&coker_sigma, &lifted)?;
    Ok(HomologyData {
        h_minus: cat.cod(&coker_sigma),
        h_plus: cat.dom(&ker_tau),
        sigma,
        tau,
        m,
        coker_sigma,
        ker_tau,
        ker_g,
        coker_f,
    })
}

/// `H(f, g)`, represented by the left homology.
pub fn homology<C: Category + ?Sized>(cat: &C, f: &C::Mor, g: &C::Mor) -> Result<C::Obj> {
    let data = homology_pair(cat, f, g)?;
    if !cat.is_iso(&data.m) {
        return Err(ChaseError::MNotIso);
    }
    Ok(data.h_minus)
}

/// `im f = ker g` for a null pair.
pub fn exact_at<C: Category + ?Sized>(cat: &C, f: &C::Mor, g: &C::Mor) -> Result<bool> {
    check_null_pair(cat, f, g)?;
    Ok(cat.exact_at(f, g))
}

/// The sequence
/// `Ker f -φ-> Ker(gf) -ψ-> Ker g -χ-> Coker f -ε-> Coker(gf) -ω-> Coker g`.
#[derive(Clone, Debug)]
pub struct CompositionLemmaSeq<M, O> {
    pub phi: M,
    pub psi: M,
    pub chi: M,
    pub eps: M,
    pub omega: M,
    pub ker_f: O,
    pub ker_gf: O,
    pub ker_g: O,
    pub coker_f: O,
    pub coker_gf: O,
    pub coker_g: O,
    pub f_exact: bool,
    pub g_exact: bool,
}

pub fn composition_sequence<C: Category + ?Sized>(
    cat: &C,
    f: &C::Mor,
    g: &C::Mor,
) -> Result<CompositionLemmaSeq<C::Mor, C::Obj>> {
    let gf = cat.compose(g, f)?;
    let (kf, kgf, kg) = (cat.kernel(f), cat.kernel(&gf), cat.kernel(g));
    let (qf, qgf, qg) = (cat.cokernel(f), cat.cokernel(&gf), cat.cokernel(g));
    let phi = cat.factor_through_kernel(&kgf, &kf)?;
    let psi = cat.factor_through_kernel(&kg, &cat.compose(f, &kgf)?)?;
    let chi = cat.compose(&qf, &kg)?;
    let eps = cat.factor_through_cokernel(&qf, &cat.compose(&qgf, g)?)?;
    let omega = cat.factor_through_cokernel(&qgf, &qg)?;
    Ok(CompositionLemmaSeq {
        ker_f: cat.dom(&kf),
        ker_gf: cat.dom(&kgf),
        ker_g: cat.dom(&kg),
        coker_f: cat.cod(&qf),
        coker_gf: cat.cod(&qgf),
        coker_g: cat.cod(&qg),
        f_exact: cat.is_exact_morphism(f)?,
        g_exact: cat.is_exact_morphism(g)?,
        phi,
        psi,
        chi,
        eps,
        omega,
    })
}

impl<M, O> CompositionLemmaSeq<M, O> {
    /// Nullness and the exactness statements, each as a clause.
    pub fn verdict<C: Category<Mor = M, Obj = O> + ?Sized>(&self, cat: &C) -> Result<Verdict> {
        let mut v = Verdict::default();
        let arrows = [&self.phi, &self.psi, &self.chi, &self.eps, &self.omega];
        let mut null = true;
        for w in arrows.windows(2) {
            null &= cat.is_null(&cat.compose(w[1], w[0])?);
        }
        v.push(Clause::new("null sequence").concludes(null));
        v.push(Clause::new("exact at Ker f").concludes(cat.is_n_mono(&self.phi)));
        v.push(Clause::new("exact at Ker(gf)").concludes(cat.exact_at(&self.phi, &self.psi)));
        v.push(Clause::new("exact at Coker(gf)").concludes(cat.exact_at(&self.eps, &self.omega)));
        v.push(Clause::new("exact at Coker g").concludes(cat.is_n_epi(&self.omega)));
        v.push(Clause::new("phi exact").concludes(cat.is_exact_morphism(&self.phi)?));
        v.push(Clause::new("omega exact").concludes(cat.is_exact_morphism(&self.omega)?));
        v.push(
            Clause::new("exact at Ker g")
                .given("f exact", self.f_exact)
                .concludes(cat.exact_at(&self.psi, &self.chi)),
        );
        v.push(
            Clause::new("psi exact")
                .given("f exact", self.f_exact)
                .concludes(cat.is_exact_morphism(&self.psi)?),
        );
        v.push(
            Clause::new("exact at Coker f")
                .given("g exact", self.g_exact)
                .concludes(cat.exact_at(&self.chi, &self.eps)),
        );
        v.push(
            Clause::new("eps exact")
                .given("g exact", self.g_exact)
                .concludes(cat.is_exact_morphism(&self.eps)?),
        );
        Ok(v)
    }
}

/// `h: H(f, g) → H(f', g')` induced by the verticals, as the morphism of
/// cokernels of the rows of the square `(σ, a, b̂, σ')`, where
/// `b̂: Ker g → Ker g'` is induced by `b`.
pub fn induced_homology_morphism<C: Category + ?Sized>(
    cat: &C,
    d: &TwoSquareDiagram<C::Mor>,
) -> Result<C::Mor> {
    let top = homology_pair(cat, &d.f, &d.g)?;
    let bottom = homology_pair(cat, &d.fp, &d.gp)?;
    induced_homology_from(cat, d, &top, &bottom)
}

pub(crate) fn b_hat<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<C::Mor> {
    cat.induced_kernel_morphism(&d.t())
}

pub(crate) fn induced_homology_from<C: Category + ?Sized>(
    cat: &C,
    d: &TwoSquareDiagram<C::Mor>,
    top: &HomologyOf<C>,
    bottom: &HomologyOf<C>,
) -> Result<C::Mor> {
    let b_hat = b_hat(cat, d)?;
    let sq = Square::new(cat, top.sigma.clone(), d.a.clone(), b_hat, bottom.sigma.clone())?;
    cat.induced_cokernel_morphism(&sq)
}
