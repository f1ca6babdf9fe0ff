//! The two long sequences attached to a pair of adjacent squares, their
//! exactness statements, the short exact corollary, exactness of the
//! induced kernel and cokernel rows, and the five-column homology
//! isomorphism.
//!
//! First sequence:
//! `Ĥ -α-> Ker h -β-> Img S -Λ-> Ker T -β'-> Coker h -α'-> Ȟ`,
//! where `h: H(f, g) → H(f', g')`, `Ĥ = H(Ker bf → Ker b → Ker c)` and
//! `Ȟ = H(Coker a → Coker b → Coker g'b)`.
//!
//! Second sequence:
//! `Ker S -p₁-> H(Ker a → Ker b → Ker c) -κ-> Ker h -β-> Img S -Λ-> Ker T
//!  -β'-> Coker h -κ'-> H(Coker a → Coker b → Coker c) -p₁'-> Img T`.

use crate::category::{Category, CategoryExt, FiveColumnDiagram, Square, TwoSquareDiagram};
use crate::error::{ChaseError, Hypothesis, Result};
use crate::homology::{b_hat, composition_sequence, homology_pair, induced_homology_from, HomologyData};
use crate::lambek::{
    check_rows, coker_left_to_img, img_data, internal, ker_data, ker_to_ker_right, lambek_morphism, transpose_img_iso,
    transpose_ker_iso, vertical_lambek, LambekData,
};
use crate::verdict::{Clause, Verdict};

fn lift<C: Category + ?Sized>(cat: &C, k: &C::Mor, x: &C::Mor, what: &'static str) -> Result<C::Mor> {
    cat.factor_through_kernel(k, x).map_err(internal(what))
}

fn desc<C: Category + ?Sized>(cat: &C, q: &C::Mor, y: &C::Mor, what: &'static str) -> Result<C::Mor> {
    cat.factor_through_cokernel(q, y).map_err(internal(what))
}

fn inv<C: Category + ?Sized>(cat: &C, f: &C::Mor, what: &'static str) -> Result<C::Mor> {
    if !cat.is_iso(f) {
        return Err(ChaseError::InternalInvariantViolation(format!("{what} is not an isomorphism")));
    }
    cat.inverse(f).map_err(internal(what))
}

fn comp<C: Category + ?Sized>(cat: &C, ms: &[&C::Mor], what: &'static str) -> Result<C::Mor> {
    cat.chain(ms).map_err(internal(what))
}

fn null_sequence<C: Category + ?Sized>(cat: &C, arrows: &[&C::Mor]) -> Result<bool> {
    let mut null = true;
    for w in arrows.windows(2) {
        null &= cat.is_null(&cat.compose(w[1], w[0])?);
    }
    Ok(null)
}

/// All morphisms and objects of the first sequence, together with the
/// auxiliary maps used to build them.
#[derive(Clone, Debug)]
pub struct NomuraFirst<M, O> {
    pub top: HomologyData<M, O>,
    pub bottom: HomologyData<M, O>,
    /// `h: H(f, g) → H(f', g')`
    pub h: M,
    pub lambek: LambekData<M, O>,
    /// `b̌: Coker f → Coker f'`
    pub b_check: M,
    /// `b̂: Ker g → Ker g'`
    pub b_hat: M,
    /// `ξ: Ker b → Ker b̌`
    pub xi: M,
    /// `η: Ker b̌ → Ker c`
    pub eta: M,
    /// `k: Ker bf → Ker b`
    pub k: M,
    /// `μ: Ker ξ → Ker ηξ`
    pub mu: M,
    /// `v: Ker ηξ → Ker η`
    pub v: M,
    /// `θ: Ker h → Ker η`
    pub theta: M,
    /// `Γ: Img S → Coker ξ`
    pub gamma: M,
    /// `η': Coker a → Coker b̂`
    pub eta_prime: M,
    /// `ξ': Coker b̂ → Coker b`
    pub xi_prime: M,
    /// `k': Coker b → Coker g'b`
    pub k_prime: M,
    /// `θ': Coker η' → Coker h`
    pub theta_prime: M,
    /// `Γ': Ker T → Ker ξ'`
    pub gamma_prime: M,
    pub hat: HomologyData<M, O>,
    pub check: HomologyData<M, O>,
    pub alpha: M,
    pub beta: M,
    pub beta_prime: M,
    pub alpha_prime: M,
    pub ker_h: O,
    pub coker_h: O,
    /// `Λ` agrees with its factorization through `Ker S₁` for
    /// `S₁ = (coker f, b, b̌, coker f')`.
    pub natural: bool,
}

pub type NomuraFirstOf<C> = NomuraFirst<<C as Category>::Mor, <C as Category>::Obj>;

impl<M, O> NomuraFirst<M, O> {
    /// `[α, β, Λ, β', α']`
    pub fn arrows(&self) -> [&M; 5] {
        [&self.alpha, &self.beta, &self.lambek.lambda, &self.beta_prime, &self.alpha_prime]
    }

    pub fn lambda(&self) -> &M {
        &self.lambek.lambda
    }
}

/// Builds the first sequence. Fails with `HypothesisViolated([BExact])`
/// when `b` is not exact.
pub fn nomura_first<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<NomuraFirstOf<C>> {
    check_rows(cat, d)?;
    let lambek = lambek_morphism(cat, d)?;
    let top = homology_pair(cat, &d.f, &d.g)?;
    let bottom = homology_pair(cat, &d.fp, &d.gp)?;
    let h = induced_homology_from(cat, d, &top, &bottom)?;
    let ker_h = cat.kernel(&h);
    let coker_h = cat.cokernel(&h);

    // Kernel side.
    let b_check = cat.induced_cokernel_morphism(&d.s())?;
    let ker_b = cat.kernel(&d.b);
    let ker_bc = cat.kernel(&b_check);
    let ker_c = cat.kernel(&d.c);
    let xi = lift(cat, &ker_bc, &cat.compose(&top.coker_f, &ker_b)?, "ξ")?;
    let eta = lift(cat, &ker_c, &cat.compose(&top.tau, &ker_bc)?, "η")?;
    let ker_eta = cat.kernel(&eta);
    let j = cat.compose(&top.ker_tau, &top.m)?;
    let theta1 = lift(cat, &ker_bc, &cat.compose(&j, &ker_h)?, "θ into Ker b̌")?;
    let theta = lift(cat, &ker_eta, &theta1, "θ")?;
    let theta_inv = inv(cat, &theta, "θ")?;

    let ker_bf = cat.kernel(&cat.compose(&d.b, &d.f)?);
    let k = lift(cat, &ker_b, &cat.compose(&d.f, &ker_bf)?, "k")?;
    let seq = composition_sequence(cat, &xi, &eta)?;
    let eta_xi = cat.compose(&eta, &xi)?;
    let hat = homology_pair(cat, &k, &eta_xi)?;
    let alpha_raw = desc(cat, &hat.coker_sigma, &seq.psi, "α")?;
    let alpha = cat.compose(&theta_inv, &alpha_raw)?;

    let s1 = Square::new(cat, top.coker_f.clone(), d.b.clone(), b_check.clone(), bottom.coker_f.clone())?;
    let s2 = Square::new(cat, xi.clone(), ker_b.clone(), ker_bc.clone(), top.coker_f.clone())?;
    let d_ss1 = TwoSquareDiagram {
        f: d.f.clone(),
        g: top.coker_f.clone(),
        fp: d.fp.clone(),
        gp: bottom.coker_f.clone(),
        a: d.a.clone(),
        b: d.b.clone(),
        c: b_check.clone(),
    };
    let lam_ss1 = lambek_morphism(cat, &d_ss1)?;
    let t_s1 = transpose_ker_iso(cat, &s1)?;
    let lam_v = lambek_morphism(cat, &TwoSquareDiagram::from_vertical(&s2, &s1))?;
    let lam_v_inv = inv(cat, &lam_v.lambda, "Img S₂ᵀ → Ker S₁ᵀ")?;
    let c2 = coker_left_to_img(cat, &s2.transpose())?;
    let c2_inv = inv(cat, &c2, "Coker ξ → Img S₂ᵀ")?;
    let gamma = comp(cat, &[&c2_inv, &lam_v_inv, &t_s1, &lam_ss1.lambda], "Γ")?;
    let gamma_inv = inv(cat, &gamma, "Γ")?;
    let beta_raw = cat.compose(&cat.cokernel(&xi), &ker_eta)?;
    let beta = comp(cat, &[&gamma_inv, &beta_raw, &theta], "β")?;

    let natural = {
        let ks1 = ker_data(cat, &s1)?;
        let kt = &lambek.ker_t;
        let nu0 = desc(cat, &cat.coimage(&top.coker_f), &cat.coimage(&d.g), "Coim(coker f) → Coim g")?;
        let zeta = cat.pushout_factor(&ks1.t, &ks1.r, &cat.compose(&kt.t, &nu0)?, &kt.r)?;
        let zeta_hat = lift(cat, &kt.ker, &cat.compose(&zeta, &ks1.ker)?, "Ker S₁ → Ker T")?;
        cat.mor_eq(&lambek.lambda, &cat.compose(&zeta_hat, &lam_ss1.lambda)?)
    };

    // Cokernel side.
    let b_hat = b_hat(cat, d)?;
    let coker_a = cat.cokernel(&d.a);
    let coker_bh = cat.cokernel(&b_hat);
    let coker_b = cat.cokernel(&d.b);
    let eta_prime = desc(cat, &coker_a, &cat.compose(&coker_bh, &bottom.sigma)?, "η'")?;
    let xi_prime = desc(cat, &coker_bh, &cat.compose(&coker_b, &bottom.ker_g)?, "ξ'")?;
    let coker_eta_p = cat.cokernel(&eta_prime);
    let theta1_p = desc(cat, &coker_bh, &cat.compose(&coker_h, &bottom.coker_sigma)?, "θ' from Coker b̂")?;
    let theta_prime = desc(cat, &coker_eta_p, &theta1_p, "θ'")?;
    let theta_p_inv = inv(cat, &theta_prime, "θ'")?;

    let coker_gb = cat.cokernel(&cat.compose(&d.gp, &d.b)?);
    let k_prime = desc(cat, &coker_b, &cat.compose(&coker_gb, &d.gp)?, "k'")?;
    let xe = cat.compose(&xi_prime, &eta_prime)?;
    let check = homology_pair(cat, &xe, &k_prime)?;
    let seq_p = composition_sequence(cat, &eta_prime, &xi_prime)?;
    let alpha_p_raw = lift(cat, &check.ker_tau, &seq_p.eps, "α'")?;
    let m_check_inv = inv(cat, &check.m, "m(Ȟ)")?;
    let alpha_prime = comp(cat, &[&m_check_inv, &alpha_p_raw, &theta_p_inv], "α'")?;

    let t1 = Square::new(cat, top.ker_g.clone(), b_hat.clone(), d.b.clone(), bottom.ker_g.clone())?;
    let t2 = Square::new(cat, bottom.ker_g.clone(), coker_bh.clone(), coker_b.clone(), xi_prime.clone())?;
    let d_t1t = TwoSquareDiagram {
        f: top.ker_g.clone(),
        g: d.g.clone(),
        fp: bottom.ker_g.clone(),
        gp: d.gp.clone(),
        a: b_hat.clone(),
        b: d.b.clone(),
        c: d.c.clone(),
    };
    let lam_t1t = lambek_morphism(cat, &d_t1t)?;
    let lam_t1t_inv = inv(cat, &lam_t1t.lambda, "Img T₁ → Ker T")?;
    let ti = transpose_img_iso(cat, &t1)?;
    let lam_v2 = lambek_morphism(cat, &TwoSquareDiagram::from_vertical(&t1, &t2))?;
    let c2p = ker_to_ker_right(cat, &t2.transpose())?;
    let gamma_prime = comp(cat, &[&c2p, &lam_v2.lambda, &ti, &lam_t1t_inv], "Γ'")?;
    let beta_p_raw = cat.compose(&coker_eta_p, &cat.kernel(&xi_prime))?;
    let beta_prime = comp(cat, &[&theta_prime, &beta_p_raw, &gamma_prime], "β'")?;

    Ok(NomuraFirst {
        ker_h: cat.dom(&ker_h),
        coker_h: cat.cod(&coker_h),
        top,
        bottom,
        h,
        lambek,
        b_check,
        b_hat,
        xi,
        eta,
        k,
        mu: seq.phi,
        v: seq.psi,
        theta,
        gamma,
        eta_prime,
        xi_prime,
        k_prime,
        theta_prime,
        gamma_prime,
        hat,
        check,
        alpha,
        beta,
        beta_prime,
        alpha_prime,
        natural,
    })
}

/// Exactness flags of a diagram that the sequence theorems refer to.
#[derive(Clone, Copy, Debug)]
struct Flags {
    f: bool,
    g: bool,
    fp: bool,
    gp: bool,
    coker_f_ker_b: bool,
    coker_b_ker_gp: bool,
}

fn flags<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<Flags> {
    let coker_f_ker_b = cat.compose(&cat.cokernel(&d.f), &cat.kernel(&d.b))?;
    let coker_b_ker_gp = cat.compose(&cat.cokernel(&d.b), &cat.kernel(&d.gp))?;
    Ok(Flags {
        f: cat.is_exact_morphism(&d.f)?,
        g: cat.is_exact_morphism(&d.g)?,
        fp: cat.is_exact_morphism(&d.fp)?,
        gp: cat.is_exact_morphism(&d.gp)?,
        coker_f_ker_b: cat.is_exact_morphism(&coker_f_ker_b)?,
        coker_b_ker_gp: cat.is_exact_morphism(&coker_b_ker_gp)?,
    })
}

fn push_middle_clauses<C: Category + ?Sized>(
    cat: &C,
    v: &mut Verdict,
    fl: Flags,
    n: &NomuraFirstOf<C>,
) -> Result<()> {
    let lam = n.lambda();
    let eta_exact = cat.is_exact_morphism(&n.eta)?;
    let eta_p_exact = cat.is_exact_morphism(&n.eta_prime)?;
    let lam_exact = cat.is_exact_morphism(lam)?;
    v.push(
        Clause::new("exact at Img S")
            .given("g exact", fl.g)
            .given("eta exact", eta_exact)
            .concludes(cat.exact_at(&n.beta, lam)),
    );
    v.push(
        Clause::new("Lambda exact")
            .given("g exact", fl.g)
            .given("eta exact", eta_exact)
            .concludes(lam_exact),
    );
    v.push(
        Clause::new("exact at Ker T")
            .given("f' exact", fl.fp)
            .given("eta' exact", eta_p_exact)
            .concludes(cat.exact_at(lam, &n.beta_prime)),
    );
    v.push(
        Clause::new("Lambda exact (dual)")
            .given("f' exact", fl.fp)
            .given("eta' exact", eta_p_exact)
            .concludes(lam_exact),
    );
    Ok(())
}

/// Exactness of the first sequence under the hypotheses of each clause.
pub fn nomura_first_exactness<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<Verdict> {
    nomura_first_verdict(cat, d, &nomura_first(cat, d)?)
}

/// [`nomura_first_exactness`] for a sequence already built from `d`.
pub fn nomura_first_verdict<C: Category + ?Sized>(
    cat: &C,
    d: &TwoSquareDiagram<C::Mor>,
    n: &NomuraFirstOf<C>,
) -> Result<Verdict> {
    let fl = flags(cat, d)?;
    let mut v = Verdict::default();
    v.push(Clause::new("null sequence").concludes(null_sequence(cat, &n.arrows())?));
    v.push(Clause::new("Lambda natural").concludes(n.natural));
    v.push(Clause::new("alpha N-mono").given("f exact", fl.f).concludes(cat.is_n_mono(&n.alpha)));
    v.push(
        Clause::new("alpha = ker beta")
            .given("f exact", fl.f)
            .given("(coker f)(ker b) exact", fl.coker_f_ker_b)
            .concludes(cat.is_kernel_of(&n.alpha, &n.beta)),
    );
    v.push(
        Clause::new("exact at Ker h")
            .given("f exact", fl.f)
            .given("(coker f)(ker b) exact", fl.coker_f_ker_b)
            .concludes(cat.exact_at(&n.alpha, &n.beta)),
    );
    push_middle_clauses(cat, &mut v, fl, n)?;
    v.push(Clause::new("alpha' N-epi").given("g' exact", fl.gp).concludes(cat.is_n_epi(&n.alpha_prime)));
    v.push(
        Clause::new("alpha' = coker beta'")
            .given("g' exact", fl.gp)
            .given("(coker b)(ker g') exact", fl.coker_b_ker_gp)
            .concludes(cat.is_cokernel_of(&n.alpha_prime, &n.beta_prime)),
    );
    v.push(
        Clause::new("exact at Coker h")
            .given("g' exact", fl.gp)
            .given("(coker b)(ker g') exact", fl.coker_b_ker_gp)
            .concludes(cat.exact_at(&n.beta_prime, &n.alpha_prime)),
    );
    Ok(v)
}

/// `0 → Ker h → Img S → Ker T` when the bottom row is exact and `b` is a
/// kernel, and `Img S → Ker T → Coker h → 0` when the top row is exact and
/// `b` is a cokernel. At least one case must apply.
pub fn short_exact_corollary<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<Verdict> {
    check_rows(cat, d)?;
    let b_exact = cat.is_exact_morphism(&d.b)?;
    let bottom_exact = cat.exact_at(&d.fp, &d.gp);
    let top_exact = cat.exact_at(&d.f, &d.g);
    let b_kernel = cat.is_kernel(&d.b)?;
    let b_cokernel = cat.is_cokernel(&d.b)?;
    let first = bottom_exact && b_kernel;
    let second = top_exact && b_cokernel;
    if !b_exact || !(first || second) {
        let mut missing = Vec::new();
        if !bottom_exact {
            missing.push(Hypothesis::BottomRowExact);
        }
        if !b_kernel {
            missing.push(Hypothesis::BKernel);
        }
        if !top_exact {
            missing.push(Hypothesis::TopRowExact);
        }
        if !b_cokernel {
            missing.push(Hypothesis::BCokernel);
        }
        if !b_exact {
            missing.push(Hypothesis::BExact);
        }
        return Err(ChaseError::HypothesisViolated(missing));
    }
    let n = nomura_first(cat, d)?;
    let lam = n.lambda();
    let mut v = Verdict::default();
    v.push(
        Clause::new("beta = ker Lambda")
            .given("bottom row exact", bottom_exact)
            .given("b is a kernel", b_kernel)
            .concludes(cat.is_kernel_of(&n.beta, lam)),
    );
    v.push(
        Clause::new("Lambda = coker beta")
            .given("bottom row exact", bottom_exact)
            .given("b is a kernel", b_kernel)
            .concludes(cat.is_cokernel_of(lam, &n.beta)),
    );
    v.push(
        Clause::new("Lambda = ker beta'")
            .given("top row exact", top_exact)
            .given("b is a cokernel", b_cokernel)
            .concludes(cat.is_kernel_of(lam, &n.beta_prime)),
    );
    v.push(
        Clause::new("beta' = coker Lambda")
            .given("top row exact", top_exact)
            .given("b is a cokernel", b_cokernel)
            .concludes(cat.is_cokernel_of(&n.beta_prime, lam)),
    );
    Ok(v)
}

/// Which object ends the second sequence on each side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Endpoint {
    /// `Ker S` on the left, `Img T` on the right.
    Lambek,
    /// `Img S₀` on the left for `S₀ = (f̂, ker a, ker b, f)`, and `Ker T₀`
    /// on the right for `T₀ = (g', coker b, coker c, ǧ')`. Used when `f`
    /// (respectively `g'`) is not exact.
    Fallback,
}

#[derive(Clone, Debug)]
pub struct NomuraSecond<M, O> {
    pub first: NomuraFirst<M, O>,
    /// `f̂: Ker a → Ker b`
    pub f_hat: M,
    /// `ĝ = ηξ: Ker b → Ker c`
    pub g_hat: M,
    /// `f̌' = ξ'η': Coker a → Coker b`
    pub f_check: M,
    /// `ǧ': Coker b → Coker c`
    pub g_check: M,
    /// Homology of the kernel row.
    pub ker_row: HomologyData<M, O>,
    /// Homology of the cokernel row.
    pub coker_row: HomologyData<M, O>,
    /// `λ: Ker a → Ker ξ`
    pub lambda_small: M,
    /// `w: Ker ξ → Img f`
    pub w: M,
    /// `z: Img f → Ker g`
    pub z: M,
    /// `p: Coker λ → H(kernel row)`
    pub p: M,
    /// `q: H(kernel row) → Coker μ`
    pub q: M,
    pub kappa: M,
    pub kappa_prime: M,
    pub left: Endpoint,
    pub right: Endpoint,
    pub left_object: O,
    pub right_object: O,
    pub p1: M,
    pub p1_prime: M,
}

pub type NomuraSecondOf<C> = NomuraSecond<<C as Category>::Mor, <C as Category>::Obj>;

impl<M, O> NomuraSecond<M, O> {
    /// `[p₁, κ, β, Λ, β', κ', p₁']`
    pub fn arrows(&self) -> [&M; 7] {
        [
            &self.p1,
            &self.kappa,
            &self.first.beta,
            &self.first.lambek.lambda,
            &self.first.beta_prime,
            &self.kappa_prime,
            &self.p1_prime,
        ]
    }
}

pub fn nomura_second<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<NomuraSecondOf<C>> {
    let first = nomura_first(cat, d)?;
    let f_exact = cat.is_exact_morphism(&d.f)?;
    let gp_exact = cat.is_exact_morphism(&d.gp)?;
    let theta_inv = inv(cat, &first.theta, "θ")?;
    let theta_p_inv = inv(cat, &first.theta_prime, "θ'")?;

    // Kernel row.
    let ker_a = cat.kernel(&d.a);
    let ker_b = cat.kernel(&d.b);
    let ker_xi = cat.kernel(&first.xi);
    let f_hat = cat.induced_kernel_morphism(&d.s().transpose())?;
    let g_hat = cat.compose(&first.eta, &first.xi)?;
    let lambda_small = lift(cat, &ker_xi, &f_hat, "λ")?;
    let ker_row = homology_pair(cat, &f_hat, &g_hat)?;
    let mu_lambda = cat.compose(&first.mu, &lambda_small)?;
    if !cat.mor_eq(&ker_row.sigma, &mu_lambda) {
        return Err(ChaseError::InternalInvariantViolation("σ of the kernel row is not μλ".into()));
    }
    let im_f = cat.image(&d.f);
    let w = lift(cat, &im_f, &cat.compose(&ker_b, &ker_xi)?, "w")?;
    let z = lift(cat, &first.top.ker_g, &im_f, "z")?;
    let seq = composition_sequence(cat, &lambda_small, &first.mu)?;
    let (p, q) = (seq.eps, seq.omega);
    let v_prime = desc(cat, &cat.cokernel(&first.mu), &first.v, "v'")?;
    let kappa = comp(cat, &[&theta_inv, &v_prime, &q], "κ")?;

    let s0 = Square::new(cat, f_hat.clone(), ker_a.clone(), ker_b.clone(), d.f.clone())?;
    let img_s0 = img_data(cat, &s0)?;
    let x = cat.compose(&ker_b, &ker_xi)?;
    let x1 = lift(cat, &cat.image(&ker_b), &x, "Ker ξ → Im(ker b)")?;
    let x2 = lift(cat, &im_f, &x, "Ker ξ → Im f")?;
    let j = cat.pullback_factor(&img_s0.l, &img_s0.s, &x1, &x2)?;
    let c0 = desc(cat, &cat.cokernel(&lambda_small), &cat.compose(&img_s0.coker, &j)?, "Coker λ → Img S₀")?;
    let c0_inv = inv(cat, &c0, "Coker λ → Img S₀")?;
    let p0 = cat.compose(&p, &c0_inv)?;
    let (left, left_object, p1) = if f_exact {
        let lv = vertical_lambek(cat, &s0, &d.s())?;
        let lv_inv = inv(cat, &lv, "Img S₀ → Ker S")?;
        (Endpoint::Lambek, cat.dom(&lv_inv), cat.compose(&p0, &lv_inv)?)
    } else {
        (Endpoint::Fallback, img_s0.object.clone(), p0)
    };

    // Cokernel row.
    let coker_b = cat.cokernel(&d.b);
    let coker_c = cat.cokernel(&d.c);
    let f_check = cat.compose(&first.xi_prime, &first.eta_prime)?;
    let g_check = cat.induced_cokernel_morphism(&d.t().transpose())?;
    let coker_xi_p = cat.cokernel(&first.xi_prime);
    let lambda_p = desc(cat, &coker_xi_p, &g_check, "λ'")?;
    let coker_row = homology_pair(cat, &f_check, &g_check)?;
    let seq_p = composition_sequence(cat, &first.eta_prime, &first.xi_prime)?;
    let mu_p = seq_p.omega;
    if !cat.mor_eq(&coker_row.tau, &cat.compose(&lambda_p, &mu_p)?) {
        return Err(ChaseError::InternalInvariantViolation("τ of the cokernel row is not λ'μ'".into()));
    }
    let seq2 = composition_sequence(cat, &mu_p, &lambda_p)?;
    let (q_p, p_p) = (seq2.phi, seq2.psi);
    let v_dual = lift(cat, &cat.kernel(&mu_p), &seq_p.eps, "v' dual")?;
    let m_inv = inv(cat, &coker_row.m, "m(cokernel row)")?;
    let kappa_prime = comp(cat, &[&m_inv, &q_p, &v_dual, &theta_p_inv], "κ'")?;

    let t0 = Square::new(cat, d.gp.clone(), coker_b.clone(), coker_c.clone(), g_check.clone())?;
    let ker_t0 = ker_data(cat, &t0)?;
    let y = cat.compose(&coker_xi_p, &coker_b)?;
    let y1 = desc(cat, &cat.coimage(&d.gp), &y, "Coim g' → Coker ξ'")?;
    let y2 = desc(cat, &cat.coimage(&coker_b), &y, "Coim(coker b) → Coker ξ'")?;
    let jp = cat.pushout_factor(&ker_t0.t, &ker_t0.r, &y1, &y2)?;
    let c0p = lift(cat, &cat.kernel(&lambda_p), &cat.compose(&jp, &ker_t0.ker)?, "Ker T₀ → Ker λ'")?;
    let c0p_inv = inv(cat, &c0p, "Ker T₀ → Ker λ'")?;
    let p0p = comp(cat, &[&c0p_inv, &p_p, &coker_row.m], "p₀'")?;
    let (right, right_object, p1_prime) = if gp_exact {
        let lv = vertical_lambek(cat, &d.t(), &t0)?;
        let lv_inv = inv(cat, &lv, "Img T → Ker T₀")?;
        (Endpoint::Lambek, cat.cod(&lv_inv), cat.compose(&lv_inv, &p0p)?)
    } else {
        (Endpoint::Fallback, ker_t0.object.clone(), p0p)
    };

    Ok(NomuraSecond {
        first,
        f_hat,
        g_hat,
        f_check,
        g_check,
        ker_row,
        coker_row,
        lambda_small,
        w,
        z,
        p,
        q,
        kappa,
        kappa_prime,
        left,
        right,
        left_object,
        right_object,
        p1,
        p1_prime,
    })
}

/// Exactness of the second sequence under the hypotheses of each clause.
pub fn nomura_second_exactness<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<Verdict> {
    nomura_second_verdict(cat, d, &nomura_second(cat, d)?)
}

/// [`nomura_second_exactness`] for a sequence already built from `d`.
pub fn nomura_second_verdict<C: Category + ?Sized>(
    cat: &C,
    d: &TwoSquareDiagram<C::Mor>,
    n: &NomuraSecondOf<C>,
) -> Result<Verdict> {
    let fl = flags(cat, d)?;
    let both = [("f exact", fl.f), ("g' exact", fl.gp)];
    let with_both = |name: &str| both.iter().fold(Clause::new(name), |c, (h, b)| c.given(*h, *b));
    let mut v = Verdict::default();
    v.push(Clause::new("null sequence").concludes(null_sequence(cat, &n.arrows())?));
    v.push(with_both("p1 = ker kappa").concludes(cat.is_kernel_of(&n.p1, &n.kappa)));
    v.push(with_both("p1' = coker kappa'").concludes(cat.is_cokernel_of(&n.p1_prime, &n.kappa_prime)));
    v.push(
        with_both("exact at Ker h")
            .given("(coker f)(ker b) exact", fl.coker_f_ker_b)
            .concludes(cat.exact_at(&n.kappa, &n.first.beta)),
    );
    v.push(
        with_both("kappa exact")
            .given("(coker f)(ker b) exact", fl.coker_f_ker_b)
            .concludes(cat.is_exact_morphism(&n.kappa)?),
    );
    push_middle_clauses(cat, &mut v, fl, &n.first)?;
    v.push(
        with_both("exact at Coker h")
            .given("(coker b)(ker g') exact", fl.coker_b_ker_gp)
            .concludes(cat.exact_at(&n.first.beta_prime, &n.kappa_prime)),
    );
    v.push(
        with_both("kappa' exact")
            .given("(coker b)(ker g') exact", fl.coker_b_ker_gp)
            .concludes(cat.is_exact_morphism(&n.kappa_prime)?),
    );
    Ok(v)
}

/// Exactness of `Ker a → Ker b → Ker c` and of
/// `Coker a → Coker b → Coker c`.
pub fn kernel_row_exactness<C: Category + ?Sized>(cat: &C, d: &TwoSquareDiagram<C::Mor>) -> Result<Verdict> {
    check_rows(cat, d)?;
    let top = homology_pair(cat, &d.f, &d.g)?;
    let bottom = homology_pair(cat, &d.fp, &d.gp)?;
    let h = induced_homology_from(cat, d, &top, &bottom)?;
    let f_hat = cat.induced_kernel_morphism(&d.s().transpose())?;
    let g_hat = cat.induced_kernel_morphism(&d.t().transpose())?;
    let f_check = cat.induced_cokernel_morphism(&d.s().transpose())?;
    let g_check = cat.induced_cokernel_morphism(&d.t().transpose())?;
    let mut v = Verdict::default();
    v.push(
        Clause::new("kernel row exact")
            .given("f exact", cat.is_exact_morphism(&d.f)?)
            .given("f' N-mono", cat.is_n_mono(&d.fp))
            .given("h N-mono", cat.is_n_mono(&h))
            .concludes(cat.exact_at(&f_hat, &g_hat)),
    );
    v.push(
        Clause::new("cokernel row exact")
            .given("g' exact", cat.is_exact_morphism(&d.gp)?)
            .given("g N-epi", cat.is_n_epi(&d.g))
            .given("h N-epi", cat.is_n_epi(&h))
            .concludes(cat.exact_at(&f_check, &g_check)),
    );
    Ok(v)
}

/// Result of the five-column comparison.
#[derive(Clone, Debug)]
pub struct FiveLemma<M, O> {
    /// `H(Ker c → Ker d → Ker e)`
    pub ker_homology: O,
    /// `H(Coker a → Coker b → Coker c)`
    pub coker_homology: O,
    /// The assembled map between them.
    pub iso: M,
    pub verdict: Verdict,
}

pub type FiveLemmaOf<C> = FiveLemma<<C as Category>::Mor, <C as Category>::Obj>;

/// Both homology objects, without checking any hypothesis.
pub fn five_lemma_homologies<C: Category + ?Sized>(
    cat: &C,
    d: &FiveColumnDiagram<C::Mor>,
) -> Result<(C::Obj, C::Obj)> {
    let (h_hat, k_hat) = (
        cat.induced_kernel_morphism(&d.square(2).transpose())?,
        cat.induced_kernel_morphism(&d.square(3).transpose())?,
    );
    let (f_check, g_check) = (
        cat.induced_cokernel_morphism(&d.square(0).transpose())?,
        cat.induced_cokernel_morphism(&d.square(1).transpose())?,
    );
    let ker = homology_pair(cat, &h_hat, &k_hat)?.h_minus;
    let coker = homology_pair(cat, &f_check, &g_check)?.h_minus;
    Ok((ker, coker))
}

/// `H(Ker c → Ker d → Ker e) ≅ H(Coker a → Coker b → Coker c)` when the top
/// row is exact at `C` and `D`, the bottom row at `B'` and `C'`, and `h`,
/// `c`, `g'` are exact.
pub fn five_lemma<C: Category + ?Sized>(cat: &C, d: &FiveColumnDiagram<C::Mor>) -> Result<FiveLemmaOf<C>> {
    let [_, g, h, k] = &d.top;
    let [fp, gp, hp, _] = &d.bottom;
    let [a, b, c, dd, e] = &d.verticals;
    let checks = [
        ("top row exact at C", cat.exact_at(g, h)),
        ("top row exact at D", cat.exact_at(h, k)),
        ("bottom row exact at B'", cat.exact_at(fp, gp)),
        ("bottom row exact at C'", cat.exact_at(gp, hp)),
        ("h exact", cat.is_exact_morphism(h)?),
        ("c exact", cat.is_exact_morphism(c)?),
        ("g' exact", cat.is_exact_morphism(gp)?),
    ];
    let missing: Vec<Hypothesis> = checks.iter().filter(|(_, ok)| !ok).map(|(n, _)| Hypothesis::Custom(n)).collect();
    if !missing.is_empty() {
        return Err(ChaseError::HypothesisViolated(missing));
    }

    let (ker_c, ker_d, ker_e) = (cat.kernel(c), cat.kernel(dd), cat.kernel(e));
    let (coker_a, coker_b, coker_c) = (cat.cokernel(a), cat.cokernel(b), cat.cokernel(c));
    let h_hat = cat.induced_kernel_morphism(&d.square(2).transpose())?;
    let k_hat = cat.induced_kernel_morphism(&d.square(3).transpose())?;
    let f_check = cat.induced_cokernel_morphism(&d.square(0).transpose())?;
    let g_check = cat.induced_cokernel_morphism(&d.square(1).transpose())?;

    let s1 = Square::new(cat, h_hat.clone(), ker_c.clone(), ker_d.clone(), h.clone())?;
    let s3 = d.square(1);
    let s4 = d.square(2);
    let s6 = Square::new(cat, gp.clone(), coker_b.clone(), coker_c.clone(), g_check.clone())?;

    let upper = TwoSquareDiagram::new(cat, h_hat, k_hat, h.clone(), k.clone(), ker_c, ker_d, ker_e)?;
    let n1 = nomura_first(cat, &upper)?;
    let ker_leg_inv = inv(cat, &cat.kernel(&n1.h), "Ker h → H(kernel row)")?;
    let to_img_s1 = cat.compose(&n1.beta, &ker_leg_inv)?;

    let lv1 = vertical_lambek(cat, &s1, &s4)?;
    let middle = TwoSquareDiagram::new(cat, g.clone(), h.clone(), gp.clone(), hp.clone(), b.clone(), c.clone(), dd.clone())?;
    let l34 = lambek_morphism(cat, &middle)?;
    let l34_inv = inv(cat, &l34.lambda, "Img S_III → Ker S_IV")?;
    let lv2 = vertical_lambek(cat, &s3, &s6)?;

    let lower = TwoSquareDiagram::new(cat, fp.clone(), gp.clone(), f_check, g_check, coker_a, coker_b, coker_c)?;
    let n2 = nomura_first(cat, &lower)?;
    let coker_leg_inv = inv(cat, &cat.cokernel(&n2.h), "H(cokernel row) → Coker h")?;
    let from_ker_s6 = cat.compose(&coker_leg_inv, &n2.beta_prime)?;

    let iso = comp(cat, &[&from_ker_s6, &lv2, &l34_inv, &lv1, &to_img_s1], "five-column comparison")?;
    let ker_homology = n1.top.h_minus.clone();
    let coker_homology = n2.bottom.h_minus.clone();
    let mut verdict = Verdict::default();
    let same = cat.invariant(&ker_homology) == cat.invariant(&coker_homology);
    verdict.push(Clause::new("homologies have equal invariants").concludes(same));
    verdict.push(Clause::new("comparison is an isomorphism").concludes(cat.is_iso(&iso)));
    Ok(FiveLemma { ker_homology, coker_homology, iso, verdict })
}
