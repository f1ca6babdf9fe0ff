#![allow(dead_code)]

use lambek_core::{
    Category, CategoryExt, Fgab, Group, GroupMap, PSetCategory, PSetMorphism, PSetObject, TwoSquareDiagram,
};

pub fn z() -> Group {
    Group::free(1)
}

pub fn zn(n: i64) -> Group {
    Group::cyclic(n)
}

pub fn map(dom: &Group, cod: &Group, rows: &[&[i64]]) -> GroupMap {
    GroupMap::from_i64(dom, cod, rows).expect("well-defined map")
}

pub fn ps(n: usize) -> PSetObject {
    PSetObject::new(n).unwrap()
}

pub fn pmap(dom: usize, cod: usize, table: &[usize]) -> PSetMorphism {
    PSetMorphism::new(ps(dom), ps(cod), table.to_vec()).unwrap()
}

pub fn inv(cat: &Fgab, x: &Group) -> String {
    cat.invariant(x).to_string()
}

/// `A=0 → B=Z → C=Z` with `f=0, g=id`, `A'=Z → B'=Z → C'=Z/2` with
/// `f'=×2, g'=proj`, and verticals `a=0, b=id, c=proj`.
pub fn d2(cat: &Fgab) -> TwoSquareDiagram<GroupMap> {
    let (o, z, z2) = (Group::zero(), z(), zn(2));
    TwoSquareDiagram::new(
        cat,
        map(&o, &z, &[&[]]),
        map(&z, &z, &[&[1]]),
        map(&z, &z, &[&[2]]),
        map(&z, &z2, &[&[1]]),
        map(&o, &z, &[&[]]),
        map(&z, &z, &[&[1]]),
        map(&z, &z2, &[&[1]]),
    )
    .unwrap()
}

/// Deterministic source of small integers.
pub struct Tape {
    state: u64,
}

impl Tape {
    pub fn new(seed: u64) -> Self {
        Tape { state: seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ 0xD1B5_4A32_D192_ED03 }
    }

    pub fn next(&mut self) -> u64 {
        // splitmix64
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + (self.next() % (hi - lo + 1) as u64) as i64
    }

    pub fn coeffs(&mut self, n: usize) -> Vec<i64> {
        (0..n).map(|_| self.range(-3, 3)).collect()
    }
}

/// Direct sum of up to two cyclic groups (order 0 meaning `Z`).
pub fn random_group(t: &mut Tape) -> Group {
    let cat = Fgab::new();
    let k = t.range(0, 2);
    let mut g = Group::zero();
    for _ in 0..k {
        let n = [0, 0, 2, 3, 4, 6][t.range(0, 5) as usize];
        g = cat.biproduct(&g, &Group::cyclic(n)).object;
    }
    g
}

pub fn random_hom(t: &mut Tape, dom: &Group, cod: &Group) -> GroupMap {
    let coeffs = t.coeffs(8);
    Fgab::new().hom_combination(dom, cod, &coeffs)
}

/// A two-square diagram with null rows: `A` is a pullback so that `S`
/// commutes, the rows are made null by quotienting, and `C'` is a pushout
/// so that `T` commutes. With `exact_rows`, `g = coker f`, `g' = coker f'`.
pub fn random_diagram(t: &mut Tape, exact_rows: bool) -> TwoSquareDiagram<GroupMap> {
    let cat = Fgab::new();
    let (a0, a1, b0, b1) = (random_group(t), random_group(t), random_group(t), random_group(t));
    let a_0 = random_hom(t, &a0, &a1);
    let fp = random_hom(t, &a1, &b1);
    let b = random_hom(t, &b0, &b1);
    let (p1, p2) = cat.pullback(&cat.compose(&fp, &a_0).unwrap(), &b).unwrap();
    let f = p2;
    let a = cat.compose(&a_0, &p1).unwrap();
    if exact_rows {
        let g = cat.cokernel(&f);
        let gp = cat.cokernel(&fp);
        let sq = lambek_core::Square { top: f.clone(), left: a.clone(), right: b.clone(), bottom: fp.clone() };
        let c = cat.induced_cokernel_morphism(&sq).unwrap();
        return TwoSquareDiagram::new(&cat, f, g, fp, gp, a, b, c).unwrap();
    }
    let (c0, c1) = (random_group(t), random_group(t));
    let g0 = random_hom(t, &b0, &c0);
    let g = cat.compose(&cat.cokernel(&cat.compose(&g0, &f).unwrap()), &g0).unwrap();
    let gp0 = random_hom(t, &b1, &c1);
    let gp1 = cat.compose(&cat.cokernel(&cat.compose(&gp0, &fp).unwrap()), &gp0).unwrap();
    let (q1, q2) = cat.pushout(&g, &cat.compose(&gp1, &b).unwrap()).unwrap();
    let gp = cat.compose(&q2, &gp1).unwrap();
    TwoSquareDiagram::new(&cat, f, g, fp, gp, a, b, q1).unwrap()
}

/// Random pointed-set two-square diagram with sizes in `1..=max`, built
/// so that squares commute and rows are null; `None` on a conflict.
pub fn random_pset_diagram(t: &mut Tape, max: usize) -> Option<TwoSquareDiagram<PSetMorphism>> {
    let cat = PSetCategory::new();
    let mut size = || t.range(1, max as i64) as usize;
    let (na, nb, nc, nap, nbp, ncp) = (size(), size(), size(), size(), size(), size());
    let mut rand_table = |n: usize, m: usize| -> Vec<usize> {
        (0..n).map(|i| if i == 0 { 0 } else { t.range(0, m as i64 - 1) as usize }).collect()
    };
    let f = rand_table(na, nb);
    let a = rand_table(na, nap);
    let fp = rand_table(nap, nbp);
    // b f = f' a on the image of f; free elsewhere
    let mut b: Vec<Option<usize>> = vec![None; nb];
    b[0] = Some(0);
    for x in 0..na {
        let want = fp[a[x]];
        match b[f[x]] {
            Some(v) if v != want => return None,
            _ => b[f[x]] = Some(want),
        }
    }
    let free_b = rand_table(nb, nbp);
    let b: Vec<usize> = b.iter().zip(free_b).map(|(v, r)| v.unwrap_or(r)).collect();
    let mut g = rand_table(nb, nc);
    for x in 0..na {
        g[f[x]] = 0;
    }
    let mut gp = rand_table(nbp, ncp);
    for x in 0..nap {
        gp[fp[x]] = 0;
    }
    let mut c: Vec<Option<usize>> = vec![None; nc];
    c[0] = Some(0);
    for y in 0..nb {
        let want = gp[b[y]];
        match c[g[y]] {
            Some(v) if v != want => return None,
            _ => c[g[y]] = Some(want),
        }
    }
    let free_c = rand_table(nc, ncp);
    let c: Vec<usize> = c.iter().zip(free_c).map(|(v, r)| v.unwrap_or(r)).collect();
    let m = |d: usize, cd: usize, t: Vec<usize>| PSetMorphism::new(ps(d), ps(cd), t).unwrap();
    TwoSquareDiagram::new(
        &cat,
        m(na, nb, f),
        m(nb, nc, g),
        m(nap, nbp, fp),
        m(nbp, ncp, gp),
        m(na, nap, a),
        m(nb, nbp, b),
        m(nc, ncp, c),
    )
    .ok()
}
