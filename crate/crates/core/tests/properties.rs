mod common;

use common::*;
use lambek_core::fgab::{homology_group_formula, lambek_group_formula};
use lambek_core::homology::{composition_sequence, homology_pair};
use lambek_core::lambek::{lambek_invariants, lambek_morphism};
use lambek_core::nomura::{nomura_first, nomura_first_exactness, nomura_second_exactness};
use lambek_core::{Category, CategoryExt, Fgab, LambekSide, PSetCategory};
use proptest::prelude::*;

fn pair(t: &mut Tape) -> (lambek_core::GroupMap, lambek_core::GroupMap) {
    let cat = Fgab::new();
    let (x, y, w) = (random_group(t), random_group(t), random_group(t));
    let f = random_hom(t, &x, &y);
    let g0 = random_hom(t, &y, &w);
    let g = cat.compose(&cat.cokernel(&cat.compose(&g0, &f).unwrap()), &g0).unwrap();
    (f, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_and_cokernel_legs_annihilate(seed in any::<u64>()) {
        let cat = Fgab::new();
        let mut t = Tape::new(seed);
        let (x, y) = (random_group(&mut t), random_group(&mut t));
        let f = random_hom(&mut t, &x, &y);
        let k = cat.kernel(&f);
        let q = cat.cokernel(&f);
        prop_assert!(cat.is_null(&cat.compose(&f, &k).unwrap()));
        prop_assert!(cat.is_null(&cat.compose(&q, &f).unwrap()));
        prop_assert!(cat.is_n_mono(&k));
        prop_assert!(cat.is_n_epi(&q));
        // a map through the kernel factors back uniquely
        let w = random_group(&mut t);
        let u = random_hom(&mut t, &w, &cat.dom(&k));
        let x1 = cat.compose(&k, &u).unwrap();
        let u1 = cat.factor_through_kernel(&k, &x1).unwrap();
        prop_assert!(cat.mor_eq(&u, &u1));
    }

    #[test]
    fn homology_matches_subquotient(seed in any::<u64>()) {
        let cat = Fgab::new();
        let (f, g) = pair(&mut Tape::new(seed));
        let h = homology_pair(&cat, &f, &g).unwrap();
        prop_assert!(cat.is_iso(&h.m));
        prop_assert_eq!(cat.invariant(&h.h_minus), homology_group_formula(&f, &g));
        prop_assert_eq!(cat.invariant(&h.h_plus), homology_group_formula(&f, &g));
    }

    #[test]
    fn composition_lemma_holds(seed in any::<u64>()) {
        let cat = Fgab::new();
        let mut t = Tape::new(seed);
        let (x, y, w) = (random_group(&mut t), random_group(&mut t), random_group(&mut t));
        let f = random_hom(&mut t, &x, &y);
        let g = random_hom(&mut t, &y, &w);
        let v = composition_sequence(&cat, &f, &g).unwrap().verdict(&cat).unwrap();
        prop_assert!(v.all_hold(), "{}", v);
    }

    #[test]
    fn lambek_invariants_match_formulas(seed in any::<u64>()) {
        let cat = Fgab::new();
        let d = random_diagram(&mut Tape::new(seed), false);
        for side in [LambekSide::Img, LambekSide::Ker] {
            let (obj, _) = lambek_invariants(&cat, &d.s(), side).unwrap();
            prop_assert_eq!(cat.invariant(&obj), lambek_group_formula(&d.s(), side));
        }
    }

    #[test]
    fn lambek_is_iso_for_exact_rows(seed in any::<u64>()) {
        let cat = Fgab::new();
        let d = random_diagram(&mut Tape::new(seed), true);
        let l = lambek_morphism(&cat, &d).unwrap();
        prop_assert!(l.defining_identity_holds(&cat).unwrap());
        prop_assert!(cat.is_iso(&l.lambda));
    }

    #[test]
    fn nomura_sequences_are_exact_for_groups(seed in any::<u64>()) {
        let cat = Fgab::new();
        let d = random_diagram(&mut Tape::new(seed), seed % 3 == 0);
        let v1 = nomura_first_exactness(&cat, &d).unwrap();
        prop_assert!(v1.all_hold() && v1.clauses.iter().all(|c| c.applicable()), "{}", v1);
        let v2 = nomura_second_exactness(&cat, &d).unwrap();
        prop_assert!(v2.all_hold() && v2.clauses.iter().all(|c| c.applicable()), "{}", v2);
        let n = nomura_first(&cat, &d).unwrap();
        let direct = lambek_morphism(&cat, &d).unwrap();
        prop_assert!(cat.mor_eq(n.lambda(), &direct.lambda));
    }

    #[test]
    fn pset_first_sequence_is_null(seed in any::<u64>()) {
        let cat = PSetCategory::new();
        let mut t = Tape::new(seed);
        if let Some(d) = random_pset_diagram(&mut t, 5) {
            if cat.is_exact_morphism(&d.b).unwrap() {
                let v = nomura_first_exactness(&cat, &d).unwrap();
                prop_assert!(v.all_hold(), "{}", v);
            }
        }
    }
}
