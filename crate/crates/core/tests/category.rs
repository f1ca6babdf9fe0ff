mod common;

use common::*;
use lambek_core::{Category, CategoryExt, ChaseError, Fgab, Group, Hypothesis, PSetCategory, Square};

#[test]
fn null_morphisms() {
    let cat = Fgab::new();
    let o = Group::zero();
    assert!(cat.is_null(&cat.identity(&o)));
    assert!(!cat.is_null(&map(&z(), &z(), &[&[2]])));
    let (z, z2) = (z(), zn(2));
    let through_zero = cat.compose(&map(&o, &z2, &[&[]]), &map(&z, &o, &[])).unwrap();
    let composite = cat.compose(&map(&z2, &z2, &[&[1]]), &through_zero).unwrap();
    assert!(cat.is_null(&composite));
}

#[test]
fn normal_factorization_of_six() {
    let cat = Fgab::new();
    let z = z();
    let six = map(&z, &z, &[&[6]]);
    let fact = cat.normal_factorization(&six).unwrap();
    assert!(cat.is_iso(&fact.coim));
    assert!(!cat.is_iso(&fact.im));
    assert!(cat.subobject_equal(&fact.im, &six));
    assert!(cat.is_iso(&fact.mid));
    let back = cat.chain(&[&fact.im, &fact.mid, &fact.coim]).unwrap();
    assert!(cat.mor_eq(&back, &six));
}

#[test]
fn normal_factorization_of_a_null_map() {
    let cat = Fgab::new();
    let (z, z3) = (z(), zn(3));
    let zero = map(&z, &z3, &[&[0]]);
    let fact = cat.normal_factorization(&zero).unwrap();
    assert!(cat.is_null_object(&cat.cod(&fact.coim)));
    assert!(cat.is_null_object(&cat.dom(&fact.im)));
    assert!(cat.mor_eq(&cat.kernel(&zero), &cat.identity(&z)));
    assert!(cat.mor_eq(&cat.cokernel(&zero), &cat.identity(&z3)));
}

#[test]
fn mono_and_epi() {
    let cat = Fgab::new();
    let z = z();
    let two = map(&z, &z, &[&[2]]);
    assert!(cat.is_n_mono(&two));
    assert!(!cat.is_n_epi(&two));
    assert!(cat.is_n_epi(&map(&z, &zn(2), &[&[1]])));
    let zero = map(&z, &z, &[&[0]]);
    assert!(!cat.is_n_mono(&zero) && !cat.is_n_epi(&zero));
}

#[test]
fn subobject_comparison() {
    let cat = Fgab::new();
    let z = z();
    let im_two = cat.image(&map(&z, &z, &[&[2]]));
    assert!(cat.subobject_equal(&im_two, &cat.kernel(&map(&z, &zn(2), &[&[1]]))));
    assert!(!cat.subobject_equal(&im_two, &cat.kernel(&map(&z, &zn(4), &[&[1]]))));
    assert!(cat.subobject_equal(&im_two, &im_two));
}

#[test]
fn kernel_and_cokernel_recognition() {
    let cat = Fgab::new();
    let z = z();
    let two = map(&z, &z, &[&[2]]);
    let proj = map(&z, &zn(2), &[&[1]]);
    assert!(cat.is_kernel(&two).unwrap());
    assert!(!cat.is_cokernel(&two).unwrap());
    assert!(cat.is_kernel_of(&two, &proj));
    assert!(cat.is_cokernel_of(&proj, &two));
    assert!(!cat.is_kernel_of(&map(&z, &z, &[&[4]]), &proj));
    let p = PSetCategory::new();
    assert!(p.is_kernel(&pmap(2, 3, &[0, 2])).unwrap());
    assert!(!p.is_cokernel(&pmap(3, 2, &[0, 1, 1])).unwrap());
    assert!(p.is_cokernel(&pmap(3, 2, &[0, 0, 1])).unwrap());
}

#[test]
fn induced_kernel_morphism_restricts() {
    let cat = Fgab::new();
    let (z, z2) = (z(), zn(2));
    let proj = map(&z, &z2, &[&[1]]);
    let two = map(&z, &z, &[&[2]]);
    // square (proj, ×2, ×2, proj): kernels 2Z → 2Z
    let sq = Square::new(&cat, proj.clone(), two.clone(), map(&z2, &z2, &[&[0]]), proj).unwrap();
    let g = cat.induced_kernel_morphism(&sq).unwrap();
    assert_eq!(inv(&cat, &cat.cokernel_object(&g)), "rank 0, torsion [2]");
    let (kt, kb) = (cat.kernel(&sq.top), cat.kernel(&sq.bottom));
    assert!(cat.mor_eq(&cat.compose(&kb, &g).unwrap(), &cat.compose(&two, &kt).unwrap()));
}

#[test]
fn induced_morphism_with_null_left_side() {
    let cat = Fgab::new();
    let (z, z2) = (z(), zn(2));
    let proj = map(&z, &z2, &[&[1]]);
    let zero = map(&z, &z, &[&[0]]);
    let sq = Square::new(&cat, proj.clone(), zero, map(&z2, &z2, &[&[0]]), proj).unwrap();
    let g = cat.induced_kernel_morphism(&sq).unwrap();
    assert!(cat.is_null(&g));
}

#[test]
fn induced_map_of_inclusions_is_the_intersection() {
    let cat = PSetCategory::new();
    // X = {*,1,2} ⊂ Y = {*,1,2,3}; the rows collapse U = {1} and V = {1,3}
    let left = pmap(3, 4, &[0, 1, 2]);
    let top = pmap(3, 2, &[0, 0, 1]);
    let bottom = pmap(4, 2, &[0, 0, 1, 0]);
    let sq = Square::new(&cat, top, left.clone(), cat.identity(&ps(2)), bottom).unwrap();
    let g = cat.induced_kernel_morphism(&sq).unwrap();
    assert!(g.is_injective());
    let (kt, kb) = (cat.kernel(&sq.top), cat.kernel(&sq.bottom));
    let via = cat.compose(&kb, &g).unwrap();
    assert!(cat.mor_eq(&via, &cat.compose(&left, &kt).unwrap()));
    // its image is U = U ∩ V inside Y
    assert_eq!(via.table(), &[0, 1]);
    let (p1, _) = cat.pullback(&left, &kb).unwrap();
    assert_eq!(cat.dom(&p1).size(), 2);
}

#[test]
fn three_by_three_examples() {
    let cat = Fgab::new();
    let z = z();
    let id = cat.identity(&z);
    let isos = cat.three_by_three(&Square::new(&cat, id.clone(), id.clone(), id.clone(), id).unwrap()).unwrap();
    assert!(cat.is_null_object(&cat.dom(&isos.lambda_iso)));
    let (two, three) = (map(&z, &z, &[&[2]]), map(&z, &z, &[&[3]]));
    let isos = cat.three_by_three(&Square::new(&cat, two.clone(), three.clone(), three, two).unwrap()).unwrap();
    assert!(cat.is_iso(&isos.lambda_iso) && cat.is_iso(&isos.mu_iso));
    let p = PSetCategory::new();
    let mut t = Tape::new(5);
    let mut seen = 0;
    while seen < 200 {
        let Some(d) = random_pset_diagram(&mut t, 4) else { continue };
        assert!(p.three_by_three(&d.s()).is_ok(), "{:?}", d.s());
        seen += 1;
    }
}

#[test]
fn pullback_lemma() {
    let cat = Fgab::new();
    let z = z();
    let id = cat.identity(&z);
    assert!(cat.verify_pullback_lemma(&Square::new(&cat, id.clone(), id.clone(), id.clone(), id).unwrap()).unwrap());
    let mut t = Tape::new(9);
    for _ in 0..30 {
        let d = random_diagram(&mut t, false);
        let sq = d.s();
        match cat.verify_pullback_lemma(&sq) {
            Ok(holds) => assert!(holds),
            Err(ChaseError::HypothesisViolated(hs)) => assert_eq!(hs, vec![Hypothesis::RightVerticalNMono]),
            Err(e) => panic!("{e}"),
        }
    }
    let p = PSetCategory::new();
    let inj = pmap(3, 4, &[0, 1, 3]);
    let f = pmap(3, 3, &[0, 0, 2]);
    let bottom = pmap(4, 4, &[0, 0, 2, 3]);
    let sq = Square::new(&p, f, inj.clone(), inj, bottom).unwrap();
    assert!(p.verify_pullback_lemma(&sq).unwrap());
}

#[test]
fn squares_and_diagrams_validate() {
    let cat = Fgab::new();
    let z = z();
    let (one, two) = (map(&z, &z, &[&[1]]), map(&z, &z, &[&[2]]));
    match Square::new(&cat, one.clone(), one.clone(), two.clone(), one.clone()) {
        Err(ChaseError::NotCommutative(_)) => {}
        other => panic!("{other:?}"),
    }
    match lambek_core::TwoSquareDiagram::new(&cat, one.clone(), two.clone(), one.clone(), one.clone(), one.clone(), one.clone(), two) {
        Err(ChaseError::NotCommutative(m)) => assert_eq!(m, "square T does not commute"),
        other => panic!("{other:?}"),
    }
    let c = cat.identity(&z);
    match lambek_core::TwoSquareDiagram::new(&cat, one.clone(), one.clone(), one.clone(), one, c.clone(), c.clone(), c) {
        Err(ChaseError::NotNullRows(_)) => {}
        other => panic!("{other:?}"),
    }
}
