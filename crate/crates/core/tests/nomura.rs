mod common;

use common::*;
use lambek_core::nomura::{
    five_lemma, kernel_row_exactness, nomura_first, nomura_first_exactness, nomura_second, nomura_second_exactness,
    short_exact_corollary, Endpoint,
};
use lambek_core::{Category, CategoryExt, ChaseError, Fgab, FiveColumnDiagram, Hypothesis, PSetCategory, TwoSquareDiagram};

#[test]
fn d2_first_sequence() {
    let cat = Fgab::new();
    let d = d2(&cat);
    let n = nomura_first(&cat, &d).unwrap();
    assert_eq!(inv(&cat, &n.hat.h_minus), "rank 0, torsion []");
    assert_eq!(inv(&cat, &n.ker_h), "rank 0, torsion []");
    assert_eq!(inv(&cat, &n.lambek.img_s.object), "rank 1, torsion []");
    assert_eq!(inv(&cat, &n.lambek.ker_t.object), "rank 1, torsion []");
    assert!(cat.is_iso(n.lambda()));
    let v = nomura_first_exactness(&cat, &d).unwrap();
    assert!(v.all_hold(), "{v}");
    assert!(v.clauses.iter().all(|c| c.applicable()), "{v}");
}

#[test]
fn d2_short_exact() {
    let cat = Fgab::new();
    let v = short_exact_corollary(&cat, &d2(&cat)).unwrap();
    assert!(v.all_hold(), "{v}");
    let n = nomura_first(&cat, &d2(&cat)).unwrap();
    assert!(cat.is_null(&n.beta));
}

#[test]
fn short_exact_refuses_when_no_case_applies() {
    let cat = Fgab::new();
    let z = z();
    let zero = map(&z, &z, &[&[0]]);
    let id = map(&z, &z, &[&[1]]);
    // rows 0 → Z → Z not exact at the middle, b = 0 neither a kernel nor a cokernel
    let d = TwoSquareDiagram::new(&cat, zero.clone(), zero.clone(), zero.clone(), zero.clone(), id, zero.clone(), zero)
        .unwrap();
    match short_exact_corollary(&cat, &d) {
        Err(ChaseError::HypothesisViolated(hs)) => {
            assert!(hs.contains(&Hypothesis::BKernel));
            assert!(hs.contains(&Hypothesis::BCokernel));
        }
        other => panic!("expected refusal, got {other:?}"),
    }
}

#[test]
fn d2_second_sequence() {
    let cat = Fgab::new();
    let d = d2(&cat);
    let n = nomura_second(&cat, &d).unwrap();
    assert_eq!(n.left, Endpoint::Lambek);
    assert_eq!(n.right, Endpoint::Lambek);
    assert_eq!(inv(&cat, &n.left_object), "rank 0, torsion []");
    assert_eq!(inv(&cat, &n.ker_row.h_minus), "rank 0, torsion []");
    let v = nomura_second_exactness(&cat, &d).unwrap();
    assert!(v.all_hold(), "{v}");
}

#[test]
fn identity_diagram_is_degenerate() {
    let cat = Fgab::new();
    let z = z();
    let z2 = zn(2);
    let f = map(&z, &z, &[&[2]]);
    let g = map(&z, &z2, &[&[1]]);
    let d = TwoSquareDiagram::new(
        &cat,
        f.clone(),
        g.clone(),
        f,
        g,
        cat.identity(&z),
        cat.identity(&z),
        cat.identity(&z2),
    )
    .unwrap();
    let n = nomura_second(&cat, &d).unwrap();
    for arrow in n.arrows() {
        assert!(cat.is_null_object(&cat.dom(arrow)));
    }
    assert!(nomura_second_exactness(&cat, &d).unwrap().all_hold());
}

#[test]
fn random_abelian_diagrams_satisfy_both_sequences() {
    let cat = Fgab::new();
    let mut t = Tape::new(7);
    for i in 0..40 {
        let d = random_diagram(&mut t, i % 2 == 0);
        let v1 = nomura_first_exactness(&cat, &d).unwrap();
        assert!(v1.all_hold(), "trial {i}\n{v1}");
        // every morphism is exact, so every clause applies
        assert!(v1.clauses.iter().all(|c| c.applicable()), "trial {i}\n{v1}");
        let v2 = nomura_second_exactness(&cat, &d).unwrap();
        assert!(v2.all_hold(), "trial {i}\n{v2}");
        assert!(kernel_row_exactness(&cat, &d).unwrap().all_hold());
    }
}

#[test]
fn random_pset_diagrams_have_null_first_sequence() {
    let cat = PSetCategory::new();
    let mut t = Tape::new(11);
    let mut built = 0;
    while built < 200 {
        let Some(d) = random_pset_diagram(&mut t, 4) else { continue };
        match nomura_first_exactness(&cat, &d) {
            Ok(v) => {
                assert!(v.all_hold(), "{d:?}\n{v}");
                built += 1;
            }
            Err(ChaseError::HypothesisViolated(hs)) => assert_eq!(hs, vec![Hypothesis::BExact]),
            Err(e) => panic!("{d:?}: {e}"),
        }
    }
}

#[test]
fn five_lemma_with_doubling_in_the_middle() {
    let cat = Fgab::new();
    let (o, z, z2) = (lambek_core::Group::zero(), z(), zn(2));
    // 0 → Z -×2-> Z → Z/2 → 0 over itself, c = ×2
    let row = || {
        [
            map(&o, &z, &[&[]]),
            map(&z, &z, &[&[2]]),
            map(&z, &z2, &[&[1]]),
            map(&z2, &o, &[]),
        ]
    };
    let verticals = [
        cat.identity(&o),
        map(&z, &z, &[&[2]]),
        map(&z, &z, &[&[2]]),
        map(&z2, &z2, &[&[0]]),
        cat.identity(&o),
    ];
    let d5 = FiveColumnDiagram::new(&cat, row(), row(), verticals).unwrap();
    let r = five_lemma(&cat, &d5).unwrap();
    assert!(r.verdict.all_hold(), "{}", r.verdict);
    assert_eq!(inv(&cat, &r.ker_homology), "rank 0, torsion [2]");
    assert_eq!(inv(&cat, &r.coker_homology), "rank 0, torsion [2]");
    assert!(cat.is_iso(&r.iso));
}

#[test]
fn five_lemma_with_identity_verticals() {
    let cat = Fgab::new();
    let (o, z, z2) = (lambek_core::Group::zero(), z(), zn(2));
    let row = [map(&o, &z, &[&[]]), map(&z, &z, &[&[2]]), map(&z, &z2, &[&[1]]), map(&z2, &o, &[])];
    let verticals = [cat.identity(&o), cat.identity(&z), cat.identity(&z), cat.identity(&z2), cat.identity(&o)];
    let d5 = FiveColumnDiagram::new(&cat, row.clone(), row, verticals).unwrap();
    let r = five_lemma(&cat, &d5).unwrap();
    assert!(cat.is_null_object(&r.ker_homology));
    assert!(cat.is_null_object(&r.coker_homology));
}

#[test]
fn five_lemma_names_failing_hypotheses() {
    let cat = Fgab::new();
    let (o, z) = (lambek_core::Group::zero(), z());
    let row = [cat.identity(&o), map(&o, &z, &[&[]]), map(&z, &o, &[]), cat.identity(&o)];
    let oid = cat.identity(&o);
    let verticals = [oid.clone(), oid.clone(), map(&z, &z, &[&[2]]), oid.clone(), oid];
    let d5 = FiveColumnDiagram::new(&cat, row.clone(), row, verticals).unwrap();
    match five_lemma(&cat, &d5) {
        Err(ChaseError::HypothesisViolated(hs)) => {
            assert_eq!(hs, vec![Hypothesis::Custom("top row exact at C"), Hypothesis::Custom("bottom row exact at C'")])
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn random_pset_diagrams_second_sequence() {
    let cat = PSetCategory::new();
    let mut t = Tape::new(23);
    let (mut built, mut fallback) = (0, 0);
    while built < 300 {
        let Some(d) = random_pset_diagram(&mut t, 4) else { continue };
        let row = kernel_row_exactness(&cat, &d).unwrap();
        assert!(row.all_hold(), "{d:?}\n{row}");
        match nomura_second_exactness(&cat, &d) {
            Ok(v) => {
                assert!(v.all_hold(), "{d:?}\n{v}");
                let n = nomura_second(&cat, &d).unwrap();
                if n.left == Endpoint::Fallback || n.right == Endpoint::Fallback {
                    fallback += 1;
                }
                built += 1;
            }
            Err(ChaseError::HypothesisViolated(hs)) => assert_eq!(hs, vec![Hypothesis::BExact]),
            Err(e) => panic!("{d:?}: {e}"),
        }
    }
    assert!(fallback > 0);
}
