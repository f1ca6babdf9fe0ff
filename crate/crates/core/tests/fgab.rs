mod common;

use common::*;
use lambek_core::fgab::lambek_group_formula;
use lambek_core::lambek::lambek_invariants;
use lambek_core::{Category, CategoryExt, Fgab, Group, GroupMap, IntMatrix, LambekSide, Square};

#[test]
fn kernel_examples() {
    let cat = Fgab::new();
    let z = z();
    assert!(cat.is_null_object(&cat.kernel_object(&map(&z, &z, &[&[2]]))));

    let k = cat.kernel(&map(&z, &zn(4), &[&[1]]));
    assert_eq!(inv(&cat, &cat.dom(&k)), "rank 1, torsion []");
    assert!(cat.subobject_equal(&k, &map(&z, &z, &[&[4]])));

    let zero = map(&z, &zn(3), &[&[0]]);
    let k = cat.kernel(&zero);
    assert_eq!(cat.dom(&k), z);
    assert!(cat.mor_eq(&k, &cat.identity(&z)));
}

#[test]
fn cokernel_examples() {
    let cat = Fgab::new();
    let z = z();
    assert_eq!(inv(&cat, &cat.cokernel_object(&map(&z, &z, &[&[2]]))), "rank 0, torsion [2]");
    let q = cat.cokernel(&map(&z, &z, &[&[0]]));
    assert_eq!(cat.cod(&q), z);
    assert!(cat.mor_eq(&q, &cat.identity(&z)));
    let z2 = Group::free(2);
    let d = map(&z2, &z2, &[&[2, 0], &[0, 3]]);
    assert_eq!(inv(&cat, &cat.cokernel_object(&d)), "rank 0, torsion [6]");
}

#[test]
fn factor_through_kernel_examples() {
    let cat = Fgab::new();
    let z = z();
    let k = cat.kernel(&map(&z, &zn(2), &[&[1]]));
    let x = map(&z, &z, &[&[4]]);
    let u = cat.factor_through_kernel(&k, &x).unwrap();
    assert!(cat.mor_eq(&cat.compose(&k, &u).unwrap(), &x));
    // the kernel is 2Z, so u is multiplication by 2 up to the generator sign
    assert_eq!(inv(&cat, &cat.cokernel_object(&u)), "rank 0, torsion [2]");
    assert!(cat.mor_eq(&cat.factor_through_kernel(&k, &k).unwrap(), &cat.identity(&cat.dom(&k))));
    let null = map(&z, &z, &[&[0]]);
    assert!(cat.is_null(&cat.factor_through_kernel(&k, &null).unwrap()));
    assert!(cat.factor_through_kernel(&k, &map(&z, &z, &[&[3]])).is_err());
}

#[test]
fn factor_through_cokernel_examples() {
    let cat = Fgab::new();
    let z = z();
    let q = cat.cokernel(&map(&z, &z, &[&[2]]));
    let y = map(&z, &zn(4), &[&[2]]);
    let u = cat.factor_through_cokernel(&q, &y).unwrap();
    assert!(cat.mor_eq(&cat.compose(&u, &q).unwrap(), &y));
    assert!(cat.mor_eq(&cat.factor_through_cokernel(&q, &q).unwrap(), &cat.identity(&cat.cod(&q))));
    assert!(cat.factor_through_cokernel(&q, &map(&z, &zn(4), &[&[1]])).is_err());
}

#[test]
fn pullback_examples() {
    let cat = Fgab::new();
    let z = z();
    let (two, three, four) = (map(&z, &z, &[&[2]]), map(&z, &z, &[&[3]]), map(&z, &z, &[&[4]]));
    let (p1, p2) = cat.pullback(&two, &three).unwrap();
    assert_eq!(inv(&cat, &cat.dom(&p1)), "rank 1, torsion []");
    assert!(cat.subobject_equal(&cat.image(&p1), &cat.image(&three)));
    assert!(cat.subobject_equal(&cat.image(&p2), &cat.image(&two)));
    assert!(cat.is_pullback_square(&p1, &p2, &two, &three).unwrap());

    let (_, q2) = cat.pullback(&cat.identity(&z), &three).unwrap();
    assert!(cat.is_iso(&q2));

    let (r1, _) = cat.pullback(&two, &four).unwrap();
    let into = cat.compose(&two, &r1).unwrap();
    assert!(cat.subobject_equal(&cat.image(&into), &four));
}

#[test]
fn pushout_examples() {
    let cat = Fgab::new();
    let z = z();
    let (two, three, four) = (map(&z, &z, &[&[2]]), map(&z, &z, &[&[3]]), map(&z, &z, &[&[4]]));
    let (q1, q2) = cat.pushout(&two, &three).unwrap();
    assert_eq!(inv(&cat, &cat.cod(&q1)), "rank 1, torsion []");
    assert!(cat.is_pushout_square(&q1, &q2, &two, &three).unwrap());
    let (_, r2) = cat.pushout(&cat.identity(&z), &three).unwrap();
    assert!(cat.is_iso(&r2));
    let (s1, _) = cat.pushout(&two, &four).unwrap();
    assert_eq!(inv(&cat, &cat.cod(&s1)), "rank 1, torsion [2]");
}

#[test]
fn iso_examples() {
    let cat = Fgab::new();
    let z = z();
    assert!(cat.is_iso(&cat.identity(&z)));
    assert!(!cat.is_iso(&map(&z, &z, &[&[2]])));
    let z6 = zn(6);
    let five = map(&z6, &z6, &[&[5]]);
    assert!(cat.is_iso(&five));
    let back = cat.inverse(&five).unwrap();
    assert!(cat.mor_eq(&cat.compose(&back, &five).unwrap(), &cat.identity(&z6)));
}

#[test]
fn every_morphism_is_exact() {
    let cat = Fgab::new();
    let mut t = Tape::new(3);
    for _ in 0..100 {
        let (x, y) = (random_group(&mut t), random_group(&mut t));
        let f = random_hom(&mut t, &x, &y);
        assert!(cat.is_exact_morphism(&f).unwrap());
    }
}

#[test]
fn lambek_formula_examples() {
    let cat = Fgab::new();
    let (o, z) = (Group::zero(), z());
    let sq = Square::new(&cat, map(&o, &z, &[&[]]), map(&o, &z, &[&[]]), map(&z, &z, &[&[2]]), map(&z, &z, &[&[3]]))
        .unwrap();
    assert_eq!(lambek_group_formula(&sq, LambekSide::Img).to_string(), "rank 1, torsion []");
    let (img, _) = lambek_invariants(&cat, &sq, LambekSide::Img).unwrap();
    assert_eq!(inv(&cat, &img), "rank 1, torsion []");

    let id = cat.identity(&z);
    let two = map(&z, &z, &[&[2]]);
    let sq = Square::new(&cat, two.clone(), two, id.clone(), id).unwrap();
    assert_eq!(lambek_group_formula(&sq, LambekSide::Img).to_string(), "rank 0, torsion [2]");

    let onto = map(&z, &zn(3), &[&[1]]);
    let sq = Square::new(&cat, onto.clone(), cat.identity(&z), cat.identity(&zn(3)), onto).unwrap();
    assert!(lambek_group_formula(&sq, LambekSide::Img).is_trivial());
}

#[test]
fn hom_generators_are_well_defined() {
    let cat = Fgab::new();
    let z4 = zn(4);
    let z6 = zn(6);
    let gens = cat.hom_generators(&z4, &z6);
    assert!(!gens.is_empty());
    for g in &gens {
        assert!(GroupMap::new(z4.clone(), z6.clone(), g.matrix().clone()).is_ok());
    }
    // Hom(Z/4, Z/6) ≅ Z/2: the nonzero map sends 1 to 3
    let f = cat.hom_combination(&z4, &z6, &[1]);
    assert_eq!(f.matrix(), &IntMatrix::from_i64_rows(&[&[3]]));
}

#[test]
fn ill_defined_maps_are_rejected() {
    assert!(GroupMap::from_i64(&zn(2), &z(), &[&[1]]).is_err());
    assert!(GroupMap::from_i64(&zn(4), &zn(6), &[&[1]]).is_err());
    assert!(GroupMap::from_i64(&z(), &z(), &[&[1, 2]]).is_err());
}
