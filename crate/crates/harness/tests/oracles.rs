use lambek_chase::diagram::{Backend, Diagram, Payload, Shape};
use lambek_chase::generate::{generate, rng_for, Constraints};
use lambek_chase::oracle::{
    composition_closed, fgab_universal, library_data, pset_universal, UniversalData, UniversalKind,
};
use lambek_core::{Category, CategoryExt, Fgab, Group, GroupMap, IntMatrix, PSetCategory, PSetMorphism, PSetObject};
use proptest::prelude::*;

fn pset(dom: usize, cod: usize, table: &[usize]) -> PSetMorphism {
    PSetMorphism::new(PSetObject::new(dom).unwrap(), PSetObject::new(cod).unwrap(), table.to_vec()).unwrap()
}

fn z() -> Group {
    Group::free(1)
}

fn times(n: i64, dom: &Group, cod: &Group) -> GroupMap {
    GroupMap::new(dom.clone(), cod.clone(), IntMatrix::from_i64_rows(&[&[n]])).unwrap()
}

#[test]
fn library_kernels_and_cokernels_of_all_small_maps() {
    let cat = PSetCategory::new();
    let mut checked = 0;
    for x in 1..=4 {
        for y in 1..=4 {
            let (x, y) = (PSetObject::new(x).unwrap(), PSetObject::new(y).unwrap());
            for f in cat.morphisms(x, y).unwrap() {
                for kind in [UniversalKind::Kernel, UniversalKind::Cokernel] {
                    let data = library_data(&cat, kind, &f, None).unwrap();
                    assert!(pset_universal(&cat, &data).unwrap(), "{kind:?} of {f:?}");
                }
                checked += 1;
            }
        }
    }
    // |Hom(X, Y)| = |Y|^(|X| - 1)
    assert_eq!(checked, 4 + 10 + 30 + 100);
}

#[test]
fn corrupted_pset_kernel_legs_are_rejected() {
    let cat = PSetCategory::new();
    let f = pset(3, 2, &[0, 0, 1]);
    let good = UniversalData::Kernel { f: f.clone(), leg: pset(2, 3, &[0, 1]) };
    assert!(pset_universal(&cat, &good).unwrap());
    // Not a cone: f ∘ leg is not null.
    let not_cone = UniversalData::Kernel { f: f.clone(), leg: pset(2, 3, &[0, 2]) };
    assert!(!pset_universal(&cat, &not_cone).unwrap());
    // Too small: the cone through element 1 does not factor.
    let too_small = UniversalData::Kernel { f: f.clone(), leg: pset(1, 3, &[0]) };
    assert!(!pset_universal(&cat, &too_small).unwrap());
    // Not monic: factorizations are not unique.
    let not_monic = UniversalData::Kernel { f, leg: pset(3, 3, &[0, 1, 1]) };
    assert!(!pset_universal(&cat, &not_monic).unwrap());
}

#[test]
fn corrupted_pset_cokernel_is_rejected() {
    let cat = PSetCategory::new();
    let f = pset(2, 3, &[0, 1]);
    assert!(pset_universal(&cat, &UniversalData::Cokernel { f: f.clone(), leg: pset(3, 2, &[0, 0, 1]) }).unwrap());
    assert!(!pset_universal(&cat, &UniversalData::Cokernel { f: f.clone(), leg: pset(3, 3, &[0, 1, 2]) }).unwrap());
    assert!(!pset_universal(&cat, &UniversalData::Cokernel { f, leg: pset(3, 1, &[0, 0, 0]) }).unwrap());
}

#[test]
fn identity_is_a_kernel_of_a_null_map() {
    let cat = PSetCategory::new();
    let x = PSetObject::new(3).unwrap();
    let null = cat.null_morphism(&x, &PSetObject::new(2).unwrap());
    assert!(pset_universal(&cat, &UniversalData::Kernel { f: null, leg: cat.identity(&x) }).unwrap());

    let cat = Fgab::new();
    let g = Group::new(2, &IntMatrix::from_i64_rows(&[&[3], &[0]])).unwrap();
    let null = cat.null_morphism(&g, &z());
    let data = UniversalData::Kernel { f: null, leg: cat.identity(&g) };
    assert!(fgab_universal(&cat, &data, &mut rng_for(0)).unwrap());
}

#[test]
fn corrupted_abelian_kernel_legs_are_rejected() {
    let cat = Fgab::new();
    let z2 = Group::cyclic(2);
    let proj = times(1, &z(), &z2);
    let mut rng = rng_for(3);
    let good = UniversalData::Kernel { f: proj.clone(), leg: times(2, &z(), &z()) };
    assert!(fgab_universal(&cat, &good, &mut rng).unwrap());
    let too_small = UniversalData::Kernel { f: proj.clone(), leg: times(4, &z(), &z()) };
    assert!(!fgab_universal(&cat, &too_small, &mut rng).unwrap());
    let not_cone = UniversalData::Kernel { f: proj, leg: times(3, &z(), &z()) };
    assert!(!fgab_universal(&cat, &not_cone, &mut rng).unwrap());
    let null = cat.null_morphism(&z(), &z());
    let sum = GroupMap::new(Group::free(2), z(), IntMatrix::from_i64_rows(&[&[1, 1]])).unwrap();
    let not_monic = UniversalData::Kernel { f: null, leg: sum };
    assert!(!fgab_universal(&cat, &not_monic, &mut rng).unwrap());
}

#[test]
fn corrupted_abelian_cokernel_legs_are_rejected() {
    let cat = Fgab::new();
    let doubling = times(2, &z(), &z());
    let mut rng = rng_for(4);
    let good = UniversalData::Cokernel { f: doubling.clone(), leg: times(1, &z(), &Group::cyclic(2)) };
    assert!(fgab_universal(&cat, &good, &mut rng).unwrap());
    let too_coarse = UniversalData::Cokernel { f: doubling.clone(), leg: cat.null_morphism(&z(), &Group::zero()) };
    assert!(!fgab_universal(&cat, &too_coarse, &mut rng).unwrap());
    let not_cocone = UniversalData::Cokernel { f: doubling, leg: times(1, &z(), &Group::cyclic(3)) };
    assert!(!fgab_universal(&cat, &not_cocone, &mut rng).unwrap());
}

#[test]
fn kernels_compose_to_kernels() {
    let cat = PSetCategory::new();
    let k1 = pset(2, 3, &[0, 2]);
    let k2 = pset(3, 4, &[0, 1, 3]);
    assert!(composition_closed(&cat, &k1, &k2).unwrap());
    assert!(cat.is_kernel(&cat.compose(&k2, &k1).unwrap()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn library_constructions_pass_the_oracles(seed in any::<u64>(), pset_backend in any::<bool>()) {
        let backend = if pset_backend { Backend::Pset } else { Backend::Fgab };
        let d = generate(backend, Shape::Square, seed, &Constraints::new()).unwrap();
        let mut rng = rng_for(seed);
        let kinds = [UniversalKind::Kernel, UniversalKind::Cokernel, UniversalKind::Pullback, UniversalKind::Pushout];
        match d {
            Diagram::Pset(Payload::Square(sq)) => {
                let cat = PSetCategory::new();
                for kind in kinds {
                    let (f, g) = match kind {
                        UniversalKind::Pullback => (&sq.right, Some(&sq.bottom)),
                        UniversalKind::Pushout => (&sq.top, Some(&sq.left)),
                        _ => (&sq.right, None),
                    };
                    prop_assert!(pset_universal(&cat, &library_data(&cat, kind, f, g).unwrap()).unwrap());
                }
            }
            Diagram::Fgab(Payload::Square(sq)) => {
                let cat = Fgab::new();
                for kind in kinds {
                    let (f, g) = match kind {
                        UniversalKind::Pullback => (&sq.right, Some(&sq.bottom)),
                        UniversalKind::Pushout => (&sq.top, Some(&sq.left)),
                        _ => (&sq.right, None),
                    };
                    prop_assert!(fgab_universal(&cat, &library_data(&cat, kind, f, g).unwrap(), &mut rng).unwrap());
                }
            }
            _ => unreachable!(),
        }
    }
}
