//! Cross-route oracle checks and property-based invariants that go beyond
//! the per-module unit tests.

use std::sync::Arc;

use proptest::prelude::*;
use rand::{rngs::StdRng, Rng, SeedableRng};

use scatcap_core::cap::{
    cap_from_linear_set, is_cap_generic, is_translation_cap, TranslationCap,
};
use scatcap_core::gf::{Felt, SubfieldEmbedding, TowerParams, ZechField};
use scatcap_core::linset::{
    build_family, enumerate_points, oracle_scattered_pairs, oracle_scattered_qf, plane_subspace,
    FamilyParams, LinPoly, LinearSetSpec, PlaneAmbient,
};
use scatcap_core::Budget;

fn ambient(p: u32, h: u32, n: u32) -> Arc<PlaneAmbient> {
    PlaneAmbient::new(TowerParams::new(p, h, n).unwrap(), &Budget::default()).unwrap()
}

#[test]
fn scatteredness_routes_agree_on_random_maps_q2_n2() {
    let amb = ambient(2, 1, 2);
    let k = amb.k();
    let mut rng = StdRng::seed_from_u64(41);
    for _ in 0..40 {
        let coeffs: Vec<Felt> = (0..6)
            .map(|_| k.decode(rng.gen_range(0..k.order())).unwrap())
            .collect();
        let f = LinPoly::new(k.clone(), 1, coeffs).unwrap();
        let spec = LinearSetSpec::custom(amb.clone(), f).unwrap();
        let by_weights = enumerate_points(&spec).unwrap().is_scattered();
        assert_eq!(by_weights, oracle_scattered_qf(&spec, 1 << 10).unwrap());
        assert_eq!(by_weights, oracle_scattered_pairs(&spec, 1 << 10).unwrap());
    }
}

#[test]
fn scatteredness_routes_agree_q3_n2() {
    // odd characteristic, F_729 ambient
    let amb = ambient(3, 1, 2);
    let k = amb.k();
    let mut rng = StdRng::seed_from_u64(42);
    let mut scattered_seen = 0;
    for _ in 0..6 {
        let coeffs: Vec<Felt> = (0..6)
            .map(|_| k.decode(rng.gen_range(0..k.order())).unwrap())
            .collect();
        let f = LinPoly::new(k.clone(), 1, coeffs).unwrap();
        let spec = LinearSetSpec::custom(amb.clone(), f).unwrap();
        let by_weights = enumerate_points(&spec).unwrap().is_scattered();
        assert_eq!(by_weights, oracle_scattered_qf(&spec, 1 << 10).unwrap());
        assert_eq!(by_weights, oracle_scattered_pairs(&spec, 1 << 10).unwrap());
        if by_weights {
            scattered_seen += 1;
        }
    }
    // also the monomial family over q=3, n=2 (i=3, gcd(3,6)=3, gcd(3,4)=1)
    let a = k
        .elements()
        .skip(1)
        .find(|&a| {
            let nm = k.norm(a, 6, 3).unwrap();
            !k.in_subfield(nm, 1).unwrap()
        })
        .unwrap();
    let spec = build_family(amb.clone(), FamilyParams::Monomial { i: 3, a }).unwrap();
    let ls = enumerate_points(&spec).unwrap();
    assert!(ls.is_scattered());
    assert_eq!(ls.points.len(), 364); // (3^6 - 1)/2
    assert!(oracle_scattered_qf(&spec, 1 << 10).unwrap());
    let _ = scattered_seen;
}

#[test]
fn translation_cap_checks_agree_on_random_subgroups() {
    // 50 random additive subgroups of F_16^3 of size <= 64
    let f = ZechField::new(2, 4, &Budget::default()).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    let mut caps_seen = 0;
    let mut non_caps_seen = 0;
    for _ in 0..50 {
        let rank = rng.gen_range(0..=6u32);
        let mut gens: Vec<Vec<Felt>> = Vec::new();
        let cap = loop {
            while gens.len() < rank as usize {
                let v: Vec<Felt> = (0..3)
                    .map(|_| f.decode(rng.gen_range(0..16)).unwrap())
                    .collect();
                gens.push(v);
            }
            match TranslationCap::from_basis(f.clone(), 3, gens.clone()) {
                Ok(c) => break c,
                Err(_) => gens.clear(), // dependent choice; redraw
            }
        };
        let a = is_translation_cap(&cap).unwrap();
        let b = is_cap_generic(&f, cap.points()).unwrap();
        assert_eq!(a, b, "routes disagree on a subgroup of size {}", cap.size());
        if a {
            caps_seen += 1;
        } else {
            non_caps_seen += 1;
        }
    }
    // the draw must exercise both outcomes
    assert!(caps_seen > 0 && non_caps_seen > 0);
}

#[test]
fn maximal_cap_admits_no_extension() {
    // adding any vector of F_16^3 to the 64-element group breaks the cap
    let amb = ambient(2, 1, 2);
    let k = amb.k();
    let a = k
        .elements()
        .skip(1)
        .find(|&a| {
            let nm = k.norm(a, 6, 3).unwrap();
            !k.in_subfield(nm, 1).unwrap()
        })
        .unwrap();
    let spec = build_family(amb.clone(), FamilyParams::Monomial { i: 3, a }).unwrap();
    let cap = cap_from_linear_set(&plane_subspace(&spec).unwrap()).unwrap();
    assert!(cap.has_maximal_size());
    let f = cap.field().clone();
    let existing: std::collections::HashSet<u64> = cap
        .points()
        .iter()
        .map(|p| scatcap_core::cap::point_index(&f, p))
        .collect();
    let mut tried = 0;
    for idx in 0..4096u64 {
        if existing.contains(&idx) {
            continue;
        }
        let v = scatcap_core::cap::point_from_index(&f, 3, idx).unwrap();
        let mut basis = cap.basis().to_vec();
        basis.push(v);
        let extended = TranslationCap::from_basis(f.clone(), 3, basis).unwrap();
        assert!(
            !is_translation_cap(&extended).unwrap(),
            "group extended by index {idx} stayed a cap"
        );
        tried += 1;
    }
    assert_eq!(tried, 4096 - 64);
}

#[test]
fn seed_cap_products_and_census_cross_check() {
    // the 64-cap in AG(3,16) times the conic gives a 1024-cap in AG(5,16)
    let amb = ambient(2, 1, 2);
    let k = amb.k();
    let a = k
        .elements()
        .skip(1)
        .find(|&a| {
            let nm = k.norm(a, 6, 3).unwrap();
            !k.in_subfield(nm, 1).unwrap()
        })
        .unwrap();
    let spec = build_family(amb.clone(), FamilyParams::Monomial { i: 3, a }).unwrap();
    let cap64 = cap_from_linear_set(&plane_subspace(&spec).unwrap()).unwrap();
    let conic = scatcap_core::cap::conic_cap(cap64.field().clone()).unwrap();
    let prod = scatcap_core::cap::product_cap(&cap64, &conic).unwrap();
    assert_eq!(prod.size(), 1024);
    assert_eq!(prod.r(), 5);
    assert!(prod.has_maximal_size());
    assert!(is_translation_cap(&prod).unwrap());

    // census on the 64-cap alone, cross-checked against an independent
    // point-by-point coverage oracle over all of AG(3,16)
    let f = cap64.field().clone();
    let (complete, uncovered, covered) =
        scatcap_core::cap::is_complete(&f, 3, cap64.points(), 1 << 28).unwrap();
    assert_eq!(covered + uncovered, 4096);
    let pts = cap64.points();
    let mut covered_oracle = 0u64;
    for idx in 0..4096u64 {
        let p = scatcap_core::cap::point_from_index(&f, 3, idx).unwrap();
        // p is covered iff p, A, B are collinear for some distinct A, B in the cap
        let mut hit = false;
        'outer: for (ai, a) in pts.iter().enumerate() {
            let d1: Vec<_> = p.iter().zip(a).map(|(&x, &y)| f.add(x, y)).collect();
            if d1.iter().all(|c| c.is_zero()) {
                // p is a cap point: an endpoint of every secant through it
                hit = true;
                break 'outer;
            }
            for b in pts.iter().skip(ai + 1) {
                let d2: Vec<_> = p.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect();
                if d2.iter().all(|c| c.is_zero()) {
                    continue;
                }
                // proportional differences <=> collinear
                let j = d1.iter().position(|c| !c.is_zero()).unwrap();
                if d2[j].is_zero() {
                    continue;
                }
                let lam = f.div(d1[j], d2[j]).unwrap();
                if d1.iter().zip(&d2).all(|(&x, &y)| x == f.mul(lam, y)) {
                    hit = true;
                    break 'outer;
                }
            }
        }
        if hit {
            covered_oracle += 1;
        }
    }
    assert_eq!(covered_oracle, covered);
    assert_eq!(complete, uncovered == 0);
}

#[test]
fn trivial_subspace_gives_single_point_cap() {
    let f = ZechField::new(2, 4, &Budget::default()).unwrap();
    let u = scatcap_core::linset::VecSubspace::new(f.clone(), 1, 3, vec![]).unwrap();
    let cap = cap_from_linear_set(&u).unwrap();
    assert_eq!(cap.size(), 1);
    assert!(is_cap_generic(&f, cap.points()).unwrap());
    assert!(is_translation_cap(&cap).unwrap());
}

#[test]
fn product_size_law() {
    // |K_G| = 2^{dim G} and products multiply sizes
    let f = ZechField::new(2, 4, &Budget::default()).unwrap();
    let conic = scatcap_core::cap::conic_cap(f.clone()).unwrap();
    assert_eq!(conic.size(), 1 << conic.basis().len());
    let prod = scatcap_core::cap::product_cap(&conic, &conic).unwrap();
    assert_eq!(prod.size(), conic.size() * conic.size());
    assert_eq!(prod.size(), 1 << prod.basis().len());
    assert!(is_translation_cap(&prod).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f5_field_axioms(a in 0u64..15625, b in 0u64..15625, c in 0u64..15625) {
        let f = ZechField::new(5, 6, &Budget::default()).unwrap();
        let (x, y, z) = (f.decode(a).unwrap(), f.decode(b).unwrap(), f.decode(c).unwrap());
        prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), Felt::ZERO);
        if !x.is_zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
        }
    }

    #[test]
    fn norm_transitivity_f2_12(enc in 0u64..4096) {
        let f = ZechField::new(2, 12, &Budget::default()).unwrap();
        let x = f.decode(enc).unwrap();
        let direct = f.norm(x, 12, 2).unwrap();
        let via_middle = f.norm(f.norm(x, 12, 6).unwrap(), 6, 2).unwrap();
        prop_assert_eq!(direct, via_middle);
        let tr_direct = f.trace(x, 12, 2).unwrap();
        let tr_via = f.trace(f.trace(x, 12, 4).unwrap(), 4, 2).unwrap();
        prop_assert_eq!(tr_direct, tr_via);
    }

    #[test]
    fn embedding_is_homomorphic(a in 0u64..8, b in 0u64..8) {
        let small = ZechField::new(2, 3, &Budget::default()).unwrap();
        let big = ZechField::new(2, 12, &Budget::default()).unwrap();
        let emb = SubfieldEmbedding::new(&small, &big).unwrap();
        let (x, y) = (small.decode(a).unwrap(), small.decode(b).unwrap());
        prop_assert_eq!(emb.embed(small.add(x, y)), big.add(emb.embed(x), emb.embed(y)));
        prop_assert_eq!(emb.embed(small.mul(x, y)), big.mul(emb.embed(x), emb.embed(y)));
    }

    #[test]
    fn adjoint_involution_f3(seed in 0u64..10_000) {
        let f = ZechField::new(3, 6, &Budget::default()).unwrap();
        let mut rng = StdRng::seed_from_u64(seed);
        let coeffs: Vec<Felt> = (0..6)
            .map(|_| f.decode(rng.gen_range(0..f.order())).unwrap())
            .collect();
        let lp = LinPoly::new(f.clone(), 1, coeffs).unwrap();
        prop_assert_eq!(lp.adjoint().unwrap().adjoint().unwrap(), lp);
    }
}
