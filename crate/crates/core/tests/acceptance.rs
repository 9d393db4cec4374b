//! Acceptance suite: one test per criterion. Each prints a `PASS` line with
//! the counts that back the verdict and asserts its stated time budget.

use std::sync::Arc;
use std::time::{Duration, Instant};

use scatcap_core::cap::{
    self, cap_from_linear_set, conic_cap, doubling, is_cap_generic, is_complete,
    is_translation_cap,
};
use scatcap_core::gf::TowerParams;
use scatcap_core::linset::{
    adjoint_image_property, build_family, check_family2_conditions, direct_sum, enumerate_points,
    enumerate_vector_linear_set, plane_subspace, pseudoregulus_line_u, search_binomial_b,
    FamilyParams, LinPoly, LinearSetSpec, PlaneAmbient, SearchMode,
};
use scatcap_core::Budget;

fn ambient(p: u32, h: u32, n: u32) -> Arc<PlaneAmbient> {
    PlaneAmbient::new(TowerParams::new(p, h, n).unwrap(), &Budget::default()).unwrap()
}

/// First monomial coefficient admissible for thm-family-1 style specs.
fn first_monomial_a(amb: &PlaneAmbient) -> scatcap_core::gf::Felt {
    let params = amb.params();
    let k = amb.k();
    k.elements()
        .skip(1)
        .find(|&a| {
            let nm = k.norm(a, params.deg_q3n(), 3 * params.h).unwrap();
            !k.in_subfield(nm, params.deg_q()).unwrap()
        })
        .unwrap()
}

fn monomial_spec_q2_n2() -> LinearSetSpec {
    let amb = ambient(2, 1, 2);
    let a = first_monomial_a(&amb);
    build_family(amb, FamilyParams::Monomial { i: 3, a }).unwrap()
}

#[test]
fn criterion_01_monomial_family_every_admissible_a() {
    let start = Instant::now();
    let amb = ambient(2, 1, 2);
    let k = amb.k();
    let mut admissible = 0u32;
    for l in 0..k.group_order() {
        let a = k.felt_from_log(l);
        let nm = k.norm(a, 6, 3).unwrap();
        if k.in_subfield(nm, 1).unwrap() {
            continue;
        }
        admissible += 1;
        let spec = build_family(amb.clone(), FamilyParams::Monomial { i: 3, a }).unwrap();
        let ls = enumerate_points(&spec).unwrap();
        assert_eq!(ls.points.len(), 63, "a = {}", k.encode(a));
        assert!(ls.points.iter().all(|wp| wp.weight == 1));
        assert!(ls.is_scattered());
    }
    // the norm-1 kernel has (2^6-1)/(2^3-1) = 9 elements, so 63 - 9 = 54
    assert_eq!(admissible, 54);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "{elapsed:?}");
    println!(
        "criterion 01 PASS: 54 admissible a over F_64, each 63 points of weight 1 ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_02_two_intersection_273_lines() {
    let start = Instant::now();
    let spec = monomial_spec_q2_n2();
    let ls = enumerate_points(&spec).unwrap();
    let hist = scatcap_core::linset::two_intersection_profile(&ls, 1 << 18).unwrap();
    let total_lines: u64 = hist.values().sum();
    assert_eq!(total_lines, 273);
    let support: Vec<u64> = hist.keys().copied().collect();
    assert_eq!(support, vec![3, 7]);
    assert!(hist[&3] > 0 && hist[&7] > 0);
    assert_eq!(hist[&3], 210);
    assert_eq!(hist[&7], 63);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "{elapsed:?}");
    println!(
        "criterion 02 PASS: 273 lines meet the set in 3 (x210) or 7 (x63) points ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_03_family2_q4() {
    // q = 4, n = 2
    let start = Instant::now();
    let amb = ambient(2, 2, 2);
    let k = amb.k();
    let a = k
        .elements()
        .skip(1)
        .find(|&a| {
            check_family2_conditions(&amb, 1, a)
                .map(|r| r.all_passed())
                .unwrap_or(false)
        })
        .unwrap();
    let spec = build_family(amb.clone(), FamilyParams::Family2 { i: 1, a }).unwrap();
    let ls = enumerate_points(&spec).unwrap();
    assert_eq!(ls.rank, 6);
    assert_eq!(ls.points.len(), 1365);
    assert!(ls.is_scattered());
    let elapsed_n2 = start.elapsed();
    assert!(elapsed_n2 < Duration::from_secs(5), "{elapsed_n2:?}");

    // q = 4, n = 3 (the n ≡ 0 mod 3 case): K = F_{2^18}
    let start_n3 = Instant::now();
    let amb = ambient(2, 2, 3);
    let k = amb.k();
    let a = k
        .elements()
        .skip(1)
        .find(|&a| {
            check_family2_conditions(&amb, 1, a)
                .map(|r| r.all_passed())
                .unwrap_or(false)
        })
        .unwrap();
    let spec = build_family(amb.clone(), FamilyParams::Family2 { i: 1, a }).unwrap();
    let ls = enumerate_points(&spec).unwrap();
    assert_eq!(ls.rank, 9);
    assert_eq!(ls.points.len(), 87381);
    assert!(ls.is_scattered());
    let elapsed_n3 = start_n3.elapsed();
    assert!(elapsed_n3 < Duration::from_secs(60), "{elapsed_n3:?}");
    println!(
        "criterion 03 PASS: q=4 rank-6 set has 1365 points ({} ms); rank-9 set has 87381 points ({} ms)",
        elapsed_n2.as_millis(),
        elapsed_n3.as_millis()
    );
}

#[test]
fn criterion_04_binomial_existence_q2() {
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in [2u32, 3] {
        let amb = ambient(2, 1, n);
        let k = amb.k();
        let found = search_binomial_b(&amb, 1, k.one(), SearchMode::Exhaustive).unwrap();
        assert!(!found.is_empty(), "no b over F_{{2^{}}}", 3 * n);
        for &b in &found {
            let nm = k.norm(b, 3 * n, n).unwrap();
            assert_ne!(nm, k.one(), "returned b has norm 1");
        }
        counts.push(found.len());
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "{elapsed:?}");
    println!(
        "criterion 04 PASS: {} admissible b over F_64, {} over F_512, all with norm != 1 ({} ms)",
        counts[0],
        counts[1],
        elapsed.as_millis()
    );
}

#[test]
fn criterion_05_first_hit_search_q3_n3() {
    let start = Instant::now();
    let amb = ambient(3, 1, 3);
    let k = amb.k();
    let found = search_binomial_b(&amb, 1, k.one(), SearchMode::FirstHit).unwrap();
    assert_eq!(found.len(), 1, "no admissible b over F_{{3^9}}");
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(120), "{elapsed:?}");
    println!(
        "criterion 05 PASS: first-hit b over F_{{3^9}} at enc {} ({} ms)",
        k.encode(found[0]),
        elapsed.as_millis()
    );
}

#[test]
fn criterion_06_adjoint_image_property_random_maps() {
    use rand::{rngs::StdRng, Rng, SeedableRng};
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5CA77E12);
    let mut checked = 0;
    for (p, count) in [(2u32, 100usize), (3, 25)] {
        let amb = ambient(p, 1, 2);
        let k = amb.k();
        for _ in 0..count {
            let coeffs: Vec<scatcap_core::gf::Felt> = (0..6)
                .map(|_| k.decode(rng.gen_range(0..k.order())).unwrap())
                .collect();
            let f = LinPoly::new(k.clone(), 1, coeffs).unwrap();
            assert!(adjoint_image_property(&f, 1 << 18).unwrap());
            assert_eq!(f.adjoint().unwrap().adjoint().unwrap(), f);
            checked += 1;
        }
    }
    assert_eq!(checked, 125);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(10), "{elapsed:?}");
    println!(
        "criterion 06 PASS: image equality and involution for 100 maps over F_64 and 25 over F_729 ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_07_direct_sum_rank_10() {
    let start = Instant::now();
    let spec = monomial_spec_q2_n2();
    let plane_u = plane_subspace(&spec).unwrap();
    assert_eq!(plane_u.rank(), 6);
    let line_u = pseudoregulus_line_u(spec.ambient.plane().clone(), 1).unwrap();
    assert_eq!(line_u.rank(), 4);
    let w = direct_sum(&[&plane_u, &line_u]).unwrap();
    assert_eq!(w.r(), 5);
    let ls = enumerate_vector_linear_set(&w, 1 << 22).unwrap();
    assert_eq!(ls.rank, 10);
    assert_eq!(ls.points.len(), 1023);
    assert!(ls.points.iter().all(|(_, w)| *w == 1));
    assert!(ls.is_scattered());
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "{elapsed:?}");
    println!(
        "criterion 07 PASS: rank-10 direct sum has 1023 points of weight 1 in PG(4,16) ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_08_cap_correspondence_oracle_equivalence() {
    let start = Instant::now();
    // positive: the scattered rank-6 set
    let spec = monomial_spec_q2_n2();
    let sub = plane_subspace(&spec).unwrap();
    let cap = cap_from_linear_set(&sub).unwrap();
    assert_eq!(cap.size(), 64);
    assert_eq!(cap.r(), 3);
    assert_eq!(cap.t(), 4);
    let by_pairs = is_translation_cap(&cap).unwrap();
    let by_collinearity = is_cap_generic(cap.field(), cap.points()).unwrap();
    assert!(by_pairs);
    assert_eq!(by_pairs, by_collinearity);
    assert!(cap.has_maximal_size());

    // negative: the identity map is not scattered, and both checks agree
    let amb = spec.ambient.clone();
    let ident = LinearSetSpec::custom(
        amb.clone(),
        LinPoly::identity(amb.k().clone(), 1).unwrap(),
    )
    .unwrap();
    let sub = plane_subspace(&ident).unwrap();
    let bad = cap_from_linear_set(&sub).unwrap();
    let by_pairs = is_translation_cap(&bad).unwrap();
    let by_collinearity = is_cap_generic(bad.field(), bad.points()).unwrap();
    assert!(!by_pairs);
    assert_eq!(by_pairs, by_collinearity);

    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "{elapsed:?}");
    println!(
        "criterion 08 PASS: 64-point translation cap in AG(3,16); pairwise and collinearity checks agree on both controls ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_09_complete_caps_n4_and_n6() {
    let budget = Budget::default();
    let start = Instant::now();
    let (cap4, cert4) = cap::build_complete_cap(4, 4, cap::SeedFamily::Auto, &budget).unwrap();
    assert_eq!(cap4.size(), 128); // 2 * 16^{3/2}
    assert_eq!(cap4.r(), 4);
    assert_eq!(cert4.is_complete, Some(true));
    assert_eq!(cert4.space_size, Some(65536));
    assert_eq!(cert4.covered, Some(65536));
    assert_eq!(cert4.uncovered, Some(0));
    let elapsed_n4 = start.elapsed();
    assert!(elapsed_n4 < Duration::from_secs(1), "{elapsed_n4:?}");

    let start_n6 = Instant::now();
    let (cap6, cert6) = cap::build_complete_cap(6, 4, cap::SeedFamily::Auto, &budget).unwrap();
    assert_eq!(cap6.size(), 2048); // 2 * 16^{5/2}
    assert_eq!(cap6.r(), 6);
    assert_eq!(cert6.is_complete, Some(true));
    assert_eq!(cert6.space_size, Some(16_777_216));
    assert_eq!(cert6.uncovered, Some(0));
    let elapsed_n6 = start_n6.elapsed();
    assert!(elapsed_n6 < Duration::from_secs(120), "{elapsed_n6:?}");

    // n must be even and >= 4
    assert!(cap::build_complete_cap(3, 4, cap::SeedFamily::Auto, &budget).is_err());
    assert!(cap::build_complete_cap(5, 4, cap::SeedFamily::Auto, &budget).is_err());

    println!(
        "criterion 09 PASS: complete caps of 128/65536 ({} ms) and 2048/16777216 ({} ms)",
        elapsed_n4.as_millis(),
        elapsed_n6.as_millis()
    );
}

#[test]
fn criterion_10_doubling_sanity_conic() {
    let start = Instant::now();
    let f16 = scatcap_core::gf::ZechField::new(2, 4, &Budget::default()).unwrap();
    let conic = conic_cap(f16.clone()).unwrap();
    assert_eq!(conic.size(), 16);
    let doubled = doubling(&conic).unwrap();
    assert_eq!(doubled.size(), 32);
    assert_eq!(doubled.r(), 3);
    assert!(is_cap_generic(&f16, doubled.points()).unwrap());
    let (complete, uncovered, covered) = is_complete(&f16, 3, doubled.points(), 1 << 28).unwrap();
    assert!(complete, "uncovered = {uncovered}");
    assert_eq!(covered, 4096);
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(1), "{elapsed:?}");
    println!(
        "criterion 10 PASS: doubled conic is a 32-point complete cap in AG(3,16) ({} ms)",
        elapsed.as_millis()
    );
}

#[test]
fn criterion_11_negative_controls() {
    let start = Instant::now();
    // identity map: 21 points of weight 2
    let amb = ambient(2, 1, 2);
    let ident = LinearSetSpec::custom(
        amb.clone(),
        LinPoly::identity(amb.k().clone(), 1).unwrap(),
    )
    .unwrap();
    let ls = enumerate_points(&ident).unwrap();
    assert_eq!(ls.points.len(), 21);
    assert!(ls.points.iter().all(|wp| wp.weight == 2));
    assert!(!ls.is_scattered());

    // every single-point deletion from the 128-cap is caught
    let (cap128, _) =
        cap::build_complete_cap(4, 4, cap::SeedFamily::Auto, &Budget::default()).unwrap();
    let text = cap::file::cap_to_string(&cap128);
    let full = cap::file::parse_cap(&text).unwrap();

    // stale header: a size violation at parse time
    let stale = text.trim_end().rsplit_once('\n').unwrap().0;
    assert!(cap::file::parse_cap(stale).is_err());

    // consistent header: the census reports uncovered points
    for i in 0..full.points_enc.len() {
        let mut cf = full.clone();
        cf.points_enc.remove(i);
        cf.size -= 1;
        let out = cap::file::verify_cap_file(&cf, &Budget::default()).unwrap();
        let uncovered = out.certificate.uncovered.unwrap();
        assert!(
            uncovered > 0,
            "deleting point {i} left the census full"
        );
        assert_eq!(out.certificate.is_complete, Some(false));
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "{elapsed:?}");
    println!(
        "criterion 11 PASS: identity gives 21 weight-2 points; all 128 single deletions leave uncovered points ({} ms)",
        elapsed.as_millis()
    );
}
