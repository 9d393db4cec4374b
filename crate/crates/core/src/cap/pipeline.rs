//! The full pipeline from a plane scattered linear set to a certified
//! complete cap in `AG(n, 2^t)` of size `2 * 2^{t(n-1)/2}`.

use super::{
    cap_from_linear_set, conic_cap, doubling, is_cap_generic, is_complete, is_translation_cap,
    product_cap, CapCertificate, TranslationCap,
};
use crate::gf::TowerParams;
use crate::linset::{
    build_family, enumerate_points, plane_subspace, search_binomial_b, FamilyParams,
    LinearSetSpec, PlaneAmbient, SearchMode,
};
use crate::{Budget, Error, Result};

/// Which plane family seeds the pipeline. `Auto` picks the monomial family
/// when `t/2` is not a multiple of 3 and the binomial family otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeedFamily {
    Auto,
    Monomial,
    BinomialQ2,
}

impl std::str::FromStr for SeedFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(SeedFamily::Auto),
            "monomial" => Ok(SeedFamily::Monomial),
            "binomial-q2" | "binomial_q2" => Ok(SeedFamily::BinomialQ2),
            other => Err(Error::Parse(format!("unknown seed family `{other}`"))),
        }
    }
}

/// The first `a` (by increasing log) with `N_{2^{3n}/2^3}(a)` outside `F_2`.
fn first_monomial_a(ambient: &PlaneAmbient) -> Result<crate::gf::Felt> {
    let params = ambient.params();
    let k = ambient.k();
    for l in 0..k.group_order() {
        let a = k.felt_from_log(l);
        let nm = k.norm(a, params.deg_q3n(), 3 * params.h)?;
        if !k.in_subfield(nm, params.deg_q())? {
            return Ok(a);
        }
    }
    Err(Error::InternalConsistency(
        "no admissible monomial coefficient exists".into(),
    ))
}

/// Build the scattered plane seed over `q = 2` with `2n = t`.
pub fn seed_scattered_spec(
    t: u32,
    family: SeedFamily,
    budget: &Budget,
) -> Result<(LinearSetSpec, Vec<String>)> {
    if !t.is_multiple_of(2) || t < 4 {
        return Err(Error::InvalidInput(
            "the plane families need t even and >= 4".into(),
        ));
    }
    let n0 = t / 2;
    let params = TowerParams::new(2, 1, n0)?;
    let ambient = PlaneAmbient::new(params, budget)?;
    let family = match family {
        SeedFamily::Auto => {
            if !n0.is_multiple_of(3) {
                SeedFamily::Monomial
            } else {
                SeedFamily::BinomialQ2
            }
        }
        f => f,
    };
    match family {
        SeedFamily::Monomial => {
            let a = first_monomial_a(&ambient)?;
            let tags = vec![
                "seed_family=monomial".to_string(),
                format!("seed_i=3"),
                format!("seed_a={}", ambient.k().encode(a)),
            ];
            let spec = build_family(ambient, FamilyParams::Monomial { i: 3, a })?;
            Ok((spec, tags))
        }
        SeedFamily::BinomialQ2 => {
            let one = ambient.k().one();
            let found = search_binomial_b(&ambient, 1, one, SearchMode::FirstHit)?;
            let b = *found.first().ok_or_else(|| {
                Error::InternalConsistency("binomial search found no admissible b".into())
            })?;
            let tags = vec![
                "seed_family=binomial-q2".to_string(),
                format!("seed_i=1"),
                format!("seed_a=1"),
                format!("seed_b={}", ambient.k().encode(b)),
            ];
            let spec = build_family(ambient, FamilyParams::BinomialQ2 { b })?;
            Ok((spec, tags))
        }
        SeedFamily::Auto => unreachable!(),
    }
}

/// The certified complete cap of size `2q^{(n-1)/2}` in `AG(n, q)`,
/// `q = 2^t`: plane scattered set -> translation cap in `AG(3, 2^t)` ->
/// product with `(n-4)/2` conics -> doubling -> completeness census.
///
/// A failed completeness census is a fatal consistency error, never a
/// silently incomplete artifact.
pub fn build_complete_cap(
    n: u32,
    t: u32,
    family: SeedFamily,
    budget: &Budget,
) -> Result<(TranslationCap, CapCertificate)> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::InvalidInput("n must be even and >= 4".into()));
    }
    if !t.is_multiple_of(2) || t < 4 {
        return Err(Error::InvalidInput(
            "q = 2^t must be an even square with t >= 4".into(),
        ));
    }

    let (spec, mut tags) = seed_scattered_spec(t, family, budget)?;
    let ls = enumerate_points(&spec)?;
    if !ls.is_scattered() {
        return Err(Error::InternalConsistency(
            "the seed family produced a non-scattered linear set".into(),
        ));
    }
    let sub = plane_subspace(&spec)?;
    let seed_cap = cap_from_linear_set(&sub)?;
    if !is_translation_cap(&seed_cap)? || !seed_cap.has_maximal_size() {
        return Err(Error::InternalConsistency(
            "the scattered seed did not yield a maximal translation cap".into(),
        ));
    }
    tags.push(format!("seed_cap_size={}", seed_cap.size()));

    let mut cap = seed_cap;
    if n > 4 {
        let conic = conic_cap(cap.field().clone())?;
        for _ in 0..(n - 4) / 2 {
            cap = product_cap(&cap, &conic)?;
        }
    }
    let doubled = doubling(&cap)?;

    let expected = 2u64 << (t as u64 * (n as u64 - 1) / 2); // 2 * 2^{t(n-1)/2}
    if doubled.size() != expected {
        return Err(Error::InternalConsistency(format!(
            "pipeline size {} differs from 2q^((n-1)/2) = {expected}",
            doubled.size()
        )));
    }

    let field = doubled.field().clone();
    let (complete, uncovered, covered) = is_complete(
        &field,
        doubled.r(),
        doubled.points(),
        budget.max_bitmap_bits,
    )?;
    if !complete {
        return Err(Error::InternalConsistency(format!(
            "doubled cap left {uncovered} points uncovered"
        )));
    }
    if !is_cap_generic(&field, doubled.points())? {
        return Err(Error::InternalConsistency(
            "doubled point set is not a cap".into(),
        ));
    }
    let is_translation = is_translation_cap(&doubled)?;
    if !is_translation {
        return Err(Error::InternalConsistency(
            "doubled group contains a dependent pair".into(),
        ));
    }

    tags.push(format!("pipeline=plane+{}*conic+doubling", (n - 4) / 2));
    let size = doubled.size();
    let cert = CapCertificate {
        p: 2,
        t,
        r: doubled.r(),
        size,
        modulus: field.modulus(),
        is_cap: true,
        is_translation,
        is_maximal_translation: doubled.has_maximal_size(),
        is_complete: Some(true),
        covered: Some(covered),
        uncovered: Some(uncovered),
        space_size: Some(1u64 << (doubled.r() as u32 * t)),
        secant_count: size * (size - 1) / 2,
        method: tags,
    };
    Ok((doubled, cert))
}
