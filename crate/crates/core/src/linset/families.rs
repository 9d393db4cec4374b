//! The three explicit families, their hypothesis checkers, and the exhaustive
//! search for admissible binomial coefficients.

use std::sync::Arc;

use super::ambient::PlaneAmbient;
use super::linpoly::LinPoly;
use super::spec::{ConditionCheck, ConditionReport, FamilyTag, LinearSetSpec};
use crate::gf::poly::gcd_u64;
use crate::gf::Felt;
use crate::{Error, Result};

/// Hypotheses of the monomial family `f(x) = a x^{q^i}` for any `q >= 2`:
/// `n` not a multiple of 3, `gcd(i,2n) = 1`, `gcd(i,3n) = 3`, and
/// `N_{q^{3n}/q^3}(a)` outside `F_q`. Failed hypotheses are reported, not
/// thrown; only malformed inputs error.
pub fn check_monomial_conditions(
    ambient: &PlaneAmbient,
    i: u32,
    a: Felt,
) -> Result<ConditionReport> {
    let params = ambient.params();
    let n = params.n as u64;
    if i == 0 || i as u64 > 3 * n - 1 {
        return Err(Error::InvalidInput(format!(
            "i must satisfy 1 <= i <= {}",
            3 * n - 1
        )));
    }
    if a.is_zero() {
        return Err(Error::InvalidInput("a must be nonzero".into()));
    }
    let k = ambient.k();
    let mut checks = Vec::new();
    checks.push(ConditionCheck {
        name: "n_not_multiple_of_3",
        passed: !n.is_multiple_of(3),
        detail: format!("n = {n}"),
    });
    let g2n = gcd_u64(i as u64, 2 * n);
    checks.push(ConditionCheck {
        name: "gcd_i_2n_is_1",
        passed: g2n == 1,
        detail: format!("gcd({i},{}) = {g2n}", 2 * n),
    });
    let g3n = gcd_u64(i as u64, 3 * n);
    checks.push(ConditionCheck {
        name: "gcd_i_3n_is_3",
        passed: g3n == 3,
        detail: format!("gcd({i},{}) = {g3n}", 3 * n),
    });
    // N_{q^{3n}/q^3}(a) must avoid F_q
    let norm = k.norm(a, params.deg_q3n(), 3 * params.h)?;
    let in_fq = k.in_subfield(norm, params.deg_q())?;
    checks.push(ConditionCheck {
        name: "norm_to_q3_outside_fq",
        passed: !in_fq,
        detail: format!("N(a) enc = {}", k.encode(norm)),
    });
    Ok(ConditionReport {
        family: FamilyTag::Monomial,
        checks,
    })
}

/// Hypotheses of the second family (`q ≡ 1 mod 3`, any `n >= 2`):
/// `gcd(i,2n) = gcd(i,3n) = 1` and `(N_{q^{3n}/q}(a))^{(q-1)/3} != 1`.
/// `q ≢ 1 mod 3` is a hard precondition error.
pub fn check_family2_conditions(
    ambient: &PlaneAmbient,
    i: u32,
    a: Felt,
) -> Result<ConditionReport> {
    let params = ambient.params();
    let q = params.q();
    if q % 3 != 1 {
        return Err(Error::InvalidInput(format!(
            "family2 requires q ≡ 1 mod 3, got q = {q}"
        )));
    }
    let n = params.n as u64;
    if i == 0 || i as u64 > 3 * n - 1 {
        return Err(Error::InvalidInput(format!(
            "i must satisfy 1 <= i <= {}",
            3 * n - 1
        )));
    }
    if a.is_zero() {
        return Err(Error::InvalidInput("a must be nonzero".into()));
    }
    let k = ambient.k();
    let mut checks = Vec::new();
    checks.push(ConditionCheck {
        name: "n_at_least_2",
        passed: n >= 2,
        detail: format!("n = {n}"),
    });
    let g2n = gcd_u64(i as u64, 2 * n);
    let g3n = gcd_u64(i as u64, 3 * n);
    checks.push(ConditionCheck {
        name: "gcd_i_2n_is_1",
        passed: g2n == 1,
        detail: format!("gcd({i},{}) = {g2n}", 2 * n),
    });
    checks.push(ConditionCheck {
        name: "gcd_i_3n_is_1",
        passed: g3n == 1,
        detail: format!("gcd({i},{}) = {g3n}", 3 * n),
    });
    let norm = k.norm(a, params.deg_q3n(), params.deg_q())?;
    let val = k.pow(norm, ((q - 1) / 3) as i64)?;
    checks.push(ConditionCheck {
        name: "norm_power_not_one",
        passed: val != k.one(),
        detail: format!("(N(a))^((q-1)/3) enc = {}", k.encode(val)),
    });
    Ok(ConditionReport {
        family: FamilyTag::Family2,
        checks,
    })
}

/// The binomial criterion: with `f_{i,a,b}(x) = a x^{q^i} + b x^{q^{2n+i}}`,
/// true iff `f(x)/x` avoids `F_{q^n}` for every nonzero `x` — checked by an
/// exhaustive loop over `F_{q^{3n}}^*` with early abort.
pub fn check_binomial_condition(
    ambient: &PlaneAmbient,
    i: u32,
    a: Felt,
    b: Felt,
) -> Result<bool> {
    let params = ambient.params();
    let n = params.n as u64;
    if gcd_u64(i as u64, 2 * n) != 1 {
        return Err(Error::InvalidInput(format!(
            "binomial family requires gcd(i, 2n) = 1, got i = {i}, n = {n}"
        )));
    }
    if a.is_zero() || b.is_zero() {
        return Err(Error::InvalidInput("a and b must be nonzero".into()));
    }
    Ok(binomial_condition_holds(ambient, i, a, b))
}

/// Inner loop shared with the search; preconditions already validated.
fn binomial_condition_holds(ambient: &PlaneAmbient, i: u32, a: Felt, b: Felt) -> bool {
    let params = ambient.params();
    let k = ambient.k();
    let n = params.n;
    let group = k.group_order();
    let nh = params.deg_qn();
    let cof = k.subfield_cofactor(nh).expect("n·h divides 3n·h");
    let q = params.q();
    // f(x)/x = a x^{q^i - 1} + b x^{q^{(2n+i) mod 3n} - 1}
    let e1 = crate::gf::poly::mod_pow(q, i as u64, group) + group - 1;
    let j = (2 * n + i) % (3 * n);
    let e2 = crate::gf::poly::mod_pow(q, j as u64, group) + group - 1;
    let (la, lb) = (a.log().unwrap(), b.log().unwrap());
    for xl in 0..group {
        let t1 = k.felt_from_log(la + (xl as u128 * e1 as u128 % group as u128) as u64);
        let t2 = k.felt_from_log(lb + (xl as u128 * e2 as u128 % group as u128) as u64);
        let v = k.add(t1, t2);
        match v.log() {
            None => return false, // 0 ∈ F_{q^n}
            Some(l) => {
                if l % cof == 0 {
                    return false;
                }
            }
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    FirstHit,
    Exhaustive,
}

/// All `b` (or the first, in first-hit mode) for which
/// `f_{i,a,b}(x)/x` avoids `F_{q^n}` on all of `F_{q^{3n}}^*`.
/// Enumeration order is increasing log, so results are deterministic.
pub fn search_binomial_b(
    ambient: &PlaneAmbient,
    i: u32,
    a: Felt,
    mode: SearchMode,
) -> Result<Vec<Felt>> {
    let params = ambient.params();
    let n = params.n as u64;
    if gcd_u64(i as u64, 2 * n) != 1 {
        return Err(Error::InvalidInput(format!(
            "binomial family requires gcd(i, 2n) = 1, got i = {i}, n = {n}"
        )));
    }
    if a.is_zero() {
        return Err(Error::InvalidInput("a must be nonzero".into()));
    }
    let k = ambient.k();
    let mut found = Vec::new();
    for bl in 0..k.group_order() {
        let b = k.felt_from_log(bl);
        if binomial_condition_holds(ambient, i, a, b) {
            found.push(b);
            if mode == SearchMode::FirstHit {
                break;
            }
        }
    }
    Ok(found)
}

/// Family selector for [`build_family`].
#[derive(Debug, Clone, Copy)]
pub enum FamilyParams {
    Monomial { i: u32, a: Felt },
    Family2 { i: u32, a: Felt },
    BinomialQ2 { b: Felt },
}

/// Assemble the defining map and the canonical `omega` into a
/// [`LinearSetSpec`], after the matching hypothesis checker passes.
pub fn build_family(ambient: Arc<PlaneAmbient>, family: FamilyParams) -> Result<LinearSetSpec> {
    let params = ambient.params();
    match family {
        FamilyParams::Monomial { i, a } => {
            let report = check_monomial_conditions(&ambient, i, a)?;
            if !report.all_passed() {
                return Err(Error::ConditionsFailed(report.summary()));
            }
            let f = LinPoly::monomial(ambient.k().clone(), params.h, i, a)?;
            Ok(LinearSetSpec {
                ambient,
                f,
                family: FamilyTag::Monomial,
                i: Some(i),
                a: Some(a),
                b: None,
            })
        }
        FamilyParams::Family2 { i, a } => {
            let report = check_family2_conditions(&ambient, i, a)?;
            if !report.all_passed() {
                return Err(Error::ConditionsFailed(report.summary()));
            }
            let f = LinPoly::monomial(ambient.k().clone(), params.h, i, a)?;
            Ok(LinearSetSpec {
                ambient,
                f,
                family: FamilyTag::Family2,
                i: Some(i),
                a: Some(a),
                b: None,
            })
        }
        FamilyParams::BinomialQ2 { b } => {
            let report = check_binomial_q2_conditions(&ambient, b)?;
            if !report.all_passed() {
                return Err(Error::ConditionsFailed(report.summary()));
            }
            let one = ambient.k().one();
            let f = LinPoly::binomial(ambient.k().clone(), params.h, params.n, 1, one, b)?;
            Ok(LinearSetSpec {
                ambient,
                f,
                family: FamilyTag::BinomialQ2,
                i: Some(1),
                a: Some(one),
                b: Some(b),
            })
        }
    }
}

/// Hypotheses of the `q = 2` binomial family `x^2 + b x^{2^{2n+1}}`:
/// `n > 1`, `N_{2^{3n}/2^n}(b) != 1`, and the exhaustive quotient condition.
/// `q != 2` is a hard precondition error.
pub fn check_binomial_q2_conditions(ambient: &PlaneAmbient, b: Felt) -> Result<ConditionReport> {
    let params = ambient.params();
    if params.q() != 2 {
        return Err(Error::InvalidInput(format!(
            "the binomial family is stated for q = 2, got q = {}",
            params.q()
        )));
    }
    if b.is_zero() {
        return Err(Error::InvalidInput("b must be nonzero".into()));
    }
    let k = ambient.k();
    let n = params.n;
    let mut checks = Vec::new();
    checks.push(ConditionCheck {
        name: "n_greater_than_1",
        passed: n > 1,
        detail: format!("n = {n}"),
    });
    let norm = k.norm(b, params.deg_q3n(), params.deg_qn())?;
    checks.push(ConditionCheck {
        name: "norm_b_not_one",
        passed: norm != k.one(),
        detail: format!("N_{{2^{}/2^{}}}(b) enc = {}", 3 * n, n, k.encode(norm)),
    });
    let quot = binomial_condition_holds(ambient, 1, k.one(), b);
    checks.push(ConditionCheck {
        name: "quotients_avoid_fqn",
        passed: quot,
        detail: format!("exhaustive over {} nonzero x", k.group_order()),
    });
    Ok(ConditionReport {
        family: FamilyTag::BinomialQ2,
        checks,
    })
}
