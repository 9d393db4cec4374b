//! Rank bounds and the line-intersection profile of a plane linear set.

use std::collections::BTreeMap;

use super::enumerate::LinearSet;
use crate::gf::Felt;
use crate::{Error, Result};

/// Bounds on the rank of a maximum scattered `F_q`-linear set of
/// `PG(r-1, q^t)`: exactly `rt/2` for even `r`, and between `(rt-t)/2` and
/// `rt/2` for odd `r`.
pub fn rank_bounds(r: u32, t: u32) -> Result<(u64, u64)> {
    if r < 2 || t < 1 {
        return Err(Error::InvalidInput("need r >= 2 and t >= 1".into()));
    }
    let rt = r as u64 * t as u64;
    if r.is_multiple_of(2) {
        Ok((rt / 2, rt / 2))
    } else {
        Ok(((rt - t as u64) / 2, rt / 2))
    }
}

/// The two hyperplane-intersection sizes of a maximum scattered set of rank
/// `k = rt/2`: `theta_{k-t-1}(q) = (q^{k-t}-1)/(q-1)` and
/// `theta_{k-t}(q) = (q^{k-t+1}-1)/(q-1)`.
pub fn intersection_numbers(q: u64, r: u32, t: u32) -> Result<(u64, u64)> {
    let rt = r as u64 * t as u64;
    if !rt.is_multiple_of(2) {
        return Err(Error::InvalidInput(
            "rt must be even for the maximum rank rt/2".into(),
        ));
    }
    let k = rt / 2;
    if k < t as u64 {
        return Err(Error::InvalidInput("rank below t".into()));
    }
    let e = (k - t as u64) as u32;
    Ok(((q.pow(e) - 1) / (q - 1), (q.pow(e + 1) - 1) / (q - 1)))
}

/// Histogram of `|line ∩ L_U|` over all `q^{4n} + q^{2n} + 1` lines of
/// `PG(2, q^{2n})`, mapping intersection size to the number of lines.
pub fn two_intersection_profile(
    ls: &LinearSet,
    max_lines: u64,
) -> Result<BTreeMap<u64, u64>> {
    let plane = ls.ambient.plane();
    let s = plane.order();
    let line_count = s * s + s + 1;
    if line_count > max_lines {
        return Err(Error::BudgetExceeded {
            what: "line enumeration",
            needed: line_count,
            allowed: max_lines,
        });
    }
    let pts: Vec<[Felt; 3]> = ls.points.iter().map(|wp| wp.point.coords).collect();
    let mut hist: BTreeMap<u64, u64> = BTreeMap::new();
    let mut count_line = |l: [Felt; 3]| {
        let mut cnt = 0u64;
        for p in &pts {
            let mut acc = Felt::ZERO;
            for i in 0..3 {
                acc = plane.add(acc, plane.mul(l[i], p[i]));
            }
            if acc.is_zero() {
                cnt += 1;
            }
        }
        *hist.entry(cnt).or_insert(0) += 1;
    };
    let elems: Vec<Felt> = plane.elements().collect();
    // canonical dual coordinates: (1, y, z), (0, 1, z), (0, 0, 1)
    for &y in &elems {
        for &z in &elems {
            count_line([plane.one(), y, z]);
        }
    }
    for &z in &elems {
        count_line([Felt::ZERO, plane.one(), z]);
    }
    count_line([Felt::ZERO, Felt::ZERO, plane.one()]);
    debug_assert_eq!(hist.values().sum::<u64>(), line_count);
    Ok(hist)
}
