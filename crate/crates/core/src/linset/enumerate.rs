//! Exhaustive point/weight enumeration of a linear set, and the independent
//! scatteredness oracles it is checked against.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use super::ambient::PlaneAmbient;
use super::linpoly::LinPoly;
use super::spec::{FamilyTag, LinearSetSpec};
use crate::gf::{Felt, QElt};
use crate::{Error, Result};

/// A point of `PG(2, q^{2n})` in canonical coordinates (first nonzero
/// coordinate scaled to 1) over the plane field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ProjPoint {
    pub coords: [Felt; 3],
}

#[derive(Debug, Clone, Copy)]
pub struct WeightedPoint {
    pub point: ProjPoint,
    pub weight: u32,
}

/// The enumerated linear set: one entry per projective point with its weight.
pub struct LinearSet {
    pub ambient: Arc<PlaneAmbient>,
    pub family: FamilyTag,
    pub points: Vec<WeightedPoint>,
    pub rank: u32,
}

impl LinearSet {
    /// Scattered iff every point has weight 1.
    pub fn is_scattered(&self) -> bool {
        self.points.iter().all(|wp| wp.weight == 1)
    }

    /// `(q^rank - 1)/(q - 1)`, the size a scattered set of this rank attains.
    pub fn expected_max_size(&self) -> u64 {
        let q = self.ambient.params().q();
        (q.pow(self.rank) - 1) / (q - 1)
    }

    pub fn weight_histogram(&self) -> BTreeMap<u32, u64> {
        let mut h = BTreeMap::new();
        for wp in &self.points {
            *h.entry(wp.weight).or_insert(0) += 1;
        }
        h
    }
}

/// All `q^{3n}` vectors `f(x) + x*omega`, as pairs over `K`.
///
/// The map `x -> f(x) + x*omega` is injective (`omega` is outside
/// `F_{q^{3n}}`), so the result always has exactly `q^{3n}` distinct entries.
pub fn build_u(spec: &LinearSetSpec) -> Vec<QElt> {
    let k = spec.ambient.k();
    std::iter::once(Felt::ZERO)
        .chain((0..k.group_order()).map(|l| k.felt_from_log(l)))
        .map(|x| QElt {
            s: spec.f.eval(x),
            t: x,
        })
        .collect()
}

fn pack_label(ambient: &PlaneAmbient, triple: &[Felt; 3]) -> u128 {
    let pl = ambient.plane();
    (pl.encode(triple[0]) as u128)
        | ((pl.encode(triple[1]) as u128) << 42)
        | ((pl.encode(triple[2]) as u128) << 84)
}

/// Group `U \ {0}` by `F_{q^{2n}}`-proportionality and convert fiber sizes
/// `q^w - 1` into weights.
pub fn enumerate_points(spec: &LinearSetSpec) -> Result<LinearSet> {
    let ambient = &spec.ambient;
    let k = ambient.k();
    let q = ambient.params().q();
    let group = k.group_order();

    let mut counts: HashMap<u128, [Felt; 3]> = HashMap::new();
    let mut tally: HashMap<u128, u64> = HashMap::new();
    for xl in 0..group {
        let x = k.felt_from_log(xl);
        let u = QElt {
            s: spec.f.eval(x),
            t: x,
        };
        let triple = ambient.to_plane_triple(u)?;
        let canon = ambient
            .canonicalize(triple)?
            .ok_or_else(|| Error::InternalConsistency("zero vector for nonzero x".into()))?;
        let label = pack_label(ambient, &canon);
        counts.entry(label).or_insert(canon);
        *tally.entry(label).or_insert(0) += 1;
    }

    let mut labels: Vec<u128> = tally.keys().copied().collect();
    labels.sort_unstable();

    let rank = spec.rank();
    let mut points = Vec::with_capacity(labels.len());
    let mut fiber_sum: u64 = 0;
    for label in labels {
        let m = tally[&label];
        let size = m + 1;
        // a fiber is (U ∩ point) \ {0}, so its size must be q^w - 1
        let mut w = 0u32;
        let mut pw = 1u64;
        while pw < size {
            pw *= q;
            w += 1;
        }
        if pw != size {
            return Err(Error::InternalConsistency(format!(
                "fiber of size {m} is not q^w - 1 for q = {q}"
            )));
        }
        fiber_sum += m;
        points.push(WeightedPoint {
            point: ProjPoint {
                coords: counts[&label],
            },
            weight: w,
        });
    }
    if fiber_sum != q.pow(rank) - 1 {
        return Err(Error::InternalConsistency(
            "fiber sizes do not partition U \\ {0}".into(),
        ));
    }

    let ls = LinearSet {
        ambient: ambient.clone(),
        family: spec.family,
        points,
        rank,
    };
    // scattered ⇔ maximum size, via two independent computations
    let max_size = ls.expected_max_size();
    if ls.is_scattered() != (ls.points.len() as u64 == max_size) {
        return Err(Error::InternalConsistency(
            "weight-1 verdict disagrees with the size criterion".into(),
        ));
    }
    Ok(ls)
}

/// Free-function form of the scatteredness verdict.
pub fn is_scattered(ls: &LinearSet) -> bool {
    ls.is_scattered()
}

/// Independent oracle: `L_U` is scattered iff
/// `Q_f ∩ F_{q^{2n}} = F_q`, where `Q_f` is the set of quotients
/// `(f(x)+x*omega)/(f(y)+y*omega)` with `x` ranging over all of `F_{q^{3n}}`
/// (including 0) and `y` over `F_{q^{3n}}^*`. Exhaustive over all pairs.
pub fn oracle_scattered_qf(spec: &LinearSetSpec, max_field_order: u64) -> Result<bool> {
    let ambient = &spec.ambient;
    let k = ambient.k();
    if k.order() > max_field_order {
        return Err(Error::BudgetExceeded {
            what: "quotient-set oracle",
            needed: k.order(),
            allowed: max_field_order,
        });
    }
    let ext = ambient.ext();
    let u = build_u(spec);
    let mut in_2n: HashSet<QElt> = HashSet::new();
    for (yi, uy) in u.iter().enumerate() {
        if yi == 0 {
            continue; // y = 0 excluded
        }
        for ux in &u {
            let lam = ext.div(*ux, *uy)?;
            if ambient.ext_in_fq2n(lam)? {
                in_2n.insert(lam);
            }
        }
    }
    let fq: HashSet<QElt> = k
        .subfield_elements(ambient.params().deg_q())?
        .map(|s| QElt { s, t: Felt::ZERO })
        .collect();
    Ok(in_2n == fq)
}

/// Independent oracle from the two component equations: for every pair
/// `(x,y)` of nonzero elements satisfying
/// `f(x)^{q^{2n}} f(y) - f(y)^{q^{2n}} f(x) = (x y^{q^{2n}} - y x^{q^{2n}}) A` and
/// `f(x)^{q^{2n}} y + f(y) x^{q^{2n}} - f(y)^{q^{2n}} x - f(x) y^{q^{2n}} = (x y^{q^{2n}} - y x^{q^{2n}}) B`,
/// the quotient `(f(x)+x*omega)/(f(y)+y*omega)` must lie in `F_q^*`.
pub fn oracle_scattered_pairs(spec: &LinearSetSpec, max_field_order: u64) -> Result<bool> {
    let ambient = &spec.ambient;
    let k = ambient.k();
    if k.order() > max_field_order {
        return Err(Error::BudgetExceeded {
            what: "pair-equation oracle",
            needed: k.order(),
            allowed: max_field_order,
        });
    }
    let params = ambient.params();
    let (h, n) = (params.h, params.n);
    let group = k.group_order() as usize;
    let om = ambient.omega();
    let ext = ambient.ext();

    let xs: Vec<Felt> = (0..group as u64).map(|l| k.felt_from_log(l)).collect();
    let fx: Vec<Felt> = xs.iter().map(|&x| spec.f.eval(x)).collect();
    let xq: Vec<Felt> = xs.iter().map(|&x| k.frobenius_q(x, h, 2 * n)).collect();
    let fxq: Vec<Felt> = fx.iter().map(|&v| k.frobenius_q(v, h, 2 * n)).collect();

    for i in 0..group {
        for j in 0..group {
            // s = x y^{q^{2n}} - y x^{q^{2n}}
            let s = k.sub(k.mul(xs[i], xq[j]), k.mul(xs[j], xq[i]));
            let lhs1 = k.sub(k.mul(fxq[i], fx[j]), k.mul(fxq[j], fx[i]));
            if lhs1 != k.mul(s, om.a_k) {
                continue;
            }
            let lhs2 = k.sub(
                k.add(k.mul(fxq[i], xs[j]), k.mul(fx[j], xq[i])),
                k.add(k.mul(fxq[j], xs[i]), k.mul(fx[i], xq[j])),
            );
            if lhs2 != k.mul(s, om.b_k) {
                continue;
            }
            let ux = QElt { s: fx[i], t: xs[i] };
            let uy = QElt { s: fx[j], t: xs[j] };
            let lam = ext.div(ux, uy)?;
            if lam.is_zero() || !ambient.ext_in_fq(lam)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `{f(x)/x} = {adjoint(f)(x)/x}` as subsets of `F_{q^{3n}}`, by exhaustion.
pub fn adjoint_image_property(f: &LinPoly, max_field_order: u64) -> Result<bool> {
    let field = f.field();
    if field.order() > max_field_order {
        return Err(Error::BudgetExceeded {
            what: "adjoint image oracle",
            needed: field.order(),
            allowed: max_field_order,
        });
    }
    let adj = f.adjoint()?;
    let mut im_f = HashSet::new();
    let mut im_adj = HashSet::new();
    for l in 0..field.group_order() {
        let x = field.felt_from_log(l);
        let xi = field.inv(x)?;
        im_f.insert(field.mul(f.eval(x), xi));
        im_adj.insert(field.mul(adj.eval(x), xi));
    }
    Ok(im_f == im_adj)
}
