//! `F_q`-subspaces of `F_{q^t}^r` and their linear sets in `PG(r-1, q^t)`:
//! the pseudoregulus line construction, direct sums of scattered components,
//! and a generic point/weight verifier shared by all of them.

use std::collections::HashMap;
use std::sync::Arc;

use super::ambient::PlaneAmbient;
use super::enumerate::LinearSet;
use super::spec::LinearSetSpec;
use crate::gf::{Felt, ZechField};
use crate::{Error, Result};

/// An `F_q`-subspace of `F_{q^t}^r`, given by `F_q`-generators.
pub struct VecSubspace {
    field: Arc<ZechField>,
    h: u32,
    r: usize,
    gens: Vec<Vec<Felt>>,
}

impl VecSubspace {
    pub fn new(field: Arc<ZechField>, h: u32, r: usize, gens: Vec<Vec<Felt>>) -> Result<Self> {
        if h == 0 || !field.degree().is_multiple_of(h) {
            return Err(Error::NotADivisor {
                candidate: h,
                modulus: field.degree(),
            });
        }
        if r == 0 {
            return Err(Error::InvalidInput("ambient dimension r must be >= 1".into()));
        }
        if gens.iter().any(|g| g.len() != r) {
            return Err(Error::InvalidInput(
                "all generators must have length r".into(),
            ));
        }
        Ok(VecSubspace { field, h, r, gens })
    }

    pub fn field(&self) -> &Arc<ZechField> {
        &self.field
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn q(&self) -> u64 {
        crate::gf::poly::checked_pow(self.field.characteristic() as u64, self.h).unwrap()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn rank(&self) -> u32 {
        self.gens.len() as u32
    }

    pub fn gens(&self) -> &[Vec<Felt>] {
        &self.gens
    }

    /// All `q^rank` `F_q`-combinations of the generators. Errors if the
    /// generators are dependent (duplicate vectors appear) or the span
    /// exceeds `max_vectors`.
    pub fn enumerate(&self, max_vectors: u64) -> Result<Vec<Vec<Felt>>> {
        let q = self.q();
        let total = q
            .checked_pow(self.rank())
            .filter(|&t| t <= max_vectors)
            .ok_or(Error::BudgetExceeded {
                what: "subspace enumeration",
                needed: u64::MAX,
                allowed: max_vectors,
            })?;
        let f = &self.field;
        let scalars: Vec<Felt> = f.subfield_elements(self.h)?.collect();
        let mut vectors: Vec<Vec<Felt>> = vec![vec![Felt::ZERO; self.r]];
        for gen in &self.gens {
            let mut next = Vec::with_capacity(vectors.len() * scalars.len());
            for v in &vectors {
                for &lam in &scalars {
                    let mut w = v.clone();
                    for (wi, gi) in w.iter_mut().zip(gen) {
                        *wi = f.add(*wi, f.mul(lam, *gi));
                    }
                    next.push(w);
                }
            }
            vectors = next;
        }
        debug_assert_eq!(vectors.len() as u64, total);
        let distinct: std::collections::HashSet<&Vec<Felt>> = vectors.iter().collect();
        if distinct.len() as u64 != total {
            return Err(Error::InvalidInput(
                "generators are not F_q-independent".into(),
            ));
        }
        Ok(vectors)
    }
}

/// The classical scattered subspace of rank `t` on a line:
/// `U = {(x, x^q) : x in F_{q^t}}`.
pub fn pseudoregulus_line_u(field: Arc<ZechField>, h: u32) -> Result<VecSubspace> {
    if h == 0 || !field.degree().is_multiple_of(h) {
        return Err(Error::NotADivisor {
            candidate: h,
            modulus: field.degree(),
        });
    }
    let t = field.degree() / h;
    if t < 2 {
        return Err(Error::InvalidInput("pseudoregulus needs t >= 2".into()));
    }
    let g = field.generator();
    let gens = (0..t)
        .map(|j| {
            let beta = field.pow(g, j as i64)?;
            Ok(vec![beta, field.frobenius(beta, h)])
        })
        .collect::<Result<Vec<_>>>()?;
    VecSubspace::new(field, h, 2, gens)
}

/// Blockwise direct sum `U_1 ⊕ ... ⊕ U_m` inside `F_{q^t}^{r_1 + ... + r_m}`.
/// Every component must live over the same field and have `r_i >= 2`.
pub fn direct_sum(components: &[&VecSubspace]) -> Result<VecSubspace> {
    let first = components
        .first()
        .ok_or_else(|| Error::InvalidInput("direct sum of nothing".into()))?;
    let field = first.field.clone();
    let h = first.h;
    let mut r_total = 0usize;
    for c in components {
        if *c.field() != field || c.h != h {
            return Err(Error::FieldMismatch);
        }
        if c.r < 2 {
            return Err(Error::InvalidInput(
                "direct-sum components need dimension >= 2".into(),
            ));
        }
        r_total += c.r;
    }
    let mut gens = Vec::new();
    let mut offset = 0usize;
    for c in components {
        for g in &c.gens {
            let mut v = vec![Felt::ZERO; r_total];
            v[offset..offset + c.r].copy_from_slice(g);
            gens.push(v);
        }
        offset += c.r;
    }
    VecSubspace::new(field, h, r_total, gens)
}

/// The plane subspace `U = {f(x) + x*omega}` of a [`LinearSetSpec`],
/// converted to coordinate vectors in `F_{q^{2n}}^3`.
pub fn plane_subspace(spec: &LinearSetSpec) -> Result<VecSubspace> {
    let ambient: &Arc<PlaneAmbient> = &spec.ambient;
    let params = ambient.params();
    let k = ambient.k();
    let g = k.generator();
    let mut gens = Vec::with_capacity(3 * params.n as usize);
    for j in 0..3 * params.n {
        let x = k.pow(g, j as i64)?;
        let u = ambient.vector(spec.f.eval(x), x);
        gens.push(ambient.to_plane_triple(u)?.to_vec());
    }
    VecSubspace::new(ambient.plane().clone(), params.h, 3, gens)
}

/// A linear set in `PG(r-1, q^t)` enumerated from a [`VecSubspace`].
pub struct VectorLinearSet {
    pub field: Arc<ZechField>,
    pub r: usize,
    pub rank: u32,
    pub q: u64,
    /// canonical representative and weight, sorted by packed label
    pub points: Vec<(Vec<Felt>, u32)>,
}

impl VectorLinearSet {
    pub fn is_scattered(&self) -> bool {
        self.points.iter().all(|(_, w)| *w == 1)
    }

    pub fn expected_max_size(&self) -> u64 {
        (self.q.pow(self.rank) - 1) / (self.q - 1)
    }
}

fn pack_vector(field: &ZechField, v: &[Felt]) -> Result<u128> {
    let bits = 64 - (field.order() - 1).leading_zeros() as usize;
    if bits * v.len() > 128 {
        return Err(Error::BudgetExceeded {
            what: "vector label packing",
            needed: (bits * v.len()) as u64,
            allowed: 128,
        });
    }
    let mut label = 0u128;
    for (i, &c) in v.iter().enumerate() {
        label |= (field.encode(c) as u128) << (bits * i);
    }
    Ok(label)
}

/// Group the nonzero vectors of the subspace by `F_{q^t}`-proportionality
/// and convert fiber sizes into weights.
pub fn enumerate_vector_linear_set(
    space: &VecSubspace,
    max_vectors: u64,
) -> Result<VectorLinearSet> {
    let f = space.field();
    let q = space.q();
    let vectors = space.enumerate(max_vectors)?;

    let mut canon_of: HashMap<u128, Vec<Felt>> = HashMap::new();
    let mut tally: HashMap<u128, u64> = HashMap::new();
    for v in &vectors {
        let Some(j) = v.iter().position(|c| !c.is_zero()) else {
            continue; // the zero vector
        };
        let inv = f.inv(v[j])?;
        let canon: Vec<Felt> = v.iter().map(|&c| f.mul(c, inv)).collect();
        let label = pack_vector(f, &canon)?;
        canon_of.entry(label).or_insert(canon);
        *tally.entry(label).or_insert(0) += 1;
    }

    let mut labels: Vec<u128> = tally.keys().copied().collect();
    labels.sort_unstable();
    let rank = space.rank();
    let mut points = Vec::with_capacity(labels.len());
    let mut fiber_sum = 0u64;
    for label in labels {
        let size = tally[&label] + 1;
        let mut w = 0u32;
        let mut pw = 1u64;
        while pw < size {
            pw *= q;
            w += 1;
        }
        if pw != size {
            return Err(Error::InternalConsistency(format!(
                "fiber of size {} is not q^w - 1",
                size - 1
            )));
        }
        fiber_sum += size - 1;
        points.push((canon_of[&label].clone(), w));
    }
    if fiber_sum != q.pow(rank) - 1 {
        return Err(Error::InternalConsistency(
            "fibers do not partition the nonzero vectors".into(),
        ));
    }
    Ok(VectorLinearSet {
        field: f.clone(),
        r: space.r,
        rank,
        q,
        points,
    })
}

/// Cross-check helper: the plane enumeration and the vector enumeration of
/// the same spec must produce identical canonical points and weights.
pub fn agrees_with_plane_enumeration(ls: &LinearSet, vls: &VectorLinearSet) -> bool {
    if ls.points.len() != vls.points.len() {
        return false;
    }
    let mut a: Vec<([Felt; 3], u32)> = ls
        .points
        .iter()
        .map(|wp| (wp.point.coords, wp.weight))
        .collect();
    let mut b: Vec<([Felt; 3], u32)> = vls
        .points
        .iter()
        .map(|(v, w)| ([v[0], v[1], v[2]], *w))
        .collect();
    a.sort();
    b.sort();
    a == b
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::TowerParams;
    use crate::linset::enumerate::enumerate_points;
    use crate::linset::families::{build_family, FamilyParams};
    use crate::Budget;

    const MAX: u64 = 1 << 22;

    #[test]
    fn pseudoregulus_q2_t4() {
        let f = ZechField::new(2, 4, &Budget::default()).unwrap();
        let u = pseudoregulus_line_u(f.clone(), 1).unwrap();
        assert_eq!(u.rank(), 4);
        let vectors = u.enumerate(MAX).unwrap();
        assert_eq!(vectors.len(), 16);
        let ls = enumerate_vector_linear_set(&u, MAX).unwrap();
        assert_eq!(ls.points.len(), 15);
        assert!(ls.is_scattered());
        // no pair (x, x^q), (y, y^q) is proportional with ratio outside F_q
        for v in &vectors {
            for w in &vectors {
                let (Some(_), Some(j)) = (
                    v.iter().position(|c| !c.is_zero()),
                    w.iter().position(|c| !c.is_zero()),
                ) else {
                    continue;
                };
                let lam = f.div(v[j], w[j]).unwrap();
                if v.iter()
                    .zip(w)
                    .all(|(&vc, &wc)| vc == f.mul(lam, wc))
                {
                    assert!(f.in_subfield(lam, 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn pseudoregulus_q3_t2() {
        let f = ZechField::new(3, 2, &Budget::default()).unwrap();
        let u = pseudoregulus_line_u(f.clone(), 1).unwrap();
        assert_eq!(u.enumerate(MAX).unwrap().len(), 9);
        let ls = enumerate_vector_linear_set(&u, MAX).unwrap();
        assert_eq!(ls.points.len(), 4);
        assert!(ls.is_scattered());
    }

    fn monomial_spec22() -> LinearSetSpec {
        let amb =
            PlaneAmbient::new(TowerParams::new(2, 1, 2).unwrap(), &Budget::default()).unwrap();
        let params = amb.params();
        let k = amb.k();
        let a = k
            .elements()
            .skip(1)
            .find(|&a| {
                let nm = k.norm(a, params.deg_q3n(), 3 * params.h).unwrap();
                !k.in_subfield(nm, params.deg_q()).unwrap()
            })
            .unwrap();
        build_family(amb, FamilyParams::Monomial { i: 3, a }).unwrap()
    }

    #[test]
    fn plane_subspace_agrees_with_direct_enumeration() {
        let spec = monomial_spec22();
        let ls = enumerate_points(&spec).unwrap();
        let sub = plane_subspace(&spec).unwrap();
        assert_eq!(sub.rank(), 6);
        let vls = enumerate_vector_linear_set(&sub, MAX).unwrap();
        assert!(agrees_with_plane_enumeration(&ls, &vls));
    }

    #[test]
    fn direct_sum_plane_plus_line() {
        let spec = monomial_spec22();
        let plane_u = plane_subspace(&spec).unwrap();
        let line_u = pseudoregulus_line_u(spec.ambient.plane().clone(), 1).unwrap();
        let w = direct_sum(&[&plane_u, &line_u]).unwrap();
        assert_eq!(w.r(), 5);
        assert_eq!(w.rank(), 10);
        let ls = enumerate_vector_linear_set(&w, MAX).unwrap();
        assert_eq!(ls.points.len(), 1023);
        assert!(ls.is_scattered());
        assert_eq!(ls.expected_max_size(), 1023);
    }

    #[test]
    fn direct_sum_single_component_is_identity() {
        let spec = monomial_spec22();
        let plane_u = plane_subspace(&spec).unwrap();
        let w = direct_sum(&[&plane_u]).unwrap();
        assert_eq!(w.r(), 3);
        let a = enumerate_vector_linear_set(&plane_u, MAX).unwrap();
        let b = enumerate_vector_linear_set(&w, MAX).unwrap();
        assert_eq!(a.points.len(), b.points.len());
        assert_eq!(a.points, b.points);
    }

    #[test]
    fn direct_sum_validation() {
        let f16 = ZechField::new(2, 4, &Budget::default()).unwrap();
        let f256 = ZechField::new(2, 8, &Budget::default()).unwrap();
        let a = pseudoregulus_line_u(f16.clone(), 1).unwrap();
        let b = pseudoregulus_line_u(f256.clone(), 1).unwrap();
        assert!(matches!(
            direct_sum(&[&a, &b]),
            Err(Error::FieldMismatch)
        ));
        // dimension-1 components are rejected
        let thin = VecSubspace::new(f16.clone(), 1, 1, vec![vec![f16.one()]]).unwrap();
        assert!(direct_sum(&[&a, &thin]).is_err());
    }

    #[test]
    fn dependent_generators_are_caught() {
        let f = ZechField::new(2, 4, &Budget::default()).unwrap();
        let g = f.generator();
        let dep = VecSubspace::new(
            f.clone(),
            1,
            2,
            vec![vec![f.one(), g], vec![f.one(), g]],
        )
        .unwrap();
        assert!(dep.enumerate(MAX).is_err());
    }
}
