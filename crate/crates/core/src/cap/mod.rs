//! Translation caps in `AG(r, 2^t)`, their products and doubling, and
//! exhaustive cap/completeness certification.

pub mod file;
pub mod pipeline;

pub use pipeline::{build_complete_cap, seed_scattered_spec, SeedFamily};

use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use crate::gf::{Felt, ZechField};
use crate::linset::VecSubspace;
use crate::{Error, Result};

/// Coordinates of an affine point of `AG(r, 2^t)`.
pub type AffinePoint = Vec<Felt>;

/// An additive subgroup `G` of `F_{2^t}^r` together with its point set
/// `K_G`. Points are kept sorted by their mixed-radix index, so equal groups
/// always produce identical point lists.
pub struct TranslationCap {
    field: Arc<ZechField>,
    r: usize,
    basis: Vec<AffinePoint>,
    points: Vec<AffinePoint>,
}

impl TranslationCap {
    /// Build the group generated by `F_2`-independent vectors.
    pub fn from_basis(
        field: Arc<ZechField>,
        r: usize,
        basis: Vec<AffinePoint>,
    ) -> Result<TranslationCap> {
        if field.characteristic() != 2 {
            return Err(Error::InvalidInput("caps live over F_{2^t}".into()));
        }
        if field.degree() < 2 {
            return Err(Error::InvalidInput(
                "t must be at least 2 (AG(r,2) is degenerate)".into(),
            ));
        }
        if r == 0 {
            return Err(Error::InvalidInput("dimension r must be >= 1".into()));
        }
        if basis.iter().any(|v| v.len() != r) {
            return Err(Error::InvalidInput("basis vectors must have length r".into()));
        }
        if basis.len() as u32 > 63 {
            return Err(Error::BudgetExceeded {
                what: "cap group",
                needed: u64::MAX,
                allowed: 1 << 63,
            });
        }
        let mut points: Vec<AffinePoint> = vec![vec![Felt::ZERO; r]];
        for b in &basis {
            let mut next = Vec::with_capacity(points.len() * 2);
            for p in &points {
                next.push(p.clone());
                next.push(p.iter().zip(b).map(|(&x, &y)| field.add(x, y)).collect());
            }
            points = next;
        }
        let distinct: HashSet<&AffinePoint> = points.iter().collect();
        if distinct.len() != points.len() {
            return Err(Error::InvalidInput(
                "basis vectors are not F_2-independent".into(),
            ));
        }
        let mut cap = TranslationCap {
            field,
            r,
            basis,
            points,
        };
        cap.sort_points()?;
        Ok(cap)
    }

    /// Interpret a raw point list as an additive group, recovering a basis
    /// by Gaussian elimination over `F_2`. Errors if the points are not
    /// exactly a subgroup of `F_{2^t}^r`.
    pub fn from_points(
        field: Arc<ZechField>,
        r: usize,
        points: Vec<AffinePoint>,
    ) -> Result<TranslationCap> {
        let bits = r as u32 * field.degree();
        if bits > 63 {
            return Err(Error::BudgetExceeded {
                what: "group bit vectors",
                needed: bits as u64,
                allowed: 63,
            });
        }
        let idx = |p: &AffinePoint| -> u64 { point_index(&field, p) };
        let set: HashSet<u64> = points.iter().map(&idx).collect();
        if set.len() != points.len() {
            return Err(Error::InvalidInput("duplicate points".into()));
        }
        if !set.contains(&0) {
            return Err(Error::InvalidInput("the group must contain 0".into()));
        }
        // F_2 sieve: coordinatewise addition is XOR of bit-packed indices
        let mut pivots: Vec<u64> = Vec::new();
        for p in &points {
            let mut v = idx(p);
            for &b in &pivots {
                if (v ^ b) < v {
                    v ^= b;
                }
            }
            if v != 0 {
                pivots.push(v);
                pivots.sort_unstable_by(|a, b| b.cmp(a));
            }
        }
        if 1u64 << pivots.len() != points.len() as u64 {
            return Err(Error::InvalidInput(
                "points do not form an additive group".into(),
            ));
        }
        // the span of the recovered basis must reproduce the set
        let basis: Vec<AffinePoint> = pivots
            .iter()
            .map(|&v| point_from_index(&field, r, v))
            .collect::<Result<Vec<_>>>()?;
        let cap = Self::from_basis(field, r, basis)?;
        let rebuilt: HashSet<u64> = cap.points.iter().map(|p| point_index(&cap.field, p)).collect();
        if rebuilt != set {
            return Err(Error::InvalidInput(
                "points do not form an additive group".into(),
            ));
        }
        Ok(cap)
    }

    fn sort_points(&mut self) -> Result<()> {
        let field = self.field.clone();
        self.points.sort_by_key(|p| point_index(&field, p));
        Ok(())
    }

    pub fn field(&self) -> &Arc<ZechField> {
        &self.field
    }

    pub fn t(&self) -> u32 {
        self.field.degree()
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn size(&self) -> u64 {
        self.points.len() as u64
    }

    pub fn basis(&self) -> &[AffinePoint] {
        &self.basis
    }

    pub fn points(&self) -> &[AffinePoint] {
        &self.points
    }

    /// `|K_G| = 2^{rt/2}`, the maximum possible for a translation cap.
    pub fn has_maximal_size(&self) -> bool {
        let rt = self.r as u64 * self.t() as u64;
        rt.is_multiple_of(2) && self.size() == 1u64 << (rt / 2)
    }
}

/// Mixed-radix index `sum enc(c_j) * 2^(t*j)`; collision-free and
/// deterministic.
pub fn point_index(field: &ZechField, p: &AffinePoint) -> u64 {
    let t = field.degree();
    p.iter()
        .enumerate()
        .fold(0u64, |acc, (j, &c)| acc | (field.encode(c) << (t as u64 * j as u64)))
}

pub fn point_from_index(field: &ZechField, r: usize, mut idx: u64) -> Result<AffinePoint> {
    let t = field.degree();
    let mask = field.order() - 1;
    let mut out = Vec::with_capacity(r);
    for _ in 0..r {
        out.push(field.decode(idx & mask)?);
        idx >>= t;
    }
    if idx != 0 {
        return Err(Error::InvalidInput("point index out of range".into()));
    }
    Ok(out)
}

/// Group route: an additive subgroup is a cap iff every two distinct
/// nonzero elements are `F_{2^t}`-independent. Explicit pairwise scalar
/// check.
pub fn is_translation_cap(cap: &TranslationCap) -> Result<bool> {
    let f = cap.field();
    let pts = cap.points();
    for (i, u) in pts.iter().enumerate() {
        if u.iter().all(|c| c.is_zero()) {
            continue;
        }
        for v in pts.iter().skip(i + 1) {
            let Some(j) = v.iter().position(|c| !c.is_zero()) else {
                continue;
            };
            if u[j].is_zero() {
                continue;
            }
            let lam = f.div(u[j], v[j])?;
            if u.iter().zip(v).all(|(&uc, &vc)| uc == f.mul(lam, vc)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Generic route: no three points collinear, via secant-direction hashing
/// per base point. Point multisets with duplicates are not caps.
pub fn is_cap_generic(field: &ZechField, points: &[AffinePoint]) -> Result<bool> {
    let n = points.len();
    if n <= 2 {
        let set: HashSet<u64> = points.iter().map(|p| point_index(field, p)).collect();
        return Ok(set.len() == n);
    }
    let set: HashSet<u64> = points.iter().map(|p| point_index(field, p)).collect();
    if set.len() != n {
        return Ok(false);
    }
    for (i, base) in points.iter().enumerate() {
        let mut dirs: HashSet<u64> = HashSet::with_capacity(n - i);
        for other in points.iter().skip(i + 1) {
            // direction base -> other, normalised by its first nonzero entry
            let mut dir: AffinePoint = base
                .iter()
                .zip(other)
                .map(|(&a, &b)| field.add(a, b))
                .collect();
            let j = dir.iter().position(|c| !c.is_zero()).unwrap();
            let inv = field.inv(dir[j])?;
            for c in dir.iter_mut() {
                *c = field.mul(*c, inv);
            }
            if !dirs.insert(point_index(field, &dir)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The conic `{(x, x^2) : x in F_{2^t}}`: a maximal translation cap in
/// `AG(2, 2^t)`.
pub fn conic_cap(field: Arc<ZechField>) -> Result<TranslationCap> {
    let g = field.generator();
    let basis = (0..field.degree())
        .map(|j| {
            let b = field.pow(g, j as i64)?;
            Ok(vec![b, field.mul(b, b)])
        })
        .collect::<Result<Vec<_>>>()?;
    TranslationCap::from_basis(field, 2, basis)
}

/// Coordinate-concatenated product of two maximal translation caps, itself
/// a maximal translation cap in `AG(r + r', 2^t)`.
pub fn product_cap(c1: &TranslationCap, c2: &TranslationCap) -> Result<TranslationCap> {
    if c1.field() != c2.field() {
        return Err(Error::FieldMismatch);
    }
    if !c1.has_maximal_size() || !c2.has_maximal_size() {
        return Err(Error::InvalidInput(
            "the product construction requires maximal translation caps".into(),
        ));
    }
    let r = c1.r + c2.r;
    let mut basis = Vec::with_capacity(c1.basis.len() + c2.basis.len());
    for b in &c1.basis {
        let mut v = b.clone();
        v.extend(std::iter::repeat_n(Felt::ZERO, c2.r));
        basis.push(v);
    }
    for b in &c2.basis {
        let mut v = vec![Felt::ZERO; c1.r];
        v.extend_from_slice(b);
        basis.push(v);
    }
    let cap = TranslationCap::from_basis(c1.field.clone(), r, basis)?;
    debug_assert_eq!(cap.size(), c1.size() * c2.size());
    Ok(cap)
}

/// The doubling construction `K_{G x {0,1}}`: a maximal translation cap in
/// `AG(r, 2^t)` becomes a complete cap of twice the size in `AG(r+1, 2^t)`.
pub fn doubling(cap: &TranslationCap) -> Result<TranslationCap> {
    if !cap.has_maximal_size() {
        return Err(Error::InvalidInput(
            "doubling requires a maximal translation cap".into(),
        ));
    }
    let r = cap.r + 1;
    let mut basis: Vec<AffinePoint> = cap
        .basis
        .iter()
        .map(|b| {
            let mut v = b.clone();
            v.push(Felt::ZERO);
            v
        })
        .collect();
    let mut last = vec![Felt::ZERO; r];
    last[r - 1] = cap.field.one();
    basis.push(last);
    TranslationCap::from_basis(cap.field.clone(), r, basis)
}

/// Exhaustive completeness census: mark all `2^t` points of the line through
/// every pair of cap points in a bitmap over all of `AG(r, 2^t)`, then count
/// what is left uncovered. Returns `(complete, uncovered, covered)`.
pub fn is_complete(
    field: &ZechField,
    r: usize,
    points: &[AffinePoint],
    max_bitmap_bits: u64,
) -> Result<(bool, u64, u64)> {
    let t = field.degree();
    let bits = r as u32 * t;
    if bits > 40 {
        return Err(Error::BudgetExceeded {
            what: "completeness bitmap",
            needed: u64::MAX,
            allowed: max_bitmap_bits,
        });
    }
    let space: u64 = 1u64 << bits;
    if space > max_bitmap_bits {
        return Err(Error::BudgetExceeded {
            what: "completeness bitmap",
            needed: space,
            allowed: max_bitmap_bits,
        });
    }
    let mut bitmap = vec![0u64; (space as usize).div_ceil(64)];
    let lambdas: Vec<Felt> = field.elements().collect();
    let mut mark = |i: u64| {
        bitmap[(i >> 6) as usize] |= 1u64 << (i & 63);
    };
    for (i, p) in points.iter().enumerate() {
        for q in points.iter().skip(i + 1) {
            // the affine line {P + lam*(Q - P)}; subtraction is addition here
            let dir: AffinePoint = p.iter().zip(q).map(|(&a, &b)| field.add(a, b)).collect();
            for &lam in &lambdas {
                let pt: AffinePoint = p
                    .iter()
                    .zip(&dir)
                    .map(|(&a, &d)| field.add(a, field.mul(lam, d)))
                    .collect();
                mark(point_index(field, &pt));
            }
        }
    }
    let covered: u64 = bitmap.iter().map(|w| w.count_ones() as u64).sum();
    let uncovered = space - covered;
    Ok((uncovered == 0, uncovered, covered))
}

/// The translation cap corresponding to a scattered `F_2`-subspace of
/// `F_{2^t}^r` (coordinates of each `u` over `F_{2^t}`). The structural map
/// always succeeds; whether the result really is a cap is reported by the
/// property checks, so non-scattered inputs surface as `is_cap = false`
/// rather than an error.
pub fn cap_from_linear_set(sub: &VecSubspace) -> Result<TranslationCap> {
    if sub.q() != 2 {
        return Err(Error::InvalidInput(
            "the cap correspondence requires the binary base field (q = 2)".into(),
        ));
    }
    TranslationCap::from_basis(sub.field().clone(), sub.r(), sub.gens().to_vec())
}

/// Machine-checkable certificate of every verified cap property. Every
/// verdict is backed by a count; completeness fields stay `None` when the
/// bitmap budget rules the census out.
#[derive(Debug, Clone, Serialize)]
pub struct CapCertificate {
    pub p: u32,
    pub t: u32,
    pub r: usize,
    pub size: u64,
    pub modulus: u64,
    pub is_cap: bool,
    pub is_translation: bool,
    pub is_maximal_translation: bool,
    pub is_complete: Option<bool>,
    pub covered: Option<u64>,
    pub uncovered: Option<u64>,
    pub space_size: Option<u64>,
    pub secant_count: u64,
    pub method: Vec<String>,
}

impl CapCertificate {
    pub fn all_core_properties_hold(&self) -> bool {
        self.is_cap && self.is_translation
    }

    /// Line-oriented key/value rendering.
    pub fn to_kv(&self) -> String {
        let mut s = String::new();
        s.push_str("scatcap-cap-certificate v1\n");
        s.push_str(&format!("p {}\n", self.p));
        s.push_str(&format!("t {}\n", self.t));
        s.push_str(&format!("r {}\n", self.r));
        s.push_str(&format!("size {}\n", self.size));
        s.push_str(&format!("modulus {}\n", self.modulus));
        s.push_str(&format!("is_cap {}\n", self.is_cap));
        s.push_str(&format!("is_translation {}\n", self.is_translation));
        s.push_str(&format!(
            "is_maximal_translation {}\n",
            self.is_maximal_translation
        ));
        match self.is_complete {
            Some(c) => s.push_str(&format!("is_complete {c}\n")),
            None => s.push_str("is_complete skipped(budget)\n"),
        }
        if let (Some(cov), Some(unc), Some(space)) =
            (self.covered, self.uncovered, self.space_size)
        {
            s.push_str(&format!("covered {cov}\n"));
            s.push_str(&format!("uncovered {unc}\n"));
            s.push_str(&format!("space {space}\n"));
        }
        s.push_str(&format!("secants {}\n", self.secant_count));
        for m in &self.method {
            s.push_str(&format!("method {m}\n"));
        }
        s
    }
}

/// Run every check on a raw point list and assemble the certificate.
pub fn certify_points(
    field: &Arc<ZechField>,
    r: usize,
    points: &[AffinePoint],
    max_bitmap_bits: u64,
    method: Vec<String>,
) -> Result<CapCertificate> {
    let is_cap = is_cap_generic(field, points)?;
    let group = TranslationCap::from_points(field.clone(), r, points.to_vec()).ok();
    let is_translation = match &group {
        Some(cap) => is_translation_cap(cap)?,
        None => false,
    };
    let is_maximal = is_translation
        && group
            .as_ref()
            .map(|c| c.has_maximal_size())
            .unwrap_or(false);
    let n = points.len() as u64;
    let secant_count = n * n.saturating_sub(1) / 2;
    let (is_complete_v, covered, uncovered, space) =
        match is_complete(field, r, points, max_bitmap_bits) {
            Ok((c, unc, cov)) => {
                let bits = r as u32 * field.degree();
                (Some(c), Some(cov), Some(unc), Some(1u64 << bits))
            }
            Err(Error::BudgetExceeded { .. }) => (None, None, None, None),
            Err(e) => return Err(e),
        };
    // a complete set of >2 points that is not a cap is still reported, but
    // the completeness flag only means "secants cover everything"
    let cert = CapCertificate {
        p: field.characteristic(),
        t: field.degree(),
        r,
        size: n,
        modulus: field.modulus(),
        is_cap,
        is_translation,
        is_maximal_translation: is_maximal,
        is_complete: is_complete_v.map(|c| c && is_cap),
        covered,
        uncovered,
        space_size: space,
        secant_count,
        method,
    };
    Ok(cert)
}

/// Convenience that pairs a hash-set method tag with the points of a cap.
pub fn certify_cap(
    cap: &TranslationCap,
    max_bitmap_bits: u64,
    method: Vec<String>,
) -> Result<CapCertificate> {
    certify_points(cap.field(), cap.r(), cap.points(), max_bitmap_bits, method)
}
