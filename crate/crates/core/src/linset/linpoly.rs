//! Linearized (q-)polynomials acting on `F_{q^{3n}}`.

use std::sync::Arc;

use crate::gf::{Felt, ZechField};
use crate::{Error, Result};

/// An `F_p`-linear map `f(x) = sum_j a_j x^{p^j}` on a Zech field, with the
/// coefficient vector indexed by `p`-powers `0 <= j < m`. Maps used by the
/// linear-set constructions are `F_q`-linear, i.e. supported on indices that
/// are multiples of `h`; the `q`-power view exposes those.
#[derive(Clone)]
pub struct LinPoly {
    field: Arc<ZechField>,
    h: u32,
    coeffs: Vec<Felt>,
    /// cached nonzero terms: (coefficient, p^j mod (order-1))
    terms: Vec<(Felt, u64)>,
}

impl PartialEq for LinPoly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.h == other.h && self.coeffs == other.coeffs
    }
}
impl Eq for LinPoly {}

impl std::fmt::Debug for LinPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "LinPoly(")?;
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "{}·x^(p^{j})", self.field.encode(*c))?;
                first = false;
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, ")")
    }
}

impl LinPoly {
    pub fn new(field: Arc<ZechField>, h: u32, coeffs: Vec<Felt>) -> Result<Self> {
        let m = field.degree() as usize;
        if coeffs.len() != m {
            return Err(Error::InvalidInput(format!(
                "coefficient vector must have length {m}"
            )));
        }
        if h == 0 || !field.degree().is_multiple_of(h) {
            return Err(Error::NotADivisor {
                candidate: h,
                modulus: field.degree(),
            });
        }
        let group = field.group_order();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, &c)| (c, crate::gf::poly::mod_pow(field.characteristic() as u64, j as u64, group)))
            .collect();
        Ok(LinPoly {
            field,
            h,
            coeffs,
            terms,
        })
    }

    pub fn zero(field: Arc<ZechField>, h: u32) -> Result<Self> {
        let m = field.degree() as usize;
        Self::new(field, h, vec![Felt::ZERO; m])
    }

    /// Build from `q`-power indexed coefficients `(i, a_i)`, `f = sum a_i x^{q^i}`.
    pub fn from_q_powers(field: Arc<ZechField>, h: u32, q_coeffs: &[(u32, Felt)]) -> Result<Self> {
        let m = field.degree();
        if h == 0 || !m.is_multiple_of(h) {
            return Err(Error::NotADivisor {
                candidate: h,
                modulus: m,
            });
        }
        let q_len = m / h;
        let mut coeffs = vec![Felt::ZERO; m as usize];
        for &(i, a) in q_coeffs {
            if i >= q_len {
                return Err(Error::InvalidInput(format!(
                    "q-power index {i} out of range (must be < {q_len})"
                )));
            }
            let j = (i * h) as usize;
            coeffs[j] = field.add(coeffs[j], a);
        }
        Self::new(field, h, coeffs)
    }

    /// `f(x) = x`.
    pub fn identity(field: Arc<ZechField>, h: u32) -> Result<Self> {
        let one = field.one();
        Self::from_q_powers(field, h, &[(0, one)])
    }

    /// `f(x) = a x^{q^i}`.
    pub fn monomial(field: Arc<ZechField>, h: u32, i: u32, a: Felt) -> Result<Self> {
        Self::from_q_powers(field, h, &[(i, a)])
    }

    /// `f(x) = a x^{q^i} + b x^{q^{2n+i}}` on `F_{q^{3n}}` (exponents mod `3n`).
    pub fn binomial(
        field: Arc<ZechField>,
        h: u32,
        n: u32,
        i: u32,
        a: Felt,
        b: Felt,
    ) -> Result<Self> {
        let q_len = field.degree() / h;
        if q_len != 3 * n {
            return Err(Error::InvalidInput(format!(
                "field degree {} is not 3n·h for n={n}, h={h}",
                field.degree()
            )));
        }
        let j = (2 * n + i) % (3 * n);
        Self::from_q_powers(field, h, &[(i, a), (j, b)])
    }

    pub fn field(&self) -> &Arc<ZechField> {
        &self.field
    }

    pub fn h(&self) -> u32 {
        self.h
    }

    pub fn coeffs(&self) -> &[Felt] {
        &self.coeffs
    }

    pub fn is_zero_map(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff all support lies on `q`-power indices, i.e. the map is
    /// `F_q`-linear and not merely `F_p`-linear.
    pub fn is_q_linear(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(j, c)| c.is_zero() || (j as u32).is_multiple_of(self.h))
    }

    /// The `q`-power view `[(i, a_i)]` of a `q`-linear map.
    pub fn q_coeffs(&self) -> Vec<(u32, Felt)> {
        debug_assert!(self.is_q_linear());
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, &c)| (j as u32 / self.h, c))
            .collect()
    }

    pub fn eval(&self, x: Felt) -> Felt {
        match x.log() {
            None => Felt::ZERO,
            Some(l) => {
                let group = self.field.group_order();
                let mut acc = Felt::ZERO;
                for &(c, pj) in &self.terms {
                    let xl = ((l as u128 * pj as u128) % group as u128) as u64;
                    acc = self.field.add(acc, self.field.mul(c, self.field.felt_from_log(xl)));
                }
                acc
            }
        }
    }

    /// The adjoint with respect to the bilinear form
    /// `<x,y> = Tr_{q^{3n}/q}(xy)`: for `f = sum a_i x^{q^i}` this is
    /// `sum a_i^{q^{m'-i}} x^{q^{m'-i}}` with `m' = deg/h`.
    pub fn adjoint(&self) -> Result<LinPoly> {
        if !self.is_q_linear() {
            return Err(Error::InvalidInput(
                "adjoint is defined for F_q-linear maps".into(),
            ));
        }
        let q_len = self.field.degree() / self.h;
        let adj: Vec<(u32, Felt)> = self
            .q_coeffs()
            .into_iter()
            .map(|(i, a)| {
                let k = q_len - i; // q^{q_len} acts as identity
                ((k % q_len), self.field.frobenius_q(a, self.h, k))
            })
            .collect();
        Self::from_q_powers(self.field.clone(), self.h, &adj)
    }
}
