//! Discrete-log finite fields with Zech-logarithm addition.
//!
//! A field `F_{p^m}` is stored as three tables indexed by discrete logs with
//! respect to the root `g = x mod modulus` of a primitive modulus: `exp`
//! (log to integer encoding), `log` (encoding to log) and `zech`
//! (`zech[k] = log(1 + g^k)`). All arithmetic, Frobenius maps, norms,
//! traces and subfield tests then run in O(1) table lookups.

use std::sync::Arc;

use super::poly;
use crate::{Budget, Error, Result};

const SENTINEL: u32 = u32::MAX;

/// An element of a [`ZechField`], stored as a discrete log (or zero).
///
/// A `Felt` carries no reference to its field; callers keep elements together
/// with the field that produced them, as every operation goes through the
/// field object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Felt(u32);

impl Felt {
    pub const ZERO: Felt = Felt(SENTINEL);

    pub fn is_zero(self) -> bool {
        self.0 == SENTINEL
    }

    /// Discrete log of a nonzero element.
    pub fn log(self) -> Option<u64> {
        if self.is_zero() {
            None
        } else {
            Some(self.0 as u64)
        }
    }

    pub(crate) fn from_log(log: u64) -> Felt {
        debug_assert!(log < SENTINEL as u64);
        Felt(log as u32)
    }
}

/// `F_{p^m}` with full log/antilog/Zech tables.
pub struct ZechField {
    p: u32,
    degree: u32,
    order: u64,
    group: u64,
    modulus: u64,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    /// log of -1 (0 in characteristic 2).
    neg_log: u64,
}

impl PartialEq for ZechField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.degree == other.degree && self.modulus == other.modulus
    }
}
impl Eq for ZechField {}

impl std::fmt::Debug for ZechField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ZechField(p={}, m={}, modulus={})",
            self.p, self.degree, self.modulus
        )
    }
}

impl ZechField {
    /// Build `F_{p^m}` with the canonical (lexicographically first primitive)
    /// modulus. Same `(p, m)` always yields bit-identical tables.
    pub fn new(p: u32, degree: u32, budget: &Budget) -> Result<Arc<ZechField>> {
        Self::validate_size(p, degree, budget)?;
        let modulus = poly::canonical_primitive_modulus(p, degree);
        Self::from_modulus_unchecked(p, degree, modulus)
    }

    /// Build with an explicitly supplied modulus (for re-verifying artifacts
    /// that carry their own field description). The modulus must be primitive.
    pub fn with_modulus(p: u32, degree: u32, modulus: u64, budget: &Budget) -> Result<Arc<ZechField>> {
        Self::validate_size(p, degree, budget)?;
        if !poly::is_primitive_modulus(p, degree, modulus) {
            return Err(Error::InvalidInput(format!(
                "{} is not a primitive degree-{degree} modulus over F_{p}",
                modulus
            )));
        }
        Self::from_modulus_unchecked(p, degree, modulus)
    }

    fn validate_size(p: u32, degree: u32, budget: &Budget) -> Result<()> {
        if !poly::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if degree == 0 {
            return Err(Error::InvalidInput("degree must be positive".into()));
        }
        match poly::checked_pow(p as u64, degree) {
            Some(o) if o <= (1 << 31) && o <= budget.max_field_elements => Ok(()),
            Some(o) => Err(Error::BudgetExceeded {
                what: "field table",
                needed: o,
                allowed: budget.max_field_elements,
            }),
            None => Err(Error::BudgetExceeded {
                what: "field table",
                needed: u64::MAX,
                allowed: budget.max_field_elements,
            }),
        }
    }

    fn from_modulus_unchecked(p: u32, degree: u32, modulus: u64) -> Result<Arc<ZechField>> {
        let order = poly::checked_pow(p as u64, degree).unwrap();
        let group = order - 1;
        let mut exp = vec![0u32; group as usize];
        let mut log = vec![SENTINEL; order as usize];

        if p == 2 {
            // mul-by-x is shift+conditional-xor in the bit encoding
            let mut cur: u64 = 1;
            for k in 0..group {
                exp[k as usize] = cur as u32;
                log[cur as usize] = k as u32;
                cur <<= 1;
                if cur & order != 0 {
                    cur ^= modulus;
                }
            }
            debug_assert_eq!(
                {
                    let mut c = exp[(group - 1) as usize] as u64;
                    c <<= 1;
                    if c & order != 0 {
                        c ^= modulus;
                    }
                    c
                },
                1
            );
        } else {
            let m = degree as usize;
            let mod_digits = poly::digits(modulus, p, m + 1);
            let mut cur = vec![0u32; m + 1];
            cur[0] = 1;
            for k in 0..group {
                let enc = poly::encode(&cur[..m], p);
                exp[k as usize] = enc as u32;
                log[enc as usize] = k as u32;
                // multiply by x, then reduce by the monic modulus
                for i in (0..m).rev() {
                    cur[i + 1] = cur[i];
                }
                cur[0] = 0;
                let c = cur[m];
                if c != 0 {
                    cur[m] = 0;
                    for j in 0..m {
                        let sub = (c * mod_digits[j]) % p;
                        cur[j] = (cur[j] + p - sub) % p;
                    }
                }
            }
        }

        let mut zech = vec![SENTINEL; group as usize];
        for k in 0..group as usize {
            let e = exp[k] as u64;
            let c = e % p as u64;
            let bumped = e - c + (c + 1) % p as u64;
            if bumped != 0 {
                zech[k] = log[bumped as usize];
            }
        }

        let neg_log = if p == 2 { 0 } else { group / 2 };

        Ok(Arc::new(ZechField {
            p,
            degree,
            order,
            group,
            modulus,
            exp,
            log,
            zech,
            neg_log,
        }))
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `p^m`, the number of elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// `p^m - 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> u64 {
        self.group
    }

    /// Integer encoding of the monic modulus (leading term included).
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn modulus_pretty(&self) -> String {
        poly::pretty(self.modulus, self.p, self.degree)
    }

    pub fn zero(&self) -> Felt {
        Felt::ZERO
    }

    pub fn one(&self) -> Felt {
        Felt(0)
    }

    /// The fixed primitive element `g` (the root of the modulus).
    pub fn generator(&self) -> Felt {
        if self.group == 1 {
            Felt(0)
        } else {
            Felt(1)
        }
    }

    /// Integer encoding `sum c_i p^i` of the coefficient vector over `F_p`.
    pub fn encode(&self, x: Felt) -> u64 {
        if x.is_zero() {
            0
        } else {
            self.exp[x.0 as usize] as u64
        }
    }

    pub fn decode(&self, enc: u64) -> Result<Felt> {
        if enc >= self.order {
            return Err(Error::InvalidInput(format!(
                "encoding {enc} out of range for a field of order {}",
                self.order
            )));
        }
        if enc == 0 {
            Ok(Felt::ZERO)
        } else {
            Ok(Felt(self.log[enc as usize]))
        }
    }

    /// The constant `s` viewed as an element of the prime subfield.
    pub fn scalar(&self, s: u32) -> Felt {
        let s = s % self.p;
        if s == 0 {
            Felt::ZERO
        } else {
            Felt(self.log[s as usize])
        }
    }

    pub fn felt_from_log(&self, log: u64) -> Felt {
        Felt((log % self.group) as u32)
    }

    pub fn add(&self, a: Felt, b: Felt) -> Felt {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let (i, j) = (a.0 as u64, b.0 as u64);
        // g^i + g^j = g^i (1 + g^{j-i})
        let d = (j + self.group - i) % self.group;
        let z = self.zech[d as usize];
        if z == SENTINEL {
            Felt::ZERO
        } else {
            Felt(((i + z as u64) % self.group) as u32)
        }
    }

    pub fn neg(&self, a: Felt) -> Felt {
        if a.is_zero() || self.p == 2 {
            a
        } else {
            Felt(((a.0 as u64 + self.neg_log) % self.group) as u32)
        }
    }

    pub fn sub(&self, a: Felt, b: Felt) -> Felt {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Felt, b: Felt) -> Felt {
        if a.is_zero() || b.is_zero() {
            return Felt::ZERO;
        }
        Felt(((a.0 as u64 + b.0 as u64) % self.group) as u32)
    }

    pub fn inv(&self, a: Felt) -> Result<Felt> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(Felt(((self.group - a.0 as u64) % self.group) as u32))
    }

    pub fn div(&self, a: Felt, b: Felt) -> Result<Felt> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Felt, e: i64) -> Result<Felt> {
        if a.is_zero() {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Ok(Felt::ZERO),
                std::cmp::Ordering::Equal => Ok(self.one()),
                std::cmp::Ordering::Less => Err(Error::ZeroInverse),
            };
        }
        let e = e.rem_euclid(self.group as i64) as u64;
        Ok(Felt((((a.0 as u64 as u128 * e as u128) % self.group as u128) as u64) as u32))
    }

    /// `x^(p^k)`; in log representation the exponent is multiplied by
    /// `p^k mod (p^m - 1)`, so any `k >= 0` costs O(log k).
    pub fn frobenius(&self, x: Felt, k: u32) -> Felt {
        if x.is_zero() {
            return x;
        }
        let mult = poly::mod_pow(self.p as u64, k as u64, self.group);
        Felt(((x.0 as u64 as u128 * mult as u128) % self.group as u128) as u64 as u32)
    }

    /// `x^(q^k)` for `q = p^h`.
    pub fn frobenius_q(&self, x: Felt, h: u32, k: u32) -> Felt {
        self.frobenius(x, h.checked_mul(k).expect("q-power index fits u32"))
    }

    fn check_divisor(&self, d: u32) -> Result<()> {
        if d == 0 || !self.degree.is_multiple_of(d) {
            Err(Error::NotADivisor {
                candidate: d,
                modulus: self.degree,
            })
        } else {
            Ok(())
        }
    }

    /// `(p^m - 1) / (p^d - 1)`: the index of `F_{p^d}^*` in the full
    /// multiplicative group. Nonzero `x` lies in `F_{p^d}` iff this divides
    /// its log.
    pub fn subfield_cofactor(&self, d: u32) -> Result<u64> {
        self.check_divisor(d)?;
        Ok(self.group / (poly::checked_pow(self.p as u64, d).unwrap() - 1))
    }

    pub fn in_subfield(&self, x: Felt, d: u32) -> Result<bool> {
        let cof = self.subfield_cofactor(d)?;
        Ok(x.is_zero() || (x.0 as u64).is_multiple_of(cof))
    }

    /// All `p^d` elements of the degree-`d` subfield: zero first, then by
    /// increasing log.
    pub fn subfield_elements(&self, d: u32) -> Result<impl Iterator<Item = Felt> + '_> {
        let cof = self.subfield_cofactor(d)?;
        let count = poly::checked_pow(self.p as u64, d).unwrap() - 1;
        Ok(std::iter::once(Felt::ZERO).chain((0..count).map(move |j| Felt((j * cof) as u32))))
    }

    /// All `p^m` elements: zero first, then by increasing log.
    pub fn elements(&self) -> impl Iterator<Item = Felt> + '_ {
        std::iter::once(Felt::ZERO).chain((0..self.group).map(|k| Felt(k as u32)))
    }

    /// Norm from `F_{p^from}` down to `F_{p^to}`:
    /// `x^((p^from - 1)/(p^to - 1))`.
    pub fn norm(&self, x: Felt, from_d: u32, to_d: u32) -> Result<Felt> {
        self.check_divisor(from_d)?;
        if !from_d.is_multiple_of(to_d) {
            return Err(Error::NotADivisor {
                candidate: to_d,
                modulus: from_d,
            });
        }
        if !self.in_subfield(x, from_d)? {
            return Err(Error::NotInSubfield { degree: from_d });
        }
        let e = (poly::checked_pow(self.p as u64, from_d).unwrap() - 1)
            / (poly::checked_pow(self.p as u64, to_d).unwrap() - 1);
        if x.is_zero() {
            return Ok(Felt::ZERO);
        }
        Ok(Felt(
            ((x.0 as u64 as u128 * e as u128) % self.group as u128) as u64 as u32,
        ))
    }

    /// Trace from `F_{p^from}` down to `F_{p^to}`:
    /// `sum_{j} x^(p^(to*j))`.
    pub fn trace(&self, x: Felt, from_d: u32, to_d: u32) -> Result<Felt> {
        self.check_divisor(from_d)?;
        if !from_d.is_multiple_of(to_d) {
            return Err(Error::NotADivisor {
                candidate: to_d,
                modulus: from_d,
            });
        }
        if !self.in_subfield(x, from_d)? {
            return Err(Error::NotInSubfield { degree: from_d });
        }
        let mut acc = Felt::ZERO;
        for j in 0..from_d / to_d {
            acc = self.add(acc, self.frobenius(x, to_d * j));
        }
        Ok(acc)
    }

    /// Divisors of the extension degree, ascending.
    pub fn degree_divisors(&self) -> Vec<u32> {
        (1..=self.degree).filter(|d| self.degree.is_multiple_of(*d)).collect()
    }
}
