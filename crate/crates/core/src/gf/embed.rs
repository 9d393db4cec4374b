//! Canonical embeddings between independently built Zech fields.
//!
//! Two canonical fields `F_{p^a}` and `F_{p^b}` with `a | b` are related by
//! mapping the small field's generator to a root of its modulus inside the
//! big field. Roots come in Frobenius orbits; the root of smallest log is
//! chosen, which makes the embedding deterministic.

use super::poly;
use super::zech::{Felt, ZechField};
use crate::{Error, Result};

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (m as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(m as i128) as u64)
}

/// A field homomorphism `F_{p^a} -> F_{p^b}` between canonical Zech fields.
pub struct SubfieldEmbedding {
    from_group: u64,
    to_group: u64,
    cofactor: u64,
    /// log multiplier: `g_from^j` maps to `g_to^(j * mult)`.
    mult: u64,
    /// unit `u` with `mult = cofactor * u`; its inverse mod `p^a - 1`.
    inv_unit: u64,
}

impl SubfieldEmbedding {
    pub fn new(from: &ZechField, to: &ZechField) -> Result<Self> {
        if from.characteristic() != to.characteristic() {
            return Err(Error::FieldMismatch);
        }
        if !to.degree().is_multiple_of(from.degree()) {
            return Err(Error::NotADivisor {
                candidate: from.degree(),
                modulus: to.degree(),
            });
        }
        let p = from.characteristic();
        let cofactor = to.subfield_cofactor(from.degree())?;
        let from_group = from.group_order();
        if from_group == 1 {
            // F_2 into F_{2^m}: only 0 and 1 to map
            return Ok(SubfieldEmbedding {
                from_group,
                to_group: to.group_order(),
                cofactor,
                mult: 0,
                inv_unit: 0,
            });
        }
        let mod_digits = poly::digits(from.modulus(), p, from.degree() as usize + 1);

        // scan the subfield of `to` by increasing log for a root of the
        // small field's modulus
        let mut found = None;
        for j in 1..from_group {
            if poly::gcd_u64(j, from_group) != 1 {
                continue; // roots of a primitive polynomial are primitive
            }
            let z = to.felt_from_log(cofactor * j);
            let mut acc = Felt::ZERO;
            for (i, &c) in mod_digits.iter().enumerate() {
                if c != 0 {
                    acc = to.add(acc, to.mul(to.scalar(c), to.pow(z, i as i64).unwrap()));
                }
            }
            if acc.is_zero() {
                found = Some(j);
                break;
            }
        }
        let unit = found.ok_or_else(|| {
            Error::InternalConsistency("modulus has no root in the target subfield".into())
        })?;
        Ok(SubfieldEmbedding {
            from_group,
            to_group: to.group_order(),
            cofactor,
            mult: cofactor * unit,
            inv_unit: mod_inverse(unit, from_group).unwrap(),
        })
    }

    pub fn embed(&self, x: Felt) -> Felt {
        match x.log() {
            None => Felt::ZERO,
            Some(l) => Felt::from_log(((l as u128 * self.mult as u128) % self.to_group as u128) as u64),
        }
    }

    /// Preimage of an element of the image subfield.
    pub fn project(&self, y: Felt) -> Result<Felt> {
        match y.log() {
            None => Ok(Felt::ZERO),
            Some(l) => {
                if l % self.cofactor != 0 {
                    return Err(Error::NotInSubfield {
                        degree: 0, // degree unknown here; the caller has context
                    });
                }
                let j = ((l / self.cofactor) as u128 * self.inv_unit as u128
                    % self.from_group as u128) as u64;
                Ok(Felt::from_log(j))
            }
        }
    }
}
