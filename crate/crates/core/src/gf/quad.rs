//! The quadratic extension `K[z]/(z^2 - Bz - A)` of a Zech field.
//!
//! Elements are pairs `s + t z`. With `A, B` the coefficients of the minimal
//! polynomial of the adjoined root, the conjugate of `z` is `B - z`, which
//! gives closed forms for norms and inverses. This is how the crate
//! represents `F_{q^{6n}}` on top of the tabulated `F_{q^{3n}}` without ever
//! materialising a `q^{6n}`-entry table.

use std::sync::Arc;

use super::zech::{Felt, ZechField};
use crate::{Error, Result};

/// An element `s + t z` of a [`QuadExt`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QElt {
    pub s: Felt,
    pub t: Felt,
}

impl QElt {
    pub const ZERO: QElt = QElt {
        s: Felt::ZERO,
        t: Felt::ZERO,
    };

    pub fn is_zero(self) -> bool {
        self.s.is_zero() && self.t.is_zero()
    }

    /// True iff the element lies in the base field `K`.
    pub fn in_base(self) -> bool {
        self.t.is_zero()
    }
}

/// `K[z]/(z^2 - Bz - A)`. The caller guarantees the polynomial is
/// irreducible over `K`; [`QuadExt::has_root_in`] helps check.
pub struct QuadExt {
    base: Arc<ZechField>,
    a: Felt,
    b: Felt,
}

impl QuadExt {
    pub fn new(base: Arc<ZechField>, a: Felt, b: Felt) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::InvalidInput(
                "constant coefficient A of the quadratic must be nonzero".into(),
            ));
        }
        Ok(QuadExt { base, a, b })
    }

    pub fn base(&self) -> &Arc<ZechField> {
        &self.base
    }

    pub fn coeff_a(&self) -> Felt {
        self.a
    }

    pub fn coeff_b(&self) -> Felt {
        self.b
    }

    /// Does `z^2 = A + Bz` have a solution among the given candidates?
    pub fn has_root_in(&self, candidates: impl Iterator<Item = Felt>) -> bool {
        let f = &self.base;
        for u in candidates {
            let lhs = f.mul(u, u);
            let rhs = f.add(self.a, f.mul(self.b, u));
            if lhs == rhs {
                return true;
            }
        }
        false
    }

    pub fn zero(&self) -> QElt {
        QElt::ZERO
    }

    pub fn one(&self) -> QElt {
        QElt {
            s: self.base.one(),
            t: Felt::ZERO,
        }
    }

    /// The adjoined root `z`.
    pub fn root(&self) -> QElt {
        QElt {
            s: Felt::ZERO,
            t: self.base.one(),
        }
    }

    pub fn from_base(&self, s: Felt) -> QElt {
        QElt { s, t: Felt::ZERO }
    }

    pub fn add(&self, x: QElt, y: QElt) -> QElt {
        QElt {
            s: self.base.add(x.s, y.s),
            t: self.base.add(x.t, y.t),
        }
    }

    pub fn neg(&self, x: QElt) -> QElt {
        QElt {
            s: self.base.neg(x.s),
            t: self.base.neg(x.t),
        }
    }

    pub fn sub(&self, x: QElt, y: QElt) -> QElt {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: QElt, y: QElt) -> QElt {
        let f = &self.base;
        // (s1 + t1 z)(s2 + t2 z) = s1 s2 + t1 t2 A + (s1 t2 + s2 t1 + t1 t2 B) z
        let tt = f.mul(x.t, y.t);
        QElt {
            s: f.add(f.mul(x.s, y.s), f.mul(tt, self.a)),
            t: f.add(f.add(f.mul(x.s, y.t), f.mul(x.t, y.s)), f.mul(tt, self.b)),
        }
    }

    pub fn mul_base(&self, x: QElt, c: Felt) -> QElt {
        QElt {
            s: self.base.mul(x.s, c),
            t: self.base.mul(x.t, c),
        }
    }

    /// Norm down to `K`: `(s + tz)(s + tB - tz) = s^2 + Bst - At^2`.
    pub fn norm(&self, x: QElt) -> Felt {
        let f = &self.base;
        let s2 = f.mul(x.s, x.s);
        let bst = f.mul(self.b, f.mul(x.s, x.t));
        let at2 = f.mul(self.a, f.mul(x.t, x.t));
        f.sub(f.add(s2, bst), at2)
    }

    pub fn inv(&self, x: QElt) -> Result<QElt> {
        if x.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let f = &self.base;
        let n_inv = f.inv(self.norm(x))?;
        let conj = QElt {
            s: f.add(x.s, f.mul(x.t, self.b)),
            t: f.neg(x.t),
        };
        Ok(self.mul_base(conj, n_inv))
    }

    pub fn div(&self, x: QElt, y: QElt) -> Result<QElt> {
        Ok(self.mul(x, self.inv(y)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Budget;

    /// F_16 presented as a quadratic extension of F_4.
    fn f16_over_f4() -> (Arc<ZechField>, QuadExt) {
        let f4 = ZechField::new(2, 2, &Budget::default()).unwrap();
        let g = f4.generator();
        // z^2 = g + z is irreducible over F_4 (no root among 4 elements)
        let ext = QuadExt::new(f4.clone(), g, f4.one()).unwrap();
        assert!(!ext.has_root_in(f4.elements()));
        (f4, ext)
    }

    #[test]
    fn field_axioms_exhaustive() {
        let (f4, ext) = f16_over_f4();
        let elems: Vec<QElt> = f4
            .elements()
            .flat_map(|s| f4.elements().map(move |t| QElt { s, t }))
            .collect();
        assert_eq!(elems.len(), 16);
        for &x in &elems {
            assert_eq!(ext.add(x, ext.neg(x)), QElt::ZERO);
            if !x.is_zero() {
                assert_eq!(ext.mul(x, ext.inv(x).unwrap()), ext.one());
                // norm is multiplicative and nonzero
                assert!(!ext.norm(x).is_zero());
            }
            for &y in &elems {
                assert_eq!(ext.mul(x, y), ext.mul(y, x));
                assert_eq!(
                    f4.mul(ext.norm(x), ext.norm(y)),
                    ext.norm(ext.mul(x, y))
                );
                for &z in &elems {
                    assert_eq!(
                        ext.mul(x, ext.add(y, z)),
                        ext.add(ext.mul(x, y), ext.mul(x, z))
                    );
                    assert_eq!(ext.mul(ext.mul(x, y), z), ext.mul(x, ext.mul(y, z)));
                }
            }
        }
    }

    #[test]
    fn root_satisfies_its_quadratic() {
        let (f4, ext) = f16_over_f4();
        let z = ext.root();
        let z2 = ext.mul(z, z);
        let rhs = ext.add(ext.from_base(f4.generator()), z);
        assert_eq!(z2, rhs);
    }

    #[test]
    fn multiplicative_group_order() {
        let (_f4, ext) = f16_over_f4();
        // every nonzero element has order dividing 15
        let mut x = ext.root();
        let mut pow = ext.one();
        for _ in 0..15 {
            pow = ext.mul(pow, x);
        }
        assert_eq!(pow, ext.one());
        // and z itself has order 15 or 5 or 3; it is actually 15 here since
        // z generates F_16 over F_4 and norm(z) = -A = A = g generates F_4*
        let mut order = 0;
        pow = ext.one();
        loop {
            pow = ext.mul(pow, ext.root());
            order += 1;
            if pow == ext.one() {
                break;
            }
        }
        assert_eq!(order % 3, 0);
        x = ext.inv(ext.root()).unwrap();
        assert_eq!(ext.mul(x, ext.root()), ext.one());
    }
}
