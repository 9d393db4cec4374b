//! Coordinates of field elements over an intermediate subfield.

use std::sync::Arc;

use super::linalg::FpMat;
use super::poly;
use super::zech::{Felt, ZechField};
use crate::{Error, Result};

/// Precomputed change of basis expressing `F_{p^m}` as a vector space over
/// its subfield `F_{p^d}` with respect to a chosen basis.
///
/// The `F_p`-matrix whose columns are `basis_i * gamma^j` (with `gamma` the
/// canonical generator of the subfield) is inverted once; decomposition is
/// then a matrix-vector product per element.
pub struct SubfieldDecomposition {
    field: Arc<ZechField>,
    sub_degree: u32,
    basis: Vec<Felt>,
    inv: FpMat,
    gamma_pows: Vec<Felt>,
}

impl SubfieldDecomposition {
    pub fn new(field: Arc<ZechField>, sub_degree: u32, basis: &[Felt]) -> Result<Self> {
        let m = field.degree() as usize;
        let d = sub_degree as usize;
        let cof = field.subfield_cofactor(sub_degree)?;
        let k = m / d;
        if basis.len() != k {
            return Err(Error::InvalidInput(format!(
                "basis over the degree-{sub_degree} subfield must have {k} elements"
            )));
        }
        let gamma = field.felt_from_log(cof);
        let gamma_pows: Vec<Felt> = (0..d)
            .map(|j| field.pow(gamma, j as i64).unwrap())
            .collect();
        let p = field.characteristic();
        let mut mat = FpMat::zeros(p, m, m);
        for (i, &b) in basis.iter().enumerate() {
            for (j, &gp) in gamma_pows.iter().enumerate() {
                let col = i * d + j;
                let enc = field.encode(field.mul(b, gp));
                for (r, &digit) in poly::digits(enc, p, m).iter().enumerate() {
                    mat[(r, col)] = digit;
                }
            }
        }
        let inv = mat.inverse().ok_or(Error::NotABasis)?;
        Ok(SubfieldDecomposition {
            field,
            sub_degree,
            basis: basis.to_vec(),
            inv,
            gamma_pows,
        })
    }

    pub fn basis(&self) -> &[Felt] {
        &self.basis
    }

    /// The unique coordinates `(c_1, ..., c_k)` with all `c_i` in the
    /// subfield and `sum c_i basis_i = x`.
    pub fn decompose(&self, x: Felt) -> Vec<Felt> {
        let f = &self.field;
        let m = f.degree() as usize;
        let d = self.sub_degree as usize;
        let v = poly::digits(f.encode(x), f.characteristic(), m);
        let w = self.inv.mul_vec(&v);
        (0..m / d)
            .map(|i| {
                let mut c = Felt::ZERO;
                for (j, &gp) in self.gamma_pows.iter().enumerate() {
                    c = f.add(c, f.mul(f.scalar(w[i * d + j]), gp));
                }
                c
            })
            .collect()
    }

    pub fn recompose(&self, coords: &[Felt]) -> Felt {
        assert_eq!(coords.len(), self.basis.len());
        let f = &self.field;
        let mut acc = Felt::ZERO;
        for (&c, &b) in coords.iter().zip(&self.basis) {
            acc = f.add(acc, f.mul(c, b));
        }
        acc
    }
}
