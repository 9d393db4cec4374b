//! The ambient structure of the plane constructions: `PG(2, q^{2n})` with
//! points coordinatised over `F_{q^{2n}}`, and the vector space `F_{q^{6n}}`
//! realised as the quadratic extension `K[z]/(z^2 - Bz - A)` of the
//! tabulated field `K = F_{q^{3n}}`.
//!
//! `{1, omega}` is an `F_{q^{3n}}`-basis of `F_{q^{6n}}` and an
//! `F_{q^n}`-basis of `F_{q^{2n}}`, while `{1, g_K, g_K^2}` is both an
//! `F_{q^n}`-basis of `K` and an `F_{q^{2n}}`-basis of `F_{q^{6n}}`. Writing
//! `u = s + t*omega` and `s = s_0 + s_1 g_K + s_2 g_K^2` (same for `t`)
//! gives the projective coordinates `c_i = s_i + t_i*omega` directly — no
//! table of `q^{6n}` entries is ever needed, which is what makes towers like
//! `F_{4^18}` (2^36 elements) tractable.

use std::sync::Arc;

use crate::gf::{Felt, QElt, QuadExt, SubfieldDecomposition, SubfieldEmbedding, TowerParams, ZechField};
use crate::{Budget, Error, Result};

/// The element `omega` of `F_{q^{2n}} \ F_{q^n}` fixed by the construction,
/// together with the coefficients of `omega^2 = A + B*omega` over `F_{q^n}`.
///
/// `omega` is canonically the generator of the plane field; `A` and `B` are
/// carried both as plane-field elements and pulled back into `K`.
#[derive(Debug, Clone, Copy)]
pub struct OmegaSpec {
    pub omega: Felt,
    pub a: Felt,
    pub b: Felt,
    pub a_k: Felt,
    pub b_k: Felt,
}

pub struct PlaneAmbient {
    params: TowerParams,
    k: Arc<ZechField>,
    plane: Arc<ZechField>,
    subfield: Arc<ZechField>,
    emb_k: SubfieldEmbedding,
    emb_plane: SubfieldEmbedding,
    omega: OmegaSpec,
    ext: QuadExt,
    /// coords of `g_K^log` over `F_{q^n}`-in-`K` w.r.t. `{1, g_K, g_K^2}`
    coords_table: Vec<[Felt; 3]>,
}

impl PlaneAmbient {
    pub fn new(params: TowerParams, budget: &Budget) -> Result<Arc<PlaneAmbient>> {
        let p = params.p;
        let k = ZechField::new(p, params.deg_q3n(), budget)?;
        let plane = ZechField::new(p, params.deg_q2n(), budget)?;
        Self::with_fields(params, k, plane, budget)
    }

    /// Rebuild from explicitly supplied (primitive) moduli, e.g. when
    /// re-verifying a serialized spec document.
    pub fn with_moduli(
        params: TowerParams,
        modulus_q3n: u64,
        modulus_q2n: u64,
        budget: &Budget,
    ) -> Result<Arc<PlaneAmbient>> {
        let p = params.p;
        let k = ZechField::with_modulus(p, params.deg_q3n(), modulus_q3n, budget)?;
        let plane = ZechField::with_modulus(p, params.deg_q2n(), modulus_q2n, budget)?;
        Self::with_fields(params, k, plane, budget)
    }

    fn with_fields(
        params: TowerParams,
        k: Arc<ZechField>,
        plane: Arc<ZechField>,
        budget: &Budget,
    ) -> Result<Arc<PlaneAmbient>> {
        let p = params.p;
        let subfield = ZechField::new(p, params.deg_qn(), budget)?;
        let emb_k = SubfieldEmbedding::new(&subfield, &k)?;
        let emb_plane = SubfieldEmbedding::new(&subfield, &plane)?;

        // omega = generator of F_{q^{2n}}; its minimal polynomial over
        // F_{q^n} is z^2 - Bz - A with A = -omega^{q^n+1}, B = omega+omega^{q^n}
        let omega = plane.generator();
        let nh = params.deg_qn();
        let conj = plane.frobenius(omega, nh);
        let a = plane.neg(plane.mul(omega, conj));
        let b = plane.add(omega, conj);
        if a.is_zero() || plane.in_subfield(omega, nh)? {
            return Err(Error::InternalConsistency(
                "canonical omega degenerated".into(),
            ));
        }
        debug_assert_eq!(plane.mul(omega, omega), plane.add(a, plane.mul(b, omega)));
        let a_k = emb_k.embed(emb_plane.project(a)?);
        let b_k = emb_k.embed(emb_plane.project(b)?);
        let omega_spec = OmegaSpec {
            omega,
            a,
            b,
            a_k,
            b_k,
        };

        let ext = QuadExt::new(k.clone(), a_k, b_k)?;
        // irreducibility over K reduces to irreducibility over F_{q^n}
        if ext.has_root_in(k.subfield_elements(nh)?) {
            return Err(Error::InternalConsistency(
                "omega minimal polynomial splits over F_{q^n}".into(),
            ));
        }

        // coordinates over {1, g_K, g_K^2}: seed with a one-off matrix
        // decomposition of g^3, then extend multiplicatively
        let g = k.generator();
        let basis = [k.one(), g, k.pow(g, 2)?];
        let dec = SubfieldDecomposition::new(k.clone(), nh, &basis)?;
        let g3 = dec.decompose(k.pow(g, 3)?);
        let group = k.group_order() as usize;
        let mut coords_table = vec![[Felt::ZERO; 3]; group];
        let mut cur = [k.one(), Felt::ZERO, Felt::ZERO];
        for entry in coords_table.iter_mut() {
            *entry = cur;
            // multiply by g: (c0,c1,c2) -> (c2*e0, c0 + c2*e1, c1 + c2*e2)
            let c2 = cur[2];
            cur = [
                k.mul(c2, g3[0]),
                k.add(cur[0], k.mul(c2, g3[1])),
                k.add(cur[1], k.mul(c2, g3[2])),
            ];
        }
        if cur != [k.one(), Felt::ZERO, Felt::ZERO] {
            return Err(Error::InternalConsistency(
                "coordinate table did not close up".into(),
            ));
        }

        Ok(Arc::new(PlaneAmbient {
            params,
            k,
            plane,
            subfield,
            emb_k,
            emb_plane,
            omega: omega_spec,
            ext,
            coords_table,
        }))
    }

    pub fn params(&self) -> TowerParams {
        self.params
    }

    /// The tabulated field `K = F_{q^{3n}}`.
    pub fn k(&self) -> &Arc<ZechField> {
        &self.k
    }

    /// The coordinate field `F_{q^{2n}}` of the projective plane.
    pub fn plane(&self) -> &Arc<ZechField> {
        &self.plane
    }

    /// The abstract `F_{q^n}`.
    pub fn subfield(&self) -> &Arc<ZechField> {
        &self.subfield
    }

    pub fn omega(&self) -> &OmegaSpec {
        &self.omega
    }

    /// `F_{q^{6n}}` as a quadratic extension of `K`.
    pub fn ext(&self) -> &QuadExt {
        &self.ext
    }

    /// The isomorphism `F_{q^n}`-in-`K` -> `F_{q^n}`-in-plane.
    pub fn sigma(&self, x: Felt) -> Result<Felt> {
        Ok(self.emb_plane.embed(self.emb_k.project(x)?))
    }

    /// Inverse of [`sigma`](Self::sigma).
    pub fn sigma_inv(&self, y: Felt) -> Result<Felt> {
        Ok(self.emb_k.embed(self.emb_plane.project(y)?))
    }

    /// Coordinates of a `K`-element over `F_{q^n}`-in-`K` w.r.t. `{1, g_K, g_K^2}`.
    pub fn coords_k(&self, x: Felt) -> [Felt; 3] {
        match x.log() {
            None => [Felt::ZERO; 3],
            Some(l) => self.coords_table[l as usize],
        }
    }

    /// The vector `u = f(x) + x*omega` as a pair over `K`.
    pub fn vector(&self, fx: Felt, x: Felt) -> QElt {
        QElt { s: fx, t: x }
    }

    /// Coordinates of `u` over `F_{q^{2n}}` w.r.t. the basis `{1, g_K, g_K^2}`,
    /// expressed in the plane field.
    pub fn to_plane_triple(&self, u: QElt) -> Result<[Felt; 3]> {
        let sc = self.coords_k(u.s);
        let tc = self.coords_k(u.t);
        let mut out = [Felt::ZERO; 3];
        for i in 0..3 {
            let si = self.sigma(sc[i])?;
            let ti = self.sigma(tc[i])?;
            out[i] = self.plane.add(si, self.plane.mul(ti, self.omega.omega));
        }
        Ok(out)
    }

    /// Divide by the first nonzero coordinate. `None` for the zero vector.
    pub fn canonicalize(&self, mut triple: [Felt; 3]) -> Result<Option<[Felt; 3]>> {
        let Some(j) = triple.iter().position(|c| !c.is_zero()) else {
            return Ok(None);
        };
        let inv = self.plane.inv(triple[j])?;
        for c in triple.iter_mut() {
            *c = self.plane.mul(*c, inv);
        }
        Ok(Some(triple))
    }

    /// Is the extension element in `F_{q^{2n}} = F_{q^n} + omega F_{q^n}`?
    pub fn ext_in_fq2n(&self, z: QElt) -> Result<bool> {
        let nh = self.params.deg_qn();
        Ok(self.k.in_subfield(z.s, nh)? && self.k.in_subfield(z.t, nh)?)
    }

    /// Is the extension element in the base prime-power field `F_q`?
    pub fn ext_in_fq(&self, z: QElt) -> Result<bool> {
        Ok(z.t.is_zero() && self.k.in_subfield(z.s, self.params.deg_q())?)
    }

    /// All `q^{2n}` elements of `F_{q^{2n}}` inside the extension.
    pub fn fq2n_elements(&self) -> Result<Vec<QElt>> {
        let nh = self.params.deg_qn();
        let subs: Vec<Felt> = self.k.subfield_elements(nh)?.collect();
        let mut out = Vec::with_capacity(subs.len() * subs.len());
        for &s in &subs {
            for &t in &subs {
                out.push(QElt { s, t });
            }
        }
        Ok(out)
    }
}
