//! The ambient field tower `F_p ⊂ F_q ⊂ F_{q^n} ⊂ F_{q^{2n}}, F_{q^{3n}} ⊂ F_{q^{6n}}`.

use std::sync::Arc;

use serde::Serialize;

use super::poly;
use super::zech::{Felt, ZechField};
use crate::{Budget, Error, Result};

/// Parameters `q = p^h` and `n` of a tower with top field `F_{p^{6nh}}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TowerParams {
    pub p: u32,
    pub h: u32,
    pub n: u32,
}

impl TowerParams {
    pub fn new(p: u32, h: u32, n: u32) -> Result<Self> {
        let tp = TowerParams { p, h, n };
        if !poly::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if h == 0 || n == 0 {
            return Err(Error::InvalidInput("h and n must be positive".into()));
        }
        Ok(tp)
    }

    /// `q = p^h`.
    pub fn q(&self) -> u64 {
        poly::checked_pow(self.p as u64, self.h).expect("q fits u64")
    }

    /// Degree of the top field `F_{q^{6n}}` over `F_p`.
    pub fn top_degree(&self) -> u32 {
        6 * self.n * self.h
    }

    /// F_p-degrees of the named intermediate fields.
    pub fn deg_q(&self) -> u32 {
        self.h
    }
    pub fn deg_qn(&self) -> u32 {
        self.n * self.h
    }
    pub fn deg_q2n(&self) -> u32 {
        2 * self.n * self.h
    }
    pub fn deg_q3n(&self) -> u32 {
        3 * self.n * self.h
    }

    /// Checks that `p^{6nh}` fits the budget without building anything.
    pub fn validate_top_size(&self, budget: &Budget) -> Result<()> {
        let order = poly::checked_pow(self.p as u64, self.top_degree());
        match order {
            Some(o) if o <= (1 << 31) && o <= budget.max_field_elements => Ok(()),
            Some(o) => Err(Error::BudgetExceeded {
                what: "tower table",
                needed: o,
                allowed: budget.max_field_elements,
            }),
            None => Err(Error::BudgetExceeded {
                what: "tower table",
                needed: u64::MAX,
                allowed: budget.max_field_elements,
            }),
        }
    }
}

impl std::fmt::Display for TowerParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "p={} h={} n={} (q={})", self.p, self.h, self.n, self.q())
    }
}

/// The fully tabulated top field `F_{p^{6nh}}` with its subfield lattice.
///
/// Immutable after construction; all operations are pure.
pub struct FieldTower {
    params: TowerParams,
    field: Arc<ZechField>,
}

impl FieldTower {
    /// Deterministic build: canonical primitive modulus, generator `g = x`.
    pub fn build(params: TowerParams, budget: &Budget) -> Result<FieldTower> {
        params.validate_top_size(budget)?;
        let field = ZechField::new(params.p, params.top_degree(), budget)?;
        Ok(FieldTower { params, field })
    }

    pub fn params(&self) -> TowerParams {
        self.params
    }

    pub fn field(&self) -> &Arc<ZechField> {
        &self.field
    }

    /// `(p^D - 1)/(p^d - 1)` for a divisor `d` of `D`.
    pub fn subfield_index(&self, d: u32) -> Result<u64> {
        self.field.subfield_cofactor(d)
    }

    /// The canonical `omega`: the first element of `F_{q^{2n}}` (enumerated
    /// zero-first, then by increasing log) outside `F_{q^n}`. This is the
    /// generator `g^{(p^D-1)/(p^{2nh}-1)}` of `F_{q^{2n}}^*`.
    pub fn canonical_omega(&self) -> Result<Felt> {
        let d2 = self.params.deg_q2n();
        let dn = self.params.deg_qn();
        for x in self.field.subfield_elements(d2)? {
            if !self.field.in_subfield(x, dn)? {
                return Ok(x);
            }
        }
        Err(Error::InternalConsistency(
            "F_{q^{2n}} has no element outside F_{q^n}".into(),
        ))
    }

    /// Minimal-polynomial coefficients of `omega` over `F_{q^n}`:
    /// `A = -omega^{q^n+1}`, `B = omega + omega^{q^n}`, so that
    /// `omega^2 = A + B*omega` with `A != 0`.
    pub fn omega_min_poly(&self, omega: Felt) -> Result<(Felt, Felt)> {
        let f = &self.field;
        let conj = f.frobenius(omega, self.params.deg_qn());
        let a = f.neg(f.mul(omega, conj));
        let b = f.add(omega, conj);
        Ok((a, b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_admissible_tower() {
        let params = TowerParams::new(2, 1, 1).unwrap();
        let tower = FieldTower::build(params, &Budget::default()).unwrap();
        assert_eq!(tower.field().order(), 64);
        assert_eq!(tower.params().q(), 2);
    }

    #[test]
    fn degree_arithmetic() {
        let params = TowerParams::new(2, 1, 2).unwrap();
        assert_eq!(params.top_degree(), 12);
        let tower = FieldTower::build(params, &Budget::default()).unwrap();
        assert_eq!(tower.field().order(), 4096);
        assert_eq!(tower.subfield_index(4).unwrap(), 4095 / 15);
    }

    #[test]
    fn budget_rejection_and_acceptance() {
        // 3^18 exceeds the default 2^22 budget but passes a raised one
        let params = TowerParams::new(3, 1, 3).unwrap();
        assert_eq!(params.top_degree(), 18);
        assert!(matches!(
            params.validate_top_size(&Budget::default()),
            Err(Error::BudgetExceeded { .. })
        ));
        let raised = Budget::default().with_field_elements(1 << 29);
        assert!(params.validate_top_size(&raised).is_ok());
    }

    #[test]
    fn rejects_bad_params() {
        assert!(matches!(TowerParams::new(6, 1, 1), Err(Error::NotPrime(6))));
        assert!(TowerParams::new(2, 0, 1).is_err());
    }

    #[test]
    fn canonical_omega_satisfies_its_quadratic() {
        for (p, h, n) in [(2u32, 1u32, 1u32), (2, 1, 2), (3, 1, 1)] {
            let params = TowerParams::new(p, h, n).unwrap();
            let tower = FieldTower::build(params, &Budget::default()).unwrap();
            let f = tower.field();
            let omega = tower.canonical_omega().unwrap();
            assert!(f.in_subfield(omega, params.deg_q2n()).unwrap());
            assert!(!f.in_subfield(omega, params.deg_qn()).unwrap());
            let (a, b) = tower.omega_min_poly(omega).unwrap();
            assert!(!a.is_zero());
            assert!(f.in_subfield(a, params.deg_qn()).unwrap());
            assert!(f.in_subfield(b, params.deg_qn()).unwrap());
            let lhs = f.mul(omega, omega);
            let rhs = f.add(a, f.mul(b, omega));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn norm_one_kernel_count() {
        // within F_{2^6} (d = 6 of the n=2 tower), the elements of norm 1
        // down to F_{2^2} number q^{2n}+q^n+1 = 21
        let params = TowerParams::new(2, 1, 2).unwrap();
        let tower = FieldTower::build(params, &Budget::default()).unwrap();
        let f = tower.field();
        let count = f
            .subfield_elements(6)
            .unwrap()
            .filter(|&x| !x.is_zero() && f.norm(x, 6, 2).unwrap() == f.one())
            .count();
        assert_eq!(count, 21);
    }

    #[test]
    fn norm_trace_codomain_exhaustive_2_12() {
        let params = TowerParams::new(2, 1, 2).unwrap();
        let tower = FieldTower::build(params, &Budget::default()).unwrap();
        let f = tower.field();
        for x in f.elements() {
            for &d in &[1u32, 2, 3, 4, 6] {
                assert!(f.in_subfield(f.norm(x, 12, d).unwrap(), d).unwrap());
                assert!(f.in_subfield(f.trace(x, 12, d).unwrap(), d).unwrap());
            }
        }
    }

    #[test]
    fn power_basis_over_q2n_is_valid() {
        // {1, g, g^2} over F_{q^{2n}} whenever g is primitive in the top field
        use crate::gf::SubfieldDecomposition;
        let params = TowerParams::new(2, 1, 2).unwrap();
        let tower = FieldTower::build(params, &Budget::default()).unwrap();
        let f = tower.field();
        let g = f.generator();
        let basis = [f.one(), g, f.pow(g, 2).unwrap()];
        let dec = SubfieldDecomposition::new(f.clone(), params.deg_q2n(), &basis).unwrap();
        for x in f.elements().step_by(17) {
            assert_eq!(dec.recompose(&dec.decompose(x)), x);
        }
    }

    #[test]
    fn determinism() {
        let params = TowerParams::new(2, 1, 2).unwrap();
        let t1 = FieldTower::build(params, &Budget::default()).unwrap();
        let t2 = FieldTower::build(params, &Budget::default()).unwrap();
        assert_eq!(t1.field().modulus(), t2.field().modulus());
        assert_eq!(
            t1.canonical_omega().unwrap(),
            t2.canonical_omega().unwrap()
        );
    }
}
