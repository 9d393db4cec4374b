//! Linear-set defining data and hypothesis reports.

use std::sync::Arc;

use serde::Serialize;

use super::ambient::PlaneAmbient;
use super::linpoly::LinPoly;
use crate::gf::Felt;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FamilyTag {
    Monomial,
    Family2,
    BinomialQ2,
    Custom,
}

impl FamilyTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyTag::Monomial => "monomial",
            FamilyTag::Family2 => "family2",
            FamilyTag::BinomialQ2 => "binomial-q2",
            FamilyTag::Custom => "custom",
        }
    }
}

impl std::str::FromStr for FamilyTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monomial" => Ok(FamilyTag::Monomial),
            "family2" => Ok(FamilyTag::Family2),
            "binomial-q2" | "binomial_q2" => Ok(FamilyTag::BinomialQ2),
            "custom" => Ok(FamilyTag::Custom),
            other => Err(Error::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// One verified hypothesis, with the evidence that backs the verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Pass/fail per family hypothesis, plus the overall verdict.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub family: FamilyTag,
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn summary(&self) -> String {
        self.checks
            .iter()
            .map(|c| {
                format!(
                    "{}={} ({})",
                    c.name,
                    if c.passed { "pass" } else { "fail" },
                    c.detail
                )
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    pub fn failed_names(&self) -> Vec<&'static str> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| c.name)
            .collect()
    }
}

/// The defining data of a linear set `L_U`, `U = { f(x) + x*omega }`.
#[derive(Clone)]
pub struct LinearSetSpec {
    pub ambient: Arc<PlaneAmbient>,
    pub f: LinPoly,
    pub family: FamilyTag,
    pub i: Option<u32>,
    pub a: Option<Felt>,
    pub b: Option<Felt>,
}

impl LinearSetSpec {
    /// A spec with arbitrary `F_q`-linear `f`, bypassing family checkers
    /// (used to build negative examples; the verifier still runs on it).
    pub fn custom(ambient: Arc<PlaneAmbient>, f: LinPoly) -> Result<Self> {
        if f.field() != ambient.k() {
            return Err(Error::FieldMismatch);
        }
        if !f.is_q_linear() {
            return Err(Error::InvalidInput(
                "the defining map must be F_q-linear".into(),
            ));
        }
        Ok(LinearSetSpec {
            ambient,
            f,
            family: FamilyTag::Custom,
            i: None,
            a: None,
            b: None,
        })
    }

    /// `rank = 3n` (`x -> f(x) + x*omega` is injective since `omega` lies
    /// outside `F_{q^{3n}}`).
    pub fn rank(&self) -> u32 {
        3 * self.ambient.params().n
    }
}
