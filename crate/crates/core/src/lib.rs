//! Constructions and exhaustive verification of maximum scattered linear sets
//! in `PG(2, q^{2n})` and `PG(r-1, q^t)`, and of the complete caps in `AG(n, 2^t)`
//! obtained from them.
//!
//! The crate is organised in three layers:
//!
//! * [`gf`] — exact arithmetic in towers of finite fields (Zech-logarithm
//!   representation, canonical primitive moduli, subfield embeddings,
//!   quadratic extensions).
//! * [`linset`] — linearized polynomials, the linear-set families, their
//!   hypothesis checkers, coefficient searches, and exhaustive point/weight
//!   and line-intersection verifiers.
//! * [`cap`] — translation caps, products, the doubling construction and
//!   bitmap completeness certification, plus the cap file format.
//!
//! Everything is deterministic: the same parameters always produce the same
//! moduli, the same canonical elements, and byte-identical reports.

pub mod cap;
pub mod gf;
pub mod linset;
pub mod report;

use thiserror::Error;

/// Resource limits for table construction and exhaustive loops.
///
/// Every operation that allocates a field table or enumerates a large point
/// space checks the relevant limit first and fails fast with
/// [`Error::BudgetExceeded`] instead of thrashing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of elements of any single field table.
    pub max_field_elements: u64,
    /// Maximum number of bits of the completeness bitmap (points of `AG(r, 2^t)`).
    pub max_bitmap_bits: u64,
    /// Maximum field size for whole-field exhaustive oracles
    /// (adjoint image property, quotient-set scans).
    pub max_exhaustive_elements: u64,
}

impl Budget {
    pub const DEFAULT_FIELD_ELEMENTS: u64 = 1 << 22;
    pub const DEFAULT_BITMAP_BITS: u64 = 1 << 28;
    pub const DEFAULT_EXHAUSTIVE: u64 = 1 << 18;

    pub fn with_field_elements(mut self, max: u64) -> Self {
        self.max_field_elements = max;
        self
    }

    pub fn with_bitmap_bits(mut self, max: u64) -> Self {
        self.max_bitmap_bits = max;
        self
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_field_elements: Self::DEFAULT_FIELD_ELEMENTS,
            max_bitmap_bits: Self::DEFAULT_BITMAP_BITS,
            max_exhaustive_elements: Self::DEFAULT_EXHAUSTIVE,
        }
    }
}

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("budget exceeded: {what} needs {needed} but the budget allows {allowed}")]
    BudgetExceeded {
        what: &'static str,
        needed: u64,
        allowed: u64,
    },
    #[error("{candidate} does not divide {modulus}")]
    NotADivisor { candidate: u32, modulus: u32 },
    #[error("element is not in the subfield of degree {degree}")]
    NotInSubfield { degree: u32 },
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("the supplied elements do not form a basis")]
    NotABasis,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("family conditions not satisfied: {0}")]
    ConditionsFailed(String),
    #[error("internal consistency violation: {0}")]
    InternalConsistency(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
