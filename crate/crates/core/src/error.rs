use thiserror::Error;

use crate::star::Violation;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("weights must be positive")]
    NonPositiveWeight,
    #[error("weights are not coprime (gcd = {0})")]
    NonCoprime(i64),
    #[error("weights must be distinct")]
    Equal,
    #[error("weights too large: alpha * beta overflows")]
    WeightOverflow,
    #[error("expected a positive integer, got {0}")]
    NonPositive(i64),
    #[error("modulus {0} is neither alpha nor beta")]
    BadModulus(i64),
    #[error("{0} is not a gap of the semigroup")]
    NotAGap(i64),
    #[error("gap sequence is not a strict chain at position {0}")]
    NotAChain(usize),
    #[error("series are defined over different weight pairs")]
    MismatchedPair,
    #[error("denominator cannot be brought to (1-t^alpha)(1-t^beta)")]
    UnsupportedDenominator,
    #[error("series has dimension 2")]
    DimensionTooHigh,
    #[error("residue {residue} out of range for delta = {delta}")]
    BadResidue { delta: i64, residue: i64 },
    #[error("series has a negative coefficient")]
    NotNonnegative,
    #[error("condition (star) fails: {0}")]
    StarFails(Box<Violation>),
    #[error("internal invariant broken: {0}")]
    InvariantBroken(String),
    #[error("no decomposition found by the tail-peel search")]
    NotFound,
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("instance too large for brute force ({0})")]
    TooLarge(String),
    #[error("term coefficients must be positive")]
    NonPositiveCoefficient,
    #[error("invalid series document: {0}")]
    Schema(String),
}

pub type Result<T> = std::result::Result<T, Error>;
