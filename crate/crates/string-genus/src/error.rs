//! Error type shared by all modules of the crate.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Inversion of a power series whose constant term is zero.
    #[error("series is not a unit: constant term is zero")]
    NotAUnit,

    /// A weight that is odd, zero where forbidden, or otherwise outside an
    /// operation's domain.
    #[error("invalid weight {0}")]
    InvalidWeight(u32),

    /// A series is too short for the requested operation.
    #[error("insufficient precision: need at least {needed} coefficients, got {got}")]
    InsufficientPrecision { needed: usize, got: usize },

    /// Structural guarantees were violated; indicates a bug or corrupted data,
    /// never a user error.
    #[error("internal error: {0}")]
    Internal(String),

    /// Group operations on classes of different weight, dimension or
    /// localization.
    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(u32, u32),

    /// A tail denominator does not divide the caller-asserted global bound.
    #[error("inconsistent bound: tail denominator {denominator} does not divide {bound}")]
    InconsistentBound { denominator: String, bound: u64 },

    /// The detector pairing produced a non-integer, so the input data cannot
    /// come from a genuine geometric configuration.
    #[error("non-integral pairing value {0}")]
    NonIntegralPairing(String),

    /// A quantity required to be an integer is not.
    #[error("non-integral value {0}")]
    NonIntegral(String),

    /// A power series that violates a structural precondition, e.g. constant
    /// term not equal to 1 where a multiplicative sequence requires it.
    #[error("invalid series: {0}")]
    InvalidSeries(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
