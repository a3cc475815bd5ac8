//! Error type shared by the whole library.
//!
//! Every operation is exact; errors are structural (bad input, non-unit
//! pivot, precision budget exhausted, non-terminating lattice search), never
//! numerical.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input violates a documented precondition (wrong rank, ring mismatch,
    /// zero where a nonzero value is required, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A matrix that must be invertible is singular, or a series that must
    /// be a unit has visibly-zero lowest coefficient.
    #[error("singular matrix / non-unit: {0}")]
    NonUnit(String),

    /// A series computation can no longer certify any coefficient.
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    /// Lattice refinement did not stabilize within its iteration budget.
    #[error("lattice search did not stabilize: {0}")]
    NonStabilizing(String),

    /// Completion arithmetic requested at a finite place of degree > 1.
    #[error("place not supported for expansion: {0}")]
    NotImplementedPlace(String),

    /// A coefficient that provably lies in the base field failed the
    /// subfield membership check (an implementation bug, surfaced loudly).
    #[error("descent failure: {0}")]
    DescentFailure(String),

    /// Structured-text input rejected; the message names the offending token.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn domain(msg: impl Into<String>) -> Error {
        Error::Domain(msg.into())
    }
    pub fn non_unit(msg: impl Into<String>) -> Error {
        Error::NonUnit(msg.into())
    }
    pub fn parse(msg: impl Into<String>) -> Error {
        Error::Parse(msg.into())
    }
}
