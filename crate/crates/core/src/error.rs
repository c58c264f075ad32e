use num_bigint::BigUint;
use thiserror::Error;

use crate::arith::Factorization;

/// Errors raised by the library. Every operation is pure, so an error always
/// describes a property of the inputs (or an exhausted budget).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("valuation of zero is undefined")]
    UndefinedValuation,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("degenerate map: the resultant of the two forms vanishes")]
    DegenerateMap,
    #[error("the two points coincide, their distance is infinite")]
    InfiniteDistance,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    #[error("factorization budget exceeded with unsplit cofactor {cofactor}")]
    FactorizationBudget {
        partial: Box<Factorization>,
        cofactor: BigUint,
    },
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for the two budget variants; the CLI maps these to exit code 3.
    pub fn is_resource(&self) -> bool {
        matches!(self, Error::Resource(_) | Error::FactorizationBudget { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
