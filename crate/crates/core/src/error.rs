use thiserror::Error;

use crate::bigfixed::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The argument lies outside the real-convergence domain, or an
    /// intermediate square root would need a negative radicand.
    #[error("domain error: {0}")]
    Domain(String),

    /// An intermediate is not representable by the chosen backend.
    #[error("overflow: {0}")]
    Overflow(String),

    #[error("no convergence at x = {x} after {iterations} iterations (best estimate {best})")]
    NonConvergence {
        x: f64,
        iterations: usize,
        best: f64,
    },

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("division by zero")]
    DivideByZero,

    /// Two independent digit computations disagreed before the last
    /// tolerated digits.
    #[error("oracle mismatch: {matching} leading digits agree, {required} required")]
    OracleMismatch { matching: usize, required: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
