use thiserror::Error;

/// Errors raised by the library.
///
/// `Domain` and `TooLarge` are caller mistakes (bad parameters, inputs outside
/// the supported regime); `NotConverged` and `Inconclusive` mean a budget ran
/// out before an answer could be certified.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("{what} has {size} elements, limit is {limit}")]
    TooLarge {
        what: &'static str,
        size: u128,
        limit: u128,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(
        "solver did not converge after {iterations} iterations \
         (best value {best_value}, primal residual {primal_residual:.3e}, dual residual {dual_residual:.3e})"
    )]
    NotConverged {
        iterations: usize,
        best_value: f64,
        primal_residual: f64,
        dual_residual: f64,
    },

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("certificate check failed: {0}")]
    Certificate(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    /// True for errors that stem from the caller's input rather than from a
    /// solver or budget failure.
    pub fn is_domain(&self) -> bool {
        matches!(
            self,
            Error::Domain(_) | Error::TooLarge { .. } | Error::Parse(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
