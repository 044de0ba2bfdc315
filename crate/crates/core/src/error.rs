use thiserror::Error;

/// Failure modes of the numerical routines.
///
/// Parameters are carried as `f64` regardless of the scalar type so that
/// errors stay `'static` and printable.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error in {op}: {reason}")]
    Domain { op: &'static str, reason: String },

    #[error("series for {op} diverges: {reason}")]
    Divergent { op: &'static str, reason: String },

    #[error("{op} did not converge after {iterations} iterations")]
    NonConvergence { op: &'static str, iterations: usize },

    #[error("operator is unbounded on L^{p}: sigma = {sigma} must exceed 1/p - 1 = {threshold}")]
    Unbounded { p: f64, sigma: f64, threshold: f64 },

    #[error("quadrature failure in {op}: {reason}")]
    Quadrature { op: &'static str, reason: String },
}

impl Error {
    pub(crate) fn domain(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain { op, reason: reason.into() }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
