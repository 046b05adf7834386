use std::path::PathBuf;

use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Input outside the domain of a mathematical function.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// A cotangent argument too close to one of its poles.
    #[error("dispersion singularity: kappa = {kappa}, n = {n} puts kappa*n within the guard band of an even integer")]
    Singularity { kappa: f64, n: u32 },

    /// A record field violates its invariant.
    #[error("invalid {field}: {reason}")]
    Validation { field: &'static str, reason: String },

    /// A material file could not be parsed.
    #[error("{path}:{line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("cannot read {path}: {message}", path = .path.display())]
    Io { path: PathBuf, message: String },

    /// Adaptive quadrature or an eigensolve did not reach its tolerance.
    #[error("{what} did not converge: best estimate {estimate:e}, error bound {error_bound:e}")]
    NonConvergence {
        what: &'static str,
        estimate: f64,
        error_bound: f64,
    },

    /// The chosen readout needs a piezoelectric material.
    #[error("unsupported readout: {0}")]
    UnsupportedReadout(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::Validation {
            field,
            reason: reason.into(),
        }
    }

    /// True for errors caused by numerical non-convergence rather than bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
