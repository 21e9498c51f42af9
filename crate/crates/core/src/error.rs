use thiserror::Error;

use crate::kernels::DefinitenessReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("non-finite integrand value {value} at node {node} (t = {t})")]
    NonFiniteIntegrand { node: usize, t: f64, value: f64 },

    #[error("jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence { sweeps: usize, off_norm: f64 },

    /// A construction required a definite kernel and the kernel is not.
    #[error("kernel is not {kind} definite (extremal eigenvalue {:e})", report.extremal_eigenvalue)]
    NotDefinite { kind: &'static str, report: Box<DefinitenessReport> },

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
