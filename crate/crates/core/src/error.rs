use thiserror::Error;

/// Errors produced by the numerical routines and the CLI front end.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain where the quantity is defined.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series argument lies outside (or too close to) its disk of convergence.
    #[error("series diverges: |x| = {abs} is not below the admissible radius {radius}")]
    Divergence { abs: f64, radius: f64 },

    /// A series or product did not reach its tail target within the iteration cap.
    #[error("no convergence after {iterations} terms")]
    NonConvergence { iterations: usize },

    /// Binary operation on values built over different families or parameters.
    #[error("parameter mismatch: {0}")]
    ParamMismatch(String),

    /// A documented precondition on sizes or quadrature order was violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
