use thiserror::Error;

/// Failures surfaced by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violates the domain of the requested operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A parameter produced a non-finite intermediate value.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A time integrator or quadrature produced a non-finite value.
    #[error("numerical abort at step {step}: {reason}")]
    NumericalAbort { step: usize, reason: String },

    /// Two objects that must share a discretization do not.
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn finite(name: &str, x: f64) -> Result<f64> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::InvalidParameter(format!("{name} is not finite ({x})")))
    }
}
