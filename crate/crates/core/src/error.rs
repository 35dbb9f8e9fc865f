use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A mode with vanishing dispersion whose derivative has no finite limit.
    #[error("singular mode at k = {k}: {reason}")]
    SingularMode { k: f64, reason: String },

    /// The requested many-body problem exceeds the dense-matrix cap.
    #[error("resource limit: {0}")]
    Resource(String),

    /// A numerical routine (quadrature, eigensolver) did not deliver.
    #[error("numeric failure: {0}")]
    Numeric(String),

    /// No fit seed converged; carries the smallest residual that was reached.
    #[error("fit did not converge (best residual {best_residual:e}): {reason}")]
    Fit { best_residual: f64, reason: String },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }
}
