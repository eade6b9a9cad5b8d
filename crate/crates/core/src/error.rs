use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension error: {0}")]
    Dimension(String),

    #[error("argument error: {0}")]
    Argument(String),

    #[error("state is not positive semidefinite: smallest eigenvalue {min_eigenvalue:e}")]
    Positivity { min_eigenvalue: f64 },

    #[error("not an X state: off-X element {element} has magnitude {magnitude:e}")]
    NotXState { element: &'static str, magnitude: f64 },

    #[error("steering pole: |w| = {norm} leaves the measured qubit's marginal (numerically) pure")]
    PureMarginalPole { norm: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("internal numerical error: {0}")]
    Internal(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Whether the error comes from malformed input rather than a
    /// physically invalid value.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Json(_))
    }
}
