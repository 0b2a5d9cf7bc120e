use thiserror::Error;

/// Error type shared by every module in this crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Arguments outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A series or iteration failed to reach the requested accuracy.
    /// Carries the best estimate obtained so far.
    #[error("accuracy not reached: {context} (partial estimate {partial})")]
    Accuracy { context: String, partial: f64 },

    /// Degenerate or invalid geometry (non-positive radius, zero frame, ...).
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A root or minimum could not be bracketed or refined.
    #[error("solver error: {0}")]
    Solver(String),

    /// No eigenvalue candidate with acceptable residual in the search window.
    #[error("no eigenvalue found in window [{lo}, {hi}] (best sigma {best_sigma})")]
    NotFound { lo: f64, hi: f64, best_sigma: f64 },

    /// The collocation matrix was numerically rank deficient beyond tolerance.
    #[error("conditioning error: {0}")]
    Conditioning(String),

    /// Two residual minima too close together: the eigenvalue derivative
    /// formulas require a simple eigenvalue.
    #[error("degenerate eigenvalue near lambda = {lambda}: second minimum at {other}")]
    Degenerate { lambda: f64, other: f64 },

    /// Malformed call arguments (empty basis, bad window, ...).
    #[error("argument error: {0}")]
    Argument(String),

    /// Linear algebra backend failure.
    #[error("linear algebra error: {0}")]
    Linalg(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}

impl From<ndarray_linalg::error::LinalgError> for Error {
    fn from(e: ndarray_linalg::error::LinalgError) -> Self {
        Error::Linalg(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
