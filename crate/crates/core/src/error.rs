use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("elementwise pole at entry ({row}, {col}): {detail}")]
    ElementwisePole {
        row: usize,
        col: usize,
        detail: String,
    },

    #[error("singular or ill-conditioned system: {0}")]
    Singular(String),

    #[error(
        "power iteration did not converge after {iterations} iterations (last estimate {estimate})"
    )]
    NoConvergence { iterations: usize, estimate: f64 },

    #[error("t = {t} is outside the permitted range [0, {limit}) for {what}")]
    OutsideRadius { t: f64, limit: f64, what: String },

    #[error("series truncation: {0}")]
    Truncation(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(
        "enumeration guard tripped: about {estimate:.3e} walks exceed the limit of {limit:.0e}"
    )]
    EnumerationLimit { estimate: f64, limit: f64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cross-validation failed: {0}")]
    CheckFailed(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by bad input or configuration, as opposed to
    /// numerical failures during a computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::DimensionMismatch(_)
                | Error::InvalidMatrix(_)
                | Error::OutsideRadius { .. }
                | Error::ElementwisePole { .. }
                | Error::InvalidGraph(_)
                | Error::Parse { .. }
                | Error::EnumerationLimit { .. }
                | Error::InvalidArgument(_)
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
