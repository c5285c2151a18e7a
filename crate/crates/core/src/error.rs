use thiserror::Error;

/// Errors produced while building families or analysing envelopes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnvError {
    #[error("slope denominator must be non-zero")]
    ZeroDenominator,
    #[error("slope {a}/{b} is excluded (m must not be -1, 0 or 1)")]
    ExcludedSlope { a: i64, b: i64 },
    #[error("radius must be positive, got {0}")]
    InvalidRadius(f64),
    #[error("{0} is not available for this family kind")]
    InvalidKind(&'static str),
    #[error("degenerate point at T = {t}: numerators and denominator vanish to high order")]
    Degenerate { t: f64 },
    #[error("could not resolve root in [{lo}, {hi}]")]
    UnresolvedRoot { lo: f64, hi: f64 },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("an infinity cut lies within the stencil around T = {t}")]
    NearInfinity { t: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, EnvError>;
