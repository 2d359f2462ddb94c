use thiserror::Error;

/// Errors raised by the evaluation and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid precision: {0} bits (minimum is 64)")]
    InvalidPrecision(u32),
    #[error("invalid tolerance: {0}")]
    InvalidTolerance(String),
    #[error("invalid modulus: {0}")]
    InvalidModulus(String),
    #[error("singular term: {0}")]
    SingularTerm(String),
    #[error("unsupported identity: {0}")]
    Unsupported(String),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("moduli not coprime: gcd({0}, {1}) > 1")]
    Coprimality(i64, i64),
    #[error("evaluation point too close to a pole: {0}")]
    NearSingular(String),
    #[error("contour error: {0}")]
    Contour(String),
    #[error("series truncation too shallow: {0}")]
    Truncation(String),
}

impl Error {
    /// True for errors that mean "parameters outside the identity's hypotheses",
    /// which sweeps record as skipped rather than failed.
    pub fn is_hypothesis(&self) -> bool {
        matches!(
            self,
            Error::Hypothesis(_) | Error::Coprimality(..) | Error::Unsupported(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
