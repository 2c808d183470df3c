use thiserror::Error;

/// Errors raised by the exact and numeric engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,

    #[error("degree {degree} exceeds the factorization cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },

    #[error("decomposition type is ambiguous: {0} consistent partitions")]
    AmbiguousDT(usize),

    #[error("no decomposition type consistent with the admissible rows")]
    NoConsistentDT,

    #[error("specialization is not separable: {0}")]
    NonSeparable(String),

    #[error("excluded parameter: {0}")]
    ExcludedParameter(String),

    #[error("the two specializations must differ")]
    EqualParams,

    #[error("numeric precision exhausted at {0} digits")]
    PrecisionExhausted(u32),

    #[error("invalid rho cache: {0}")]
    RhoCacheInvalid(String),

    #[error("cleared witness equation vanishes identically")]
    DegenerateDenominator,

    #[error("Galois group is not D4")]
    NotD4,

    #[error("no root ordering rationalizes to a Brumer parameter")]
    NotInD5Class,

    #[error("Vandermonde system is ill-conditioned at the working precision")]
    IllConditioned,

    #[error("found {0} cross-ratio configurations, expected 10")]
    ConfigEnumerationFailed(usize),

    #[error("rational interpolation exceeded degree cap {0}")]
    DegreeCapExceeded(usize),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("factorization pattern {0:?} matches no admissible subgroup")]
    UnexpectedPattern(Vec<usize>),

    #[error("no table row matches: {0}")]
    NoTableRow(String),

    #[error("wrong number of parameters: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
