use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("zero form")]
    ZeroForm,

    #[error("form is not primitive; normalize before reducing")]
    NotPrimitive,

    #[error("degree mismatch: numerator form has degree {f}, denominator form has degree {g}")]
    DegreeMismatch { f: usize, g: usize },

    #[error("forms share a common factor (resultant is zero)")]
    CommonFactor,

    #[error("map has degree {0}; degree at least {1} is required")]
    DegreeTooSmall(usize, usize),

    #[error("singular matrix")]
    SingularMatrix,

    #[error("not a prime: {0}")]
    NotPrime(String),

    #[error("not in normal position: numerator degree must exceed denominator degree")]
    NotNormalPosition,

    #[error("hypothesis fails: some critical fiber contains an unramified point")]
    HypothesisFails,

    #[error("singular curve: 4p^3 + 27q^2 = 0")]
    SingularCurve,

    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("zero denominator at byte {offset}")]
    ZeroDenominator { offset: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A mathematically impossible state was reached; always a bug.
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}
