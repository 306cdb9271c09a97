use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {left} vs {right}")]
    DimMismatch { left: usize, right: usize },

    #[error("{what} must be nonnegative, got ({value})")]
    Negative { what: &'static str, value: String },

    #[error("invalid interval: lo {lo} > hi {hi}")]
    EmptyInterval { lo: String, hi: String },

    #[error("invalid rational literal {0:?}")]
    BadRational(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("undefined extended-rational operation: {0}")]
    UndefinedExt(&'static str),

    #[error("invalid truncation: {0}")]
    InvalidTruncation(String),

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("improper ideal: the zero-set is empty, so the ideal is all of L")]
    ImproperIdeal,

    #[error("values are only defined for nonzero vectors")]
    ZeroVector,

    #[error("{0} is not in the spectrum of the family")]
    NotInSpectrum(String),

    #[error("no witness exists: {0} lies outside the block of the truncation")]
    NoWitness(String),

    #[error("({0}) is not in π*({1})")]
    NotAWitness(String, String),

    #[error("{0}")]
    Unsupported(String),

    #[error("space too large: {points} points (limit {limit})")]
    TooLarge { points: usize, limit: usize },

    /// Internal consistency violation; never a property of the input.
    #[error("implementation fault: {0}")]
    Fault(String),
}

pub type Result<T> = std::result::Result<T, Error>;
