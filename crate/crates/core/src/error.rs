use thiserror::Error;

/// Errors produced by element arithmetic, enumeration and classification.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree must lie in 1..={max}, got {degree}")]
    InvalidDegree { degree: usize, max: usize },

    #[error("point {point} is outside 1..={n}")]
    PointOutOfRange { point: usize, n: usize },

    #[error("not injective: point {0} has two preimages")]
    NotInjective(usize),

    #[error("not a permutation: {0}")]
    NotBijective(String),

    #[error("cannot parse {kind} literal `{input}`: {reason}")]
    Parse {
        kind: &'static str,
        input: String,
        reason: String,
    },

    #[error("n = {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },

    #[error("rank mismatch {0} vs {1}")]
    RankMismatch(usize, usize),

    #[error("type mismatch {0} vs {1}")]
    TypeMismatch(String, String),

    #[error("invalid type vector {vector}: {reason}")]
    InvalidType { vector: String, reason: String },

    #[error("inconsistent multiset: {0}")]
    InconsistentMultiset(String),

    #[error("inconsistent cardinalities: {0}")]
    InconsistentCardinalities(String),

    #[error("exponent overflow")]
    Overflow,

    #[error("operation is not associative at indices ({0}, {1}, {2})")]
    NonAssociative(usize, usize, usize),

    #[error("invalid table: {0}")]
    InvalidTable(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn parse_error(kind: &'static str, input: &str, reason: impl Into<String>) -> Error {
    Error::Parse {
        kind,
        input: input.to_string(),
        reason: reason.into(),
    }
}
