use thiserror::Error;

/// Errors raised anywhere in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("empty sum in a semiring without an additive neutral element")]
    EmptySumWithoutNeutral,
    #[error("empty product in a semiring without a multiplicative unit")]
    EmptyProductWithoutOne,
    #[error("semiring {0} has no division")]
    DivisionUnsupported(String),
    #[error("value is not invertible: {0}")]
    NotInvertible(String),
    #[error("value {value} does not belong to semiring {semiring}")]
    NotInSemiring { value: String, semiring: String },
    #[error("a ring (additive inverses) is required, got {0}")]
    RingRequired(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("arity mismatch: {0}")]
    ArityMismatch(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("network exceeds the size cap: {vertices} vertices > {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("invalid network: {0}")]
    InvalidNetwork(String),
    #[error("pair is not proper: {0}")]
    NotProper(String),
    #[error("bad sizes: {0}")]
    BadSizes(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("inconsistent sets: {0}")]
    InconsistentSets(String),
    #[error("patterns are balanced")]
    PatternsBalanced,
    #[error("patterns are not balanced")]
    PatternsUnbalanced,
    #[error("not a planar perfect matching: {0}")]
    NotPlanarMatching(String),
    #[error("couple is not in the matching: {0}")]
    CoupleNotInMatching(String),
    #[error("tableau is not semistandard: {0}")]
    NotSemistandard(String),
    #[error("not a flow: {0}")]
    NotAFlow(String),
    #[error("bad partition length: {0}")]
    BadLength(String),
    #[error("construction failed: {0}")]
    Construction(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
