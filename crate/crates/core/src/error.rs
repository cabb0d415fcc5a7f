use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("domain mismatch: {0}")]
    DomainMismatch(String),

    #[error("map has nonzero winding number {0}, no continuous lift exists")]
    NonzeroWinding(i64),

    #[error("winding number is undefined for cylinder maps")]
    WindingUndefined,

    #[error("continued fraction needs at least one partial quotient")]
    EmptyQuotients,

    #[error("convergent index {index} out of range, {available} available")]
    ConvergentIndex { index: usize, available: usize },

    #[error("insufficient convergent depth: {0}")]
    InsufficientDepth(String),

    #[error("undecidable at available precision: {0}")]
    Undecidable(String),

    #[error("uncertifiable: {0}")]
    Uncertifiable(String),

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("no admissible beta with denominator at most {0}")]
    NoBeta(u64),

    #[error("window artifact: {0}")]
    WindowArtifact(String),

    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("config error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
