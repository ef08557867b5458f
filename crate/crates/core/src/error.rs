use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unsupported group {kind}{rank}")]
    Unsupported { kind: char, rank: usize },

    #[error("group of order {order} exceeds the enumeration cap of {cap}")]
    TooLarge { order: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("weights of different levels ({0} and {1}) are not comparable")]
    LevelMismatch(usize, usize),

    #[error("ordering {0} is not economical")]
    NotEconomical(String),

    #[error("operation requires type {expected}, got {found}")]
    WrongType { expected: String, found: String },

    #[error("unacceptable input: no nonzero coordinate found at level {level}")]
    UnacceptableInput { level: usize },

    #[error("not a partial order: {0}")]
    InvalidPoset(String),

    #[error("size cap exceeded: {0}")]
    SizeCap(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("singular matrix does not define a complete flag")]
    Singular,

    #[error("code family violates the distance condition: {0}")]
    Distance(String),

    #[error("random sampling failed after {0} attempts")]
    RetriesExhausted(usize),

    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
