use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A denominator of some parameter-dependent expression vanished.
    #[error("degenerate parameters: {0} vanishes")]
    Degenerate(String),

    /// An operator entry was requested beyond the certified genericity horizon.
    #[error("index {index} lies beyond the genericity horizon {horizon}")]
    HorizonExceeded { index: usize, horizon: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An exact computation that the theory guarantees to be clean was not.
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("size {requested} exceeds the enumeration cap {cap}")]
    OverCap { requested: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("linear system is singular: {0}")]
    Singular(String),
}

impl Error {
    pub fn degenerate(what: impl Into<String>) -> Self {
        Error::Degenerate(what.into())
    }

    pub fn precondition(what: impl Into<String>) -> Self {
        Error::Precondition(what.into())
    }
}
