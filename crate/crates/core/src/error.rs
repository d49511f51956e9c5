use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("map is not well defined: {0}")]
    IllDefined(String),
    #[error("dimension mismatch: {0}")]
    Mismatch(String),
    #[error("group order bound {bound} exceeded")]
    OrderBound { bound: usize },
    #[error("malformed permutation: {0}")]
    BadPermutation(String),
    #[error("invalid G-action: {0}")]
    BadAction(String),
    #[error("unknown or invalid module: {0}")]
    BadModule(String),
    #[error("sequence is not short exact: {0}")]
    NotExact(String),
    #[error("map is not equivariant")]
    NotEquivariant,
    #[error("group is not cyclic")]
    NotCyclic,
    #[error("direct system did not stabilize: {0}")]
    NotStabilized(String),
    #[error("stage compatibility failed: {0}")]
    StageCompatibility(String),
    #[error("vogel window too small: {0}")]
    WindowTooSmall(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("invalid input: {0}")]
    Input(String),
}

pub type Result<T> = std::result::Result<T, Error>;
