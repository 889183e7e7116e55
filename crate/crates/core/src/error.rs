use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QError {
    #[error("duplicate subsystem label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown subsystem label `{0}`")]
    UnknownLabel(String),
    #[error("invalid subsystem label `{0}`")]
    InvalidLabel(String),
    #[error("empty label selection")]
    EmptySelection,
    #[error("label sets overlap on `{0}`")]
    OverlappingSets(String),
    #[error("not a permutation of the layout labels")]
    NotAPermutation,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("block size {block} does not divide dimension {dim}")]
    BlockSize { dim: usize, block: usize },
    #[error("invalid state: {0}")]
    InvalidState(String),
    #[error("matrix is not an isometry (residual {0:.3e})")]
    NotIsometry(f64),
    #[error("dimension {requested} exceeds cap {cap}")]
    DimensionCap { requested: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, QError>;
