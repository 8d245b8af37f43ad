use thiserror::Error;

/// Errors raised by the algebraic and symbolic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid component count {0}: must be at least 1")]
    InvalidComponentCount(usize),
    #[error("component count mismatch: {left} vs {right}")]
    ShapeMismatch { left: usize, right: usize },
    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("double linking d({0},{0}) is undefined on a single component")]
    DegeneratePair(usize),
    #[error("triple linking t({0},{1},{2}) is undefined: requires i != j and j != k")]
    DegenerateTriple(usize, usize, usize),
    #[error("missing or extra coordinate: {0}")]
    BadCoordinates(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
