use thiserror::Error;

use super::model::CrossingId;

/// Failures of the geometric invariant computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MovieError {
    #[error("invalid movie:\n{0}")]
    Invalid(String),
    #[error("dangling double curve: crossing {crossing} in still {still} has no continuation")]
    Dangling { still: usize, crossing: CrossingId },
    #[error("double curve through crossing {crossing} changes its (over, under) labels")]
    TypeChange { crossing: CrossingId },
    #[error("push-off of a double curve through crossing {crossing} failed: {reason}")]
    PushOff { crossing: CrossingId, reason: String },
    #[error("linking number: {0}")]
    Linking(String),
    #[error("triple linking t({0},{1},{2}) is undefined: requires i != j and j != k")]
    DegenerateTriple(usize, usize, usize),
    #[error("label {label} out of range 1..={n}")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("consistency failure: {0}")]
    Consistency(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
}
