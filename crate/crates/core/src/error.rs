use thiserror::Error;

use crate::pointset::PointSet;

/// Failures of the finite-space layer: construction, relations, actions and input decoding.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a topology: {reason} (sets {first:?} and {second:?})")]
    NotATopology {
        reason: String,
        first: PointSet,
        second: PointSet,
    },
    #[error("minimal open sets are inconsistent at point {point}: {reason}")]
    InconsistentMinimalOpens { point: usize, reason: String },
    #[error("point {point} is outside the carrier 0..{n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("empty carrier")]
    EmptyCarrier,
    #[error("enumeration capped at {cap} points, got {requested}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("dimension mismatch: relation on {relation} points, space on {space}")]
    DimensionMismatch { relation: usize, space: usize },
    #[error("not a partition: {0}")]
    NotAPartition(String),
    #[error("relation is not an equivalence: {0}")]
    NotAnEquivalence(String),
    #[error("generator {index} is not a bijection: {reason}")]
    NotABijection { index: usize, reason: String },
    #[error("generator {index} is invalid: {reason}")]
    InvalidGenerator { index: usize, reason: String },
    #[error("invalid input at `{key}`: {reason}")]
    Input { key: String, reason: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
