use thiserror::Error;

use crate::shapes::Square;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("box ({}, {}) lies outside the shape", .0.0, .0.1)]
    OutsideShape(Square),
    #[error("Le condition fails at black box ({}, {})", .0.0, .0.1)]
    LeCondition(Square),
    #[error("index set {0:?} is not a strictly increasing subset of 1..={1} of size {2}")]
    BadIndexSet(Vec<usize>, usize, usize),
    #[error("partition {0:?} is not weakly decreasing with positive parts inside a {1}x{2} box")]
    BadPartition(Vec<usize>, usize, usize),
    #[error("size mismatch: {0} rows against {1} columns")]
    SizeMismatch(usize, usize),
    #[error("operands belong to different ambient algebras")]
    MixedAmbient,
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
