//! Crate-wide error type.

use thiserror::Error;

use crate::halfint::HalfInt;

/// Errors reported by the engine.
#[derive(Debug, Error)]
pub enum Error {
    /// Segment endpoints must differ by an integer that is at least -1.
    #[error("segment endpoints [{x}, {y}] must differ by an integer >= -1")]
    InvalidSegment { x: HalfInt, y: HalfInt },

    /// The e-value (x + y) / 2 is only defined for nonempty segments.
    #[error("empty segment has no e-value")]
    EmptySegment,

    #[error("invalid classical base: {0}")]
    InvalidBase(String),

    #[error("invalid ladder: {0}")]
    InvalidLadder(String),

    #[error("not a ladder label: {0}")]
    NotLadderLabel(String),

    #[error("not strongly positive: {0}")]
    NotStronglyPositive(String),

    #[error("reducibility point alpha is required: {0}")]
    MissingAlpha(String),

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("index k={k} is outside the admissible range")]
    IndexOutOfRange { k: usize },

    #[error("invalid constituent: {0}")]
    InvalidConstituent(String),

    /// Signals an implementation bug, never valid output.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
