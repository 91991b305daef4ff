use alloc::string::String;

use thiserror::Error;

/// Every failure the construction pipeline can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ForgeError {
    #[error("index domain error: {0}")]
    Domain(String),
    #[error("index arithmetic overflow")]
    Overflow,
    #[error("malformed literal `{literal}`: {reason}")]
    Parse { literal: String, reason: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("duplicate point at position {index}")]
    DuplicatePoint { index: usize },
    #[error("need at least {required} points, have {available}")]
    InsufficientPoints { required: usize, available: usize },
    #[error("invalid dense set: {0}")]
    InvalidSet(String),
    #[error("sampler exhausted its grid depth {max_depth} without a certified member")]
    SamplerLimit { max_depth: u32 },
    #[error("target set does not meet the disc: {0}")]
    EmptyIntersection(String),
    #[error("certification failed at index {index}: {reason}")]
    Certification { index: u64, reason: String },
    #[error("index {n} lies beyond depth {depth}; need depth at least {n}")]
    OutOfDepth { n: u64, depth: u64 },
    #[error("depth {configured} is insufficient; minimal depth is {minimal}")]
    InsufficientDepth { minimal: u64, configured: u64 },
    #[error("unsupported preset: {0}")]
    UnsupportedPreset(String),
    #[error("missing derivative data for order {i} at point {j}")]
    MissingData { i: u64, j: u64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = ForgeError> = core::result::Result<T, E>;
