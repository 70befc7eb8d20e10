use thiserror::Error;

use crate::elements::Family;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group parameters: {0}")]
    InvalidSpec(String),

    #[error("family {0} has no element-level model")]
    UnsupportedFamily(Family),

    #[error("group order {order} exceeds the guard limit {limit}")]
    OrderLimitExceeded { order: String, limit: u64 },

    #[error("elements belong to different groups")]
    SpecMismatch,

    #[error("signed permutation has an odd number of negative entries")]
    DParityViolation,

    #[error("invalid rank: {0}")]
    InvalidRank(String),

    #[error("index pair ({i}, {j}) is not admissible: {reason}")]
    IndexError {
        i: i64,
        j: i64,
        reason: &'static str,
    },

    #[error("invalid element: {0}")]
    InvalidElement(String),

    #[error("{0}")]
    Unsupported(String),
}
