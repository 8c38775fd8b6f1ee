use thiserror::Error;

use crate::UserSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("receiver index {index} out of range for K = {k}")]
    ReceiverOutOfRange { index: usize, k: usize },

    #[error("user index {index} out of range for K = {k}")]
    UserOutOfRange { index: usize, k: usize },

    #[error("user set built for K = {found} used with K = {expected}")]
    UserCountMismatch { expected: usize, found: usize },

    #[error("invalid `{field}`: {reason}")]
    InvalidChannel { field: &'static str, reason: String },

    #[error("invalid decoding order: {0}")]
    InvalidOrder(String),

    #[error("rank table for receiver {receiver} has no entry for {subset}")]
    IncompleteTable { receiver: usize, subset: UserSet },

    #[error(
        "marginal rank {delta:e} for user {user} at receiver {receiver} is negative beyond tolerance; input is not monotone"
    )]
    NonMonotone {
        receiver: usize,
        user: usize,
        delta: f64,
    },

    #[error("{what} needs {needed} but the limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("refusing to solve: {0}")]
    Refused(String),

    #[error("rate vector is empty")]
    EmptyRateVector,

    #[error("thread pool: {0}")]
    ThreadPool(String),
}
