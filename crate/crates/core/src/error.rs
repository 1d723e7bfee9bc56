use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("invalid variety ({m},{n}): {reason}")]
    Variety { m: u64, n: u64, reason: String },
    #[error("condition ({condition}) fails: {detail}")]
    Condition { condition: String, detail: String },
    #[error("element budget exceeded: {needed} elements requested, limit {limit}")]
    Budget { needed: u64, limit: u64 },
}

pub type Result<T> = std::result::Result<T, Error>;
