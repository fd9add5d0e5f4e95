//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element cap of {cap} exceeded while enumerating group")]
    CapExceeded { cap: usize },

    #[error("group order {order} exceeds subgroup enumeration cap {cap}")]
    SubgroupCapExceeded { order: usize, cap: usize },

    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    #[error("element is not a member of the group")]
    ElementNotInGroup,

    #[error("subgroup is not contained in its parent")]
    NotContained,

    #[error("class functions belong to different groups")]
    GroupMismatch,

    #[error("not a character: {0}")]
    NotACharacter(String),

    #[error("the zero class function has no constituents")]
    ZeroCharacter,

    #[error("H = G is not a valid subgroup for a position reducing tuple")]
    SubgroupNotProper,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("lifted multiplicity out of range: {0}")]
    LiftOutOfRange(String),

    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown constructor `{0}`")]
    UnknownConstructor(String),

    #[error("constructor parameter out of range: {0}")]
    BadParameter(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
