use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("element {element} in set {set} is outside the universe [1, {n}]")]
    ElementOutOfRange { set: usize, element: u32, n: u32 },

    #[error("set id {id} out of range (m = {m})")]
    InvalidSetId { id: usize, m: usize },

    #[error("set id {0} appears more than once in a sub-collection")]
    DuplicateSetId(usize),

    #[error("cardinality constraint k = {k} must satisfy 1 <= k <= m = {m}")]
    InvalidK { k: usize, m: usize },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("the stream contained no sets")]
    EmptyStream,

    #[error("every subsampled instance terminated; increase c or decrease eps")]
    AllInstancesTerminated,

    #[error("hard-instance construction violated an identity: {0}")]
    Construction(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
