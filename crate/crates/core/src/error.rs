use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("group of order {order} exceeds the capacity bound {bound}")]
    Capacity { order: usize, bound: usize },

    #[error("usage error: {0}")]
    Usage(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("classes do not partition the group: {0}")]
    NotPartition(String),

    #[error("the identity is not a class of its own")]
    MissingIdentityClass,

    #[error("class {class:?} has an inverse that is not a class")]
    NotInverseClosed { class: Vec<usize> },

    #[error(
        "product of classes {x} and {y} is not constant on a class: \
         element {z1} has coefficient {c1}, element {z2} has coefficient {c2}"
    )]
    ClosureViolated {
        x: usize,
        y: usize,
        z1: usize,
        z2: usize,
        c1: u32,
        c2: u32,
    },

    #[error("no classification case matches: {0}")]
    ClassificationGap(String),

    #[error("io error: {0}")]
    Io(String),

    #[error("malformed interchange file: {0}")]
    Format(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}
