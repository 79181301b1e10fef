use thiserror::Error;

/// Errors raised across the library; DSL diagnostics carry a location.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("name error: {0}")]
    Name(String),
    #[error("type error: {0}")]
    Type(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("Jacobi failure at indices ({j}, {k}, {l}): cyclic sum {sum}")]
    JacobiFailure { j: usize, k: usize, l: usize, sum: String },
    #[error("point is not singular: rank {0}")]
    NonSingularPoint(usize),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// Attaches a source location to name and type errors from the DSL.
    pub fn at(self, line: usize, col: usize) -> Error {
        match self {
            Error::Name(m) => Error::Name(format!("{line}:{col}: {m}")),
            Error::Type(m) => Error::Type(format!("{line}:{col}: {m}")),
            other => other,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
