use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Caller supplied an invalid argument (bad vertex id, `s == t`, ...).
    #[error("invalid input: {0}")]
    Input(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A decomposition, model or certificate is malformed.
    #[error("structural error: {0}")]
    Structural(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// An exponential routine was asked to run past its budget.
    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("path enumeration exceeded the limit of {limit} paths")]
    CountLimit { limit: usize },

    /// Some internal cross-check failed; indicates a bug or an inconsistent oracle.
    #[error("internal consistency error: {0}")]
    Consistency(String),
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }
}
