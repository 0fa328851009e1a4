use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or inconsistent input data.
    #[error("input error: {0}")]
    Input(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// An operation was called on data that has not passed the required verification.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A generator assignment does not annihilate the named relation.
    #[error("not an algebra map: relation {relation} does not vanish")]
    NotAlgebraMap { relation: String },

    #[error("verification failed: {0}")]
    Verification(String),

    /// Exhaustive search would exceed the configured enumeration limit.
    #[error("search space of {required} candidates exceeds the enumeration limit {limit}; try a smaller instance")]
    GuardExceeded { required: u128, limit: u128 },
}

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn dimension(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }
}
