use serde_json::Value;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed document {path}: {source}")]
    Json {
        path: String,
        #[source]
        source: serde_json::Error,
    },

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] unipoiss::Error),

    /// Input parsed but failed a check; `details` are report entries.
    #[error("{message}")]
    Verification { message: String, details: Vec<Value> },
}

impl CliError {
    /// 1: verification failure, 2: input error, 3: enumeration guard exceeded.
    pub fn exit_code(&self) -> i32 {
        use unipoiss::Error as E;
        match self {
            CliError::Io { .. } | CliError::Json { .. } | CliError::Usage(_) => 2,
            CliError::Verification { .. } => 1,
            CliError::Core(e) => match e {
                E::Input(_) | E::Dimension(_) => 2,
                E::Precondition(_) | E::NotAlgebraMap { .. } | E::Verification(_) => 1,
                E::GuardExceeded { .. } => 3,
            },
        }
    }

    pub fn status(&self) -> &'static str {
        match self.exit_code() {
            1 => "verification_failed",
            3 => "guard_exceeded",
            _ => "input_error",
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
