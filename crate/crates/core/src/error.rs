use std::time::Duration;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("configuration error: {0}")]
    Config(String),

    /// The search hit its node or wall-clock cap. No partial result is returned.
    #[error("search incomplete: budget exhausted after {nodes} nodes ({elapsed:?})")]
    BudgetExhausted { nodes: u64, elapsed: Duration },

    /// A construction produced a tuple that failed its own residual check.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
