use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("node budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("truncation descriptors differ: {0} vs {1}")]
    TruncationMismatch(String, String),

    #[error("internal cross-check failed: {0}")]
    CrossCheck(String),
}

pub type Result<T> = std::result::Result<T, Error>;
