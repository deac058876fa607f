use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A closed-form evaluation that should have produced an integer did not.
    /// Signals a transcription error in the coefficient tables.
    #[error("non-integer closed-form result: {0}")]
    NonInteger(String),
}
