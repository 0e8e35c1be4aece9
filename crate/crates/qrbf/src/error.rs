//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Two objects that must live on the same domain do not.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// A caller-supplied argument violates an operation's precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Structured-text input could not be parsed. Lines are 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// An exact scan would exceed the configured operation budget.
    #[error("budget exceeded for {operation}: estimated {estimated} ops > budget {budget}")]
    Budget {
        operation: String,
        estimated: u64,
        budget: u64,
    },

    /// The function has mean 1/2, so the homomorphism density target
    /// `p^(r2) q^(r1)` vanishes and relative deviations are undefined.
    #[error("degenerate mean: coefficient at 0 equals 1/2, edge density p = 0")]
    DegenerateMean,

    /// An internal consistency assertion failed; carries a witness.
    #[error("verification failure: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
