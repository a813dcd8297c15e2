//! Error types shared across the crate.

use thiserror::Error;

#[derive(Error, Debug)]
pub enum TilingError {
    #[error("incompatible vertical alphabets")]
    AlphabetMismatch,

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("resource budget exceeded after power {completed}")]
    BudgetExceeded {
        completed: usize,
        /// Last power that finished within budget.
        last: Box<crate::transducer::MetaTransducer>,
    },

    #[error("loop family is not permutation-closed")]
    NotPermutationClosed,

    #[error("no rational orbit point found within the denominator bound")]
    NoOrbitPoint,

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, TilingError>;
