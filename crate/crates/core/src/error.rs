//! Error type shared by all engines.

use thiserror::Error;

/// Machine-readable error categories. The CLI maps [`Error::category`] into
/// its JSON `error` field and the exit code.
#[derive(Debug, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right} ({context})")]
    SizeMismatch {
        left: usize,
        right: usize,
        context: &'static str,
    },

    #[error("enumeration limit exceeded: k = {k} is above the cap {cap} for {what}")]
    LimitExceeded { k: usize, cap: usize, what: &'static str },

    #[error("{l} does not divide {k}")]
    Divisibility { l: usize, k: usize },

    #[error("singular Gram matrix for {cat} at k = {k}, n = {n}")]
    SingularGram { cat: String, k: usize, n: u64 },

    #[error("category {cat} does not support cumulant counting: it is not one of the block-deletion-closed kinds O, S, H, B or their free versions")]
    UnsupportedCategory { cat: String },

    #[error("category {cat} requires a color string")]
    MissingColorString { cat: String },

    #[error("category {cat} does not take a color string")]
    UnexpectedColorString { cat: String },

    #[error("index {value} out of range 1..={n}")]
    IndexOutOfRange { value: u64, n: u64 },

    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Short kebab-case category for machine consumption.
    pub fn category(&self) -> &'static str {
        match self {
            Error::SizeMismatch { .. } => "size-mismatch",
            Error::LimitExceeded { .. } => "limit-exceeded",
            Error::Divisibility { .. } => "divisibility",
            Error::SingularGram { .. } => "singular-gram",
            Error::UnsupportedCategory { .. } => "unsupported-category",
            Error::MissingColorString { .. } => "missing-color-string",
            Error::UnexpectedColorString { .. } => "unexpected-color-string",
            Error::IndexOutOfRange { .. } => "index-out-of-range",
            Error::InvalidSpec(_) => "invalid-spec",
            Error::Parse(_) => "parse-error",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
