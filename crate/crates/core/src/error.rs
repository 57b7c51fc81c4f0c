use thiserror::Error;

/// Errors raised by the library. Every variant maps to a stable `kind` string
/// used in structured CLI and FFI error reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("parse error in `{input}`: {message}")]
    Parse { input: String, message: String },

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("size guard exceeded: {0}")]
    Size(String),

    #[error("invalid point counts: {0}")]
    InvalidCounts(String),

    #[error("infinite quotient: {0}")]
    InfiniteQuotient(String),

    #[error("indeterminate at working precision: {0}")]
    Precision(String),

    #[error("sequence does not conform to e_n = lambda*n + mu*p^n + nu: {0}")]
    NonConforming(String),

    #[error("twist parameters differ: {left} vs {right}")]
    TwistMismatch { left: u64, right: u64 },

    #[error("reduction not stable as given: {0}")]
    NotStable(String),

    #[error("internal consistency fault: {0}")]
    Consistency(String),
}

impl Error {
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Parse { .. } => "parse",
            Error::Precondition(_) => "precondition",
            Error::Size(_) => "size",
            Error::InvalidCounts(_) => "invalid_counts",
            Error::InfiniteQuotient(_) => "infinite_quotient",
            Error::Precision(_) => "precision",
            Error::NonConforming(_) => "non_conforming",
            Error::TwistMismatch { .. } => "twist_mismatch",
            Error::NotStable(_) => "not_stable",
            Error::Consistency(_) => "consistency",
        }
    }

    pub(crate) fn parse(input: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            input: input.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
