use thiserror::Error;

/// Errors produced by parsing, the bijections, and the exact arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ButterflyError {
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: requested size {requested} but the configured maximum is {max}")]
    Capacity { requested: usize, max: usize },

    #[error("inexact arithmetic: {0}")]
    Exactness(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),
}

impl ButterflyError {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        ButterflyError::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn domain(message: impl Into<String>) -> Self {
        ButterflyError::Domain(message.into())
    }
}

pub type Result<T> = std::result::Result<T, ButterflyError>;
