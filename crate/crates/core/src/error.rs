// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// A malformed piece of text, with the byte offset where parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at position {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("empty family")]
    EmptyFamily,
    #[error("ordinal {0} is not a limit ordinal")]
    NotLimit(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("unexpected fixed point: {0}")]
    UnexpectedFixedPoint(String),
    #[error("domain mismatch: {0} vs {1}")]
    DomainMismatch(String, String),
    #[error("point {0} lies outside the domain {1}")]
    OutOfDomain(String, String),
}
