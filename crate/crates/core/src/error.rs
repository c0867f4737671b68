use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A computation would exceed a configured bound. `limit` names the bound.
    #[error("resource limit exceeded: {limit} ({detail})")]
    ResourceLimit { limit: String, detail: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn limit(limit: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::ResourceLimit {
            limit: limit.into(),
            detail: detail.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
