use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed varint at offset {offset}")]
    MalformedVarint { offset: usize },

    #[error("value {0:?} does not fit the 63-bit numeric range")]
    Overflow(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("compression backend unavailable: {0}")]
    BackendUnavailable(String),

    #[error("unsupported archive: {0}")]
    UnsupportedVersion(String),

    #[error("corrupt archive: {0}")]
    CorruptArchive(String),

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn corrupt(msg: impl Into<String>) -> Self {
        Error::CorruptArchive(msg.into())
    }

    pub(crate) fn inconsistent(msg: impl Into<String>) -> Self {
        Error::InternalInconsistency(msg.into())
    }
}
