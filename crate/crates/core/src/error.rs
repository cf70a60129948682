use thiserror::Error;

/// Failures shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{op}: {reason}")]
    InvalidArgument { op: &'static str, reason: String },

    /// An exact division that must be remainder-free was not.
    #[error("integrity violation in {op}: {detail}")]
    Integrity { op: &'static str, detail: String },

    #[error("resource limit: {0}")]
    Resource(String),

    #[error("cannot parse {what}: {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("malformed certificate: {}", .0.join("; "))]
    MalformedCertificate(Vec<String>),

    #[error("not found: {0}")]
    NotFound(String),
}

impl Error {
    pub(crate) fn invalid(op: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            op,
            reason: reason.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
