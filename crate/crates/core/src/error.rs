use thiserror::Error;

use crate::subset::SubsetIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is singular")]
    Singular,
    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("constant vector lies on discriminantal hyperplane M_{0}")]
    OnHyperplane(SubsetIndex),
    #[error("refusing to enumerate: {0}")]
    ScaleGuard(String),
    #[error("unknown fixture `{name}` (available: {available})")]
    UnknownFixture { name: String, available: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(location: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        location: location.into(),
        message: message.into(),
    }
}
