use thiserror::Error;

/// Every fallible operation in the crate reports one of these.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported surface: {0}")]
    UnsupportedSurface(String),
    #[error("unsupported class: {0}")]
    UnsupportedClass(String),
    #[error("unsupported coordinates: {0}")]
    UnsupportedCoordinates(String),
    #[error("invalid path spec: {0}")]
    InvalidSpec(String),
    #[error("degenerate panel: {0}")]
    DegeneratePanel(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no witness found: {0}")]
    NoWitness(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
