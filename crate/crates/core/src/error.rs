use thiserror::Error;

/// Errors raised by the core library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("ambiguous lattice point: {0}")]
    Ambiguous(String),

    #[error("space mismatch: {0}")]
    SpaceMismatch(String),

    #[error("linear part is not invertible: {0}")]
    NotInvertible(String),

    #[error("refused: {0}")]
    Refused(String),

    #[error("methods disagree: {0}")]
    Disagreement(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
