use thiserror::Error;

/// Errors raised by the toolkit.
///
/// Randomized routines that give up report [`Error::Inconclusive`]; they never
/// return a result they could not verify.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    #[error("not a module homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("field precondition violated: {0}")]
    FieldPrecondition(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("resolution truncated at cutoff {cutoff}: {what}")]
    Truncated { cutoff: usize, what: String },

    #[error("no obstruction: projective dimension {pd} is below {n}")]
    NoObstruction { pd: usize, n: usize },

    #[error("not a generator: projective P_{0} is not a direct summand")]
    NotAGenerator(usize),

    #[error("certificate rejected: {0}")]
    CertificateRejected(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse {
            location: format!("line {}, column {}", e.line(), e.column()),
            message: e.to_string(),
        }
    }
}
