use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("exponent {0} is not statistical (requires a branch choice)")]
    NonStatistical(String),

    #[error("infinite support: {0}")]
    InfiniteSupport(String),

    #[error("variable mismatch: {0}")]
    Variables(String),

    #[error("undetermined above cutoff {cutoff}: {what}")]
    AboveCutoff { cutoff: String, what: String },

    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),

    #[error("unknown name: {0}")]
    UnknownName(String),

    #[error("invalid structure: {0}")]
    InvalidStructure(String),

    #[error("{identity} fails for {witness}")]
    IdentityViolation { identity: String, witness: String },

    #[error("not additively local: {0}")]
    NotAdditivelyLocal(String),

    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
