use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("space mismatch: expected {expected}, found {found}")]
    SpaceMismatch { expected: String, found: String },
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: u32, found: u32 },
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("series has zero constant term")]
    ZeroConstantTerm,
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("no image for `{label}` under {hom}")]
    MissingImage { hom: String, label: String },
    #[error("unsupported product: {0}")]
    UnsupportedProduct(String),
    #[error("parse error in `{input}`: {message}")]
    Parse { input: String, message: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub fn unknown(kind: &'static str, name: impl Into<String>) -> Self {
        Error::Unknown {
            kind,
            name: name.into(),
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }

    /// Errors that stem from data files rather than from the caller.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config(_) | Error::Parse { .. } | Error::MissingImage { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
