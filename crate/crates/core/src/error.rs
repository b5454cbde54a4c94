use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("move site not found: {0}")]
    SiteNotFound(String),
    #[error("local pattern mismatch: {0}")]
    PatternMismatch(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("boundary does not square to zero: {0}")]
    NonZeroSquare(String),
    #[error("simplicial identity violated: {0}")]
    Identity(String),
    #[error("invalid category: {0}")]
    Category(String),
    #[error("functoriality violated: {0}")]
    Functoriality(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("enumeration bound exceeded: {0}")]
    Bound(String),
    #[error("index out of range: {0}")]
    Range(String),
}

pub type Result<T> = std::result::Result<T, Error>;
