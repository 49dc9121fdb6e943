use alloc::string::String;

/// Errors reported by the reconstruction library.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("point is not on the shape (distance {distance:e})")]
    NotOnShape { distance: f64 },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error("malformed filtration: {0}")]
    MalformedFiltration(String),
    #[error("query outside computed range: t = {t} exceeds {max}")]
    QueryOutOfRange { t: f64, max: f64 },
    #[error("not a subcomplex")]
    NotSubcomplex,
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
