use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("DimensionMismatch: {0}")]
    DimensionMismatch(String),
    #[error("InvalidArgument: {0}")]
    InvalidArgument(String),
    #[error("SingularTransform: transform matrix is not invertible")]
    SingularTransform,
    #[error("SingularSlice: transform-domain slice {0} is singular")]
    SingularSlice(usize),
    #[error("SingularSystem: pivot below rank threshold")]
    SingularSystem,
    #[error("ExistenceViolated: rank guard failed on slice {0}")]
    ExistenceViolated(usize),
    #[error("DivisionByZeroFunction: division by the zero rational function")]
    DivisionByZeroFunction,
    #[error("PoleAtPoint: denominator vanishes at the evaluation point")]
    PoleAtPoint,
    #[error("MalformedHeader: {0}")]
    MalformedHeader(String),
    #[error("UnsupportedMaxval: {0}")]
    UnsupportedMaxval(u32),
    #[error("TruncatedPayload: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("DimMismatch: images are {0:?} and {1:?}")]
    DimMismatch((usize, usize), (usize, usize)),
    #[error("TooSmall: image {0}x{1} is smaller than the 8x8 SSIM window")]
    TooSmall(usize, usize),
    #[error("Parse: line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("Io: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Stable variant name, used by the CLI on standard error.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::InvalidArgument(_) => "InvalidArgument",
            Error::SingularTransform => "SingularTransform",
            Error::SingularSlice(_) => "SingularSlice",
            Error::SingularSystem => "SingularSystem",
            Error::ExistenceViolated(_) => "ExistenceViolated",
            Error::DivisionByZeroFunction => "DivisionByZeroFunction",
            Error::PoleAtPoint => "PoleAtPoint",
            Error::MalformedHeader(_) => "MalformedHeader",
            Error::UnsupportedMaxval(_) => "UnsupportedMaxval",
            Error::TruncatedPayload { .. } => "TruncatedPayload",
            Error::DimMismatch(..) => "DimMismatch",
            Error::TooSmall(..) => "TooSmall",
            Error::Parse { .. } => "Parse",
            Error::Io(_) => "Io",
        }
    }

    /// True for failures of the mathematics rather than of input handling.
    pub fn is_math(&self) -> bool {
        matches!(
            self,
            Error::SingularTransform
                | Error::SingularSlice(_)
                | Error::SingularSystem
                | Error::ExistenceViolated(_)
                | Error::DivisionByZeroFunction
                | Error::PoleAtPoint
        )
    }

    pub(crate) fn dims(msg: impl Into<String>) -> Self {
        Error::DimensionMismatch(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
