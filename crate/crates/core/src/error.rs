use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("projection center coincides with a projected point")]
    CenterHit,
    #[error("inadmissible center: {0}")]
    InadmissibleCenter(String),
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("no rational image point: {0}")]
    NoRationalImage(String),
    #[error("verification failed: {0}")]
    Inconsistent(String),
    #[error("solution set is not finite: {0}")]
    NotFinite(String),
    #[error("ambiguous candidate matching: {0}")]
    AmbiguousMatch(String),
    #[error("numerical path tracking failed: {0}")]
    PathFailure(String),
    #[error("generation failed: {0}")]
    GenerationFailed(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable code, used in CLI error documents.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidInput(_) => "InvalidInput",
            Error::DegenerateInput(_) => "DegenerateInput",
            Error::CenterHit => "CenterHit",
            Error::InadmissibleCenter(_) => "InadmissibleCenter",
            Error::DegenerateCurve(_) => "DegenerateCurve",
            Error::NoRationalImage(_) => "NoRationalImage",
            Error::Inconsistent(_) => "Inconsistent",
            Error::NotFinite(_) => "NotFinite",
            Error::AmbiguousMatch(_) => "AmbiguousMatch",
            Error::PathFailure(_) => "PathFailure",
            Error::GenerationFailed(_) => "GenerationFailed",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
