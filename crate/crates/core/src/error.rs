use thiserror::Error;

/// Failure modes shared by every evaluator in the crate.
///
/// The variant names are part of the report format: the CLI writes them
/// verbatim when a numeric error interrupts a run.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("DomainError: {0}")]
    Domain(String),
    #[error("NonConvergence: {0}")]
    NonConvergence(String),
    #[error("CancellationError: {0}")]
    Cancellation(String),
    #[error("TailNotBounded: {0}")]
    TailNotBounded(String),
    #[error("StepTooLarge: {0}")]
    StepTooLarge(String),
    #[error("BracketFailure: {0}")]
    BracketFailure(String),
    #[error("NearPole: {0}")]
    NearPole(String),
    #[error("RootNotBracketed: {0}")]
    RootNotBracketed(String),
    #[error("QuadratureStalled: {0}")]
    QuadratureStalled(String),
    #[error("ParseError: {0}")]
    Parse(String),
}

impl Error {
    /// Stable name of the variant, as written into reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::NonConvergence(_) => "NonConvergence",
            Error::Cancellation(_) => "CancellationError",
            Error::TailNotBounded(_) => "TailNotBounded",
            Error::StepTooLarge(_) => "StepTooLarge",
            Error::BracketFailure(_) => "BracketFailure",
            Error::NearPole(_) => "NearPole",
            Error::RootNotBracketed(_) => "RootNotBracketed",
            Error::QuadratureStalled(_) => "QuadratureStalled",
            Error::Parse(_) => "ParseError",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
