use thiserror::Error;

/// Errors produced by model construction, simulation, and the closed-form
/// evaluators.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unstable queue configuration: {0}")]
    Unstable(String),

    #[error("epochs must be strictly increasing (violated at index {0})")]
    NonMonotoneEpochs(usize),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("window error: {0}")]
    Window(String),

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("quadrature failed to converge: {0}")]
    Quadrature(String),

    #[error("series truncation failed: {0}")]
    Truncation(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),
}

pub type Result<T> = std::result::Result<T, Error>;
