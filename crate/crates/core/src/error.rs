use thiserror::Error;

/// Errors raised by the section, quadrature and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid direction: {0}")]
    InvalidDirection(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("divergent integral: {0}")]
    Divergent(String),
    #[error("quadrature did not reach tolerance: estimated error {est_error:e} after {periods} periods")]
    NonConvergence { est_error: f64, periods: usize },
    #[error("closed form and quadrature disagree: {0}")]
    Inconsistent(String),
}

pub type Result<T> = std::result::Result<T, Error>;
