use thiserror::Error;

/// Errors surfaced by the library. Every variant corresponds to a rejected
/// precondition or a numerical procedure that could not reach its target.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("polynomial precondition violated: {0}")]
    PolynomialPrecondition(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("height t = {t} is outside the supported range ({reason})")]
    HeightOutOfRange { t: f64, reason: &'static str },

    #[error("Richardson tableau did not converge at t = {t}, k = {k}: last correction {delta:e}")]
    RichardsonDiverged { t: f64, k: usize, delta: f64 },

    #[error("quadrature did not converge on panel [{a}, {b}]: error estimate {err:e}")]
    QuadratureDiverged { a: f64, b: f64, err: f64 },

    #[error("non-finite evaluation at t = {0}")]
    NonFinite(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
