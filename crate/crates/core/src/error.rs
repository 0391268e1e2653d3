//! Error types shared by every module of the library.

use thiserror::Error;

/// Broad failure class, used by callers (e.g. the CLI) to map errors onto
/// exit codes: invalid input versus a numerical procedure that gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Domain,
    NonConvergence,
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("{field} must be positive, got {value}")]
    NotPositive { field: &'static str, value: f64 },

    #[error("{field} must be finite, got {value}")]
    NotFinite { field: &'static str, value: f64 },

    #[error("{field} out of range: {message}")]
    OutOfRange {
        field: &'static str,
        message: String,
    },

    /// Evaluation requested on a singular surface (sound cone, wall, apex).
    #[error("singular evaluation: {0}")]
    Singular(String),

    /// Mode data violates the linear dispersion omega = cS * k.
    #[error("dispersion mismatch: omega = {omega} but cS * k = {expected}")]
    DispersionMismatch { omega: f64, expected: f64 },

    #[error("no sign change on [{lo}, {hi}]; cannot bracket a root")]
    NoBracket { lo: f64, hi: f64 },

    #[error("no conjugate reflected ray inside the aperture for alpha = {alpha}")]
    NoConjugateRay { alpha: f64 },

    #[error("extrapolation diverged ({context}); corrections grew from {prev:.3e} to {last:.3e})")]
    ExtrapolationDiverged {
        context: String,
        prev: f64,
        last: f64,
    },

    #[error("quadrature did not converge: requested {requested:.3e}, achieved {achieved:.3e}")]
    QuadratureNonConvergent { requested: f64, achieved: f64 },

    #[error(
        "lattice sum truncated: requested relative bound {requested:.3e}, \
         achievable within the point budget {achievable:.3e}"
    )]
    LatticeTruncation { requested: f64, achievable: f64 },

    #[error("Fock-space truncation failure: {0}; increase the truncation dimension")]
    FockTruncation(String),

    #[error("unsupported configuration: {0}")]
    Unsupported(String),

    #[error("config error: {0}")]
    Config(String),
}

impl Error {
    /// Classify for exit-code mapping.
    pub fn class(&self) -> ErrorClass {
        match self {
            Error::ExtrapolationDiverged { .. }
            | Error::QuadratureNonConvergent { .. }
            | Error::LatticeTruncation { .. }
            | Error::FockTruncation(_) => ErrorClass::NonConvergence,
            _ => ErrorClass::Domain,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Validate that `value` is strictly positive and finite.
pub fn require_positive(field: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NotFinite { field, value });
    }
    if value <= 0.0 {
        return Err(Error::NotPositive { field, value });
    }
    Ok(value)
}

/// Validate that `value` is finite.
pub fn require_finite(field: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NotFinite { field, value });
    }
    Ok(value)
}
