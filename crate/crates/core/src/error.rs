use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Coarse failure category, used by front ends to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    Config,
    Numerical,
    ConstraintDegeneracy,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("config error in `{key}`: {message}")]
    Config { key: String, message: String },

    #[error("field family mismatch: config is {actual}, operation needs {expected}")]
    KindMismatch {
        expected: &'static str,
        actual: &'static str,
    },

    #[error("field is singular at the origin (filament source at r = 0)")]
    SingularPoint,

    #[error("degenerate constraints: {0}")]
    DegenerateConstraint(String),

    #[error("constraints are not second class (bracket matrix determinant vanishes)")]
    NotSecondClass,

    #[error("reduction undefined: {0}")]
    ReductionUndefined(String),

    #[error("radial grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("lowest band not spectrally isolated at mu = {mu:.3e}: measured gap {gap:.6e} hbar*Omega")]
    BandGap { mu: f64, gap: f64 },

    #[error("insufficient band: {0}")]
    InsufficientBand(String),

    #[error("parse error at byte {pos}: {message}")]
    Parse { pos: usize, message: String },

    #[error("algebra error: {0}")]
    Algebra(String),
}

impl Error {
    pub fn config(key: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            key: key.into(),
            message: message.into(),
        }
    }

    pub fn class(&self) -> ErrorClass {
        match self {
            Error::Config { .. } | Error::KindMismatch { .. } | Error::Parse { .. } => {
                ErrorClass::Config
            }
            Error::DegenerateConstraint(_)
            | Error::NotSecondClass
            | Error::ReductionUndefined(_) => ErrorClass::ConstraintDegeneracy,
            Error::SingularPoint
            | Error::GridTooCoarse(_)
            | Error::NonConvergence { .. }
            | Error::BandGap { .. }
            | Error::InsufficientBand(_)
            | Error::Algebra(_) => ErrorClass::Numerical,
        }
    }
}
