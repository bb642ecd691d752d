use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// |alpha| lies outside the enforced fraction of the convergence disk.
    #[error("DivergenceError: |alpha| = {alpha_abs} exceeds the allowed bound {bound} (convergence radius {radius})")]
    Divergence { alpha_abs: f64, bound: f64, radius: f64 },

    #[error("TruncationError: state truncation did not reach tolerance {tol} within {cap} levels")]
    Truncation { tol: f64, cap: usize },

    #[error("ToleranceError: series did not reach tolerance {tol} within {cap} terms (tail {tail})")]
    Tolerance { tol: f64, cap: usize, tail: f64 },

    #[error("HeadroomError: operator needs {needed} levels but the state holds {available}")]
    Headroom { needed: usize, available: usize },

    #[error("ResourceError: {0}")]
    Resource(String),

    #[error("DegenerateDenominator: |{denominator}| is below {threshold}")]
    DegenerateDenominator { denominator: f64, threshold: f64 },

    #[error("ZeroMeanError: mean photon number vanishes (vacuum state)")]
    ZeroMean,

    #[error("OverflowError: {0}")]
    Overflow(String),
}

impl Error {
    /// Short marker used in CSV `error` columns.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParameter(_) => "InvalidParameter",
            Error::Divergence { .. } => "DivergenceError",
            Error::Truncation { .. } => "TruncationError",
            Error::Tolerance { .. } => "ToleranceError",
            Error::Headroom { .. } => "HeadroomError",
            Error::Resource(_) => "ResourceError",
            Error::DegenerateDenominator { .. } => "DegenerateDenominator",
            Error::ZeroMean => "ZeroMeanError",
            Error::Overflow(_) => "OverflowError",
        }
    }
}
