use thiserror::Error;

use crate::engine::EnergyResult;

pub type Result<T> = std::result::Result<T, CasimirError>;

#[derive(Debug, Clone, Error)]
pub enum CasimirError {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("gamma pole in {func}: argument {arg} is a nonpositive integer")]
    Pole { func: &'static str, arg: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The requested accuracy was not reached; the best available value is attached.
    #[error("tolerance not met: value {} with error estimate {}", .partial.value, .partial.err_estimate)]
    ToleranceNotMet { partial: Box<EnergyResult> },

    #[error("no displayed expansion for {config} in the {regime} regime")]
    UnsupportedRegime { config: String, regime: String },

    #[error("integral does not converge: {0}")]
    NonConvergent(String),

    /// Raised only when an internal invariant breaks (for example |M_n| >= 1).
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl CasimirError {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        CasimirError::Domain {
            func,
            detail: detail.into(),
        }
    }
}
