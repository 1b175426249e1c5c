use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid interval [{lo}, {hi}]: endpoints must be finite with lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("invalid integrator configuration: {0}")]
    InvalidConfig(&'static str),

    #[error("state dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    #[error("integration exhausted {max_steps} steps at t = {t} before reaching {target}")]
    StepLimit { max_steps: usize, t: f64, target: f64 },

    #[error("step size underflow at t = {t}")]
    StepUnderflow { t: f64 },

    #[error("non-finite value encountered at {at}")]
    NonFinite { at: f64 },

    #[error("point {x} with stencil half-width {h} leaves domain [{lo}, {hi}]")]
    OutsideDomain { x: f64, h: f64, lo: f64, hi: f64 },

    #[error("quadrature on [{lo}, {hi}] did not converge: error estimate {estimate:e} exceeds {tol:e}")]
    Quadrature { lo: f64, hi: f64, estimate: f64, tol: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("pole at x = {x}")]
    Pole { x: f64 },

    #[error("J = {value} at x = {x} violates {lower} < J < {upper}")]
    BoundsViolated { x: f64, value: f64, lower: f64, upper: f64 },

    #[error("solution collapsed (u <= 0) at x = {x}")]
    Collapse { x: f64 },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
