use thiserror::Error;

/// Errors raised anywhere in the numerical core.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum CpError {
    #[error("detuning too small: |1 - mu| = {detuning:e} < {limit:e}")]
    DetuningTooSmall { detuning: f64, limit: f64 },
    #[error("{what} must be strictly positive, got {value}")]
    NonPositiveLength { what: &'static str, value: f64 },
    #[error("{what} must be finite and positive, got {value}")]
    InvalidParameter { what: &'static str, value: f64 },
    #[error("linewidth ratio rho = {rho} outside the weak-coupling range (0, {limit})")]
    WeakCouplingViolated { rho: f64, limit: f64 },
    #[error("{which} dipole is not a unit vector (norm = {norm})")]
    NonUnitDipole { which: &'static str, norm: f64 },
    #[error("zero separation between test atom and array atom")]
    ZeroSeparation,
    #[error("denominator pole hit in process {process}")]
    PoleHit { process: &'static str },
    #[error("quadrature failed to converge: estimate {estimate:e}, error {error:e} after {evaluations} evaluations")]
    QuadratureFailure { estimate: f64, error: f64, evaluations: usize },
    #[error("{function} is undefined for x = {x}")]
    DomainError { function: &'static str, x: f64 },
    #[error("power-law fit needs at least {needed} points inside the window, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("zero value at z = {z}; cannot take logarithm")]
    ZeroValue { z: f64 },
    #[error("envelope fit needs at least {needed} peaks, found {got}")]
    TooFewPeaks { needed: usize, got: usize },
}

pub type Result<T, E = CpError> = std::result::Result<T, E>;
