use std::fmt;

use thiserror::Error;

/// A single violated configuration invariant.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum ConfigError {
    #[error("inter-spin distance must be positive, got {0} m")]
    NonPositiveDistance(f64),
    #[error("initial state cannot be normalized (squared norm {0:e})")]
    NonUnitInitialState(f64),
    #[error("time step {dt:e} s is coarser than t_max/100 = {limit:e} s")]
    StepTooCoarse { dt: f64, limit: f64 },
    #[error("time horizon must be positive, got {0} s")]
    NonPositiveHorizon(f64),
    #[error("time step must be positive, got {0} s")]
    NonPositiveStep(f64),
    #[error("T2 must be positive, got {0} s")]
    NonPositiveT2(f64),
    #[error("physical constant `{0}` must be finite and positive")]
    BadConstant(&'static str),
    #[error("parameter `{0}` must be finite")]
    NonFinite(&'static str),
    #[error("at least one stored sample is required")]
    NoSamples,
}

/// Every invariant violated by a configuration, in check order.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigErrors(pub Vec<ConfigError>);

impl fmt::Display for ConfigErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let msgs: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "invalid configuration: {}", msgs.join("; "))
    }
}

impl std::error::Error for ConfigErrors {}

/// Errors raised while building, propagating or analysing the gate dynamics.
#[derive(Clone, Debug, PartialEq, Error)]
pub enum GateError {
    #[error(transparent)]
    Config(#[from] ConfigErrors),
    #[error("inter-spin distance must be positive, got {0} m")]
    NonPositiveDistance(f64),
    #[error("position {x:e} m lies on a wire (singular point {wire:e} m)")]
    SingularPosition { x: f64, wire: f64 },
    #[error("invalid wire geometry: {0}")]
    BadWires(String),
    #[error("Hamiltonian is not Hermitian (max deviation {0:e})")]
    NonHermitianInput(f64),
    #[error("squared norm drifted to {norm:.12} at t = {t:e} s (tolerance {tolerance:e})")]
    NormDrift { t: f64, norm: f64, tolerance: f64 },
    #[error("phase of c{index} undefined at t = {t:e} s (|c| = {amplitude:e})")]
    UndefinedPhase { t: f64, index: usize, amplitude: f64 },
    #[error("composite phase never reaches {target} rad before t = {t_max:e} s (final value {theta_final} rad)")]
    NoCrossing { target: f64, t_max: f64, theta_final: f64 },
    #[error("state has zero norm")]
    ZeroState,
    #[error("concurrence {0} outside [0, 1]")]
    OutOfRange(f64),
    #[error("invalid time grid: {0}")]
    BadTimes(String),
}

impl GateError {
    /// Numerical failures, as opposed to bad input or a missing crossing.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            GateError::NormDrift { .. } | GateError::UndefinedPhase { .. } | GateError::NonHermitianInput(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, GateError>;
