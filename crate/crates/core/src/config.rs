//! Physical constants, the simulation configuration and its validation.
//!
//! Fields are SI (metres, tesla, seconds). Everything downstream of the
//! configuration works in angular-frequency units: Hamiltonian entries are
//! energies divided by ħ, in rad/s, so propagation times come out in seconds.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{ConfigError, ConfigErrors};
use crate::state::{default_initial_state, StateVector};

/// Squared norms below this cannot be renormalized.
pub const RENORMALIZE_FLOOR: f64 = 1e-6;

/// Default tolerance on `| |psi|^2 - 1 |` along a trajectory.
pub const DEFAULT_NORM_TOLERANCE: f64 = 1e-8;

/// Default cap on stored trajectory samples.
pub const DEFAULT_MAX_SAMPLES: usize = 20_000;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhysicalConstants {
    /// Vacuum permeability, T·m/A.
    pub mu0: f64,
    /// Bohr magneton, J/T.
    pub mu_b: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Electron g-factor (dimensionless).
    pub gamma: f64,
}

impl PhysicalConstants {
    pub const CODATA: PhysicalConstants = PhysicalConstants {
        mu0: 1.256_637_062_12e-6,
        mu_b: 9.274_010_078_3e-24,
        hbar: 1.054_571_817e-34,
        gamma: 2.0,
    };

    fn check(&self, errs: &mut Vec<ConfigError>) {
        let named = [("mu0", self.mu0), ("muB", self.mu_b), ("hbar", self.hbar), ("gamma", self.gamma)];
        for (name, v) in named {
            if !(v.is_finite() && v > 0.0) {
                errs.push(ConfigError::BadConstant(name));
            }
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::CODATA
    }
}

/// Static fields only, or static fields plus the linearly oscillating drive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Static,
    Driven,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Static => "static",
            Mode::Driven => "driven",
        })
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_lowercase().as_str() {
            "static" => Ok(Mode::Static),
            "driven" => Ok(Mode::Driven),
            other => Err(format!("unknown mode `{other}` (expected static or driven)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub constants: PhysicalConstants,
    /// Inter-spin distance (m).
    pub r: f64,
    /// Static z-field at each spin (T).
    pub bz1: f64,
    pub bz2: f64,
    /// Gradient-field contribution at each spin (T).
    pub bg1: f64,
    pub bg2: f64,
    /// Drive amplitudes (T).
    pub bl1: f64,
    pub bl2: f64,
    /// Isotropic exchange coupling (rad/s).
    pub j0: f64,
    pub initial_state: StateVector,
    /// Propagation horizon (s).
    pub t_max: f64,
    /// Integration step (s).
    pub dt: f64,
    pub mode: Mode,
    /// Spin-spin relaxation time (s), used for the operation budget.
    pub t2: f64,
    /// Spin-lattice relaxation time (s). Metadata only.
    pub t1: Option<f64>,
    pub norm_tolerance: f64,
    pub max_samples: usize,
}

impl SimulationConfig {
    /// Static-field configuration with r = 1.14 nm, Bz = 0.1 T and
    /// Bg = ±6.08e-5 T.
    pub fn reference_static() -> Self {
        Self {
            constants: PhysicalConstants::CODATA,
            r: 1.14e-9,
            bz1: 0.1,
            bz2: 0.1,
            bg1: 6.08e-5,
            bg2: -6.08e-5,
            bl1: 0.0,
            bl2: 0.0,
            j0: 0.0,
            initial_state: default_initial_state(),
            t_max: 20e-9,
            dt: 2.5e-13,
            mode: Mode::Static,
            t2: 20e-6,
            t1: None,
            norm_tolerance: DEFAULT_NORM_TOLERANCE,
            max_samples: DEFAULT_MAX_SAMPLES,
        }
    }

    /// [`reference_static`](Self::reference_static) plus a 5e-4 T drive on both spins.
    pub fn reference_driven() -> Self {
        Self { bl1: 5e-4, bl2: 5e-4, mode: Mode::Driven, ..Self::reference_static() }
    }

    /// Checks every invariant and returns the normalized configuration, or
    /// the full list of violations.
    pub fn validate(&self) -> Result<ValidatedConfig, ConfigErrors> {
        let mut errs = Vec::new();
        self.constants.check(&mut errs);

        let fields = [
            ("Bz1", self.bz1),
            ("Bz2", self.bz2),
            ("Bg1", self.bg1),
            ("Bg2", self.bg2),
            ("Bl1", self.bl1),
            ("Bl2", self.bl2),
            ("J0", self.j0),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                errs.push(ConfigError::NonFinite(name));
            }
        }
        if !(self.r > 0.0 && self.r.is_finite()) {
            errs.push(ConfigError::NonPositiveDistance(self.r));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            errs.push(ConfigError::NonPositiveHorizon(self.t_max));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            errs.push(ConfigError::NonPositiveStep(self.dt));
        } else if self.t_max > 0.0 && self.dt > self.t_max / 100.0 {
            errs.push(ConfigError::StepTooCoarse { dt: self.dt, limit: self.t_max / 100.0 });
        }
        if !(self.t2 > 0.0 && self.t2.is_finite()) {
            errs.push(ConfigError::NonPositiveT2(self.t2));
        }
        if !(self.norm_tolerance > 0.0) {
            errs.push(ConfigError::NonFinite("norm_tolerance"));
        }
        if self.max_samples < 2 {
            errs.push(ConfigError::NoSamples);
        }
        let n2 = self.initial_state.norm_sqr();
        if !self.initial_state.is_finite() || !n2.is_finite() || n2 < RENORMALIZE_FLOOR {
            errs.push(ConfigError::NonUnitInitialState(n2));
        }

        if !errs.is_empty() {
            return Err(ConfigErrors(errs));
        }

        let mut out = self.clone();
        if (n2 - 1.0).abs() > 1e-12 {
            out.initial_state = self.initial_state.normalized();
        }
        if out.mode == Mode::Static {
            out.bl1 = 0.0;
            out.bl2 = 0.0;
        }
        Ok(ValidatedConfig(out))
    }

    /// Total z-field at each spin.
    pub fn total_fields(&self) -> (f64, f64) {
        (self.bz1 + self.bg1, self.bz2 + self.bg2)
    }
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self::reference_static()
    }
}

/// A configuration that passed [`SimulationConfig::validate`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidatedConfig(SimulationConfig);

impl ValidatedConfig {
    pub fn into_inner(self) -> SimulationConfig {
        self.0
    }
}

impl Deref for ValidatedConfig {
    type Target = SimulationConfig;

    fn deref(&self) -> &SimulationConfig {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    #[test]
    fn reference_distance_validates() {
        let v = SimulationConfig::reference_static().validate().unwrap();
        assert_eq!(v.r, 1.14e-9);
    }

    #[test]
    fn zero_distance_rejected() {
        let cfg = SimulationConfig { r: 0.0, ..Default::default() };
        let errs = cfg.validate().unwrap_err();
        assert_eq!(errs.0, vec![ConfigError::NonPositiveDistance(0.0)]);
    }

    #[test]
    fn every_violation_reported() {
        let cfg = SimulationConfig {
            r: -1.0,
            dt: 1e-9,
            t_max: 20e-9,
            initial_state: StateVector::from_real([0.0; 4]),
            ..Default::default()
        };
        let errs = cfg.validate().unwrap_err().0;
        assert_eq!(errs.len(), 3);
        assert!(matches!(errs[0], ConfigError::NonPositiveDistance(_)));
        assert!(matches!(errs[1], ConfigError::StepTooCoarse { .. }));
        assert!(matches!(errs[2], ConfigError::NonUnitInitialState(_)));
    }

    #[test]
    fn step_limit_is_inclusive() {
        let cfg = SimulationConfig { t_max: 1.0, dt: 0.01, ..Default::default() };
        assert!(cfg.validate().is_ok());
        let cfg = SimulationConfig { t_max: 1.0, dt: 0.010_001, ..Default::default() };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn initial_state_renormalized() {
        let cfg = SimulationConfig {
            initial_state: StateVector::from_real([2.0, 0.0, 0.0, 0.0]),
            ..Default::default()
        };
        let v = cfg.validate().unwrap();
        assert_eq!(v.initial_state, StateVector::from_real([1.0, 0.0, 0.0, 0.0]));
    }

    #[test]
    fn static_mode_zeroes_drive() {
        let cfg = SimulationConfig { bl1: 5e-4, bl2: 1e-4, ..Default::default() };
        let v = cfg.validate().unwrap();
        assert_eq!((v.bl1, v.bl2), (0.0, 0.0));
        let d = SimulationConfig::reference_driven().validate().unwrap();
        assert_eq!((d.bl1, d.bl2), (5e-4, 5e-4));
    }

    #[test]
    fn validate_is_idempotent() {
        let cfg = SimulationConfig {
            bl1: 1e-3,
            initial_state: StateVector::new(
                C64::new(0.3, 0.1),
                C64::new(-0.7, 0.2),
                C64::new(0.0, 1.1),
                C64::new(0.4, 0.0),
            ),
            ..Default::default()
        };
        let once = cfg.validate().unwrap();
        let twice = once.clone().into_inner().validate().unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn mode_parses() {
        assert_eq!("Driven".parse::<Mode>().unwrap(), Mode::Driven);
        assert!("rotating".parse::<Mode>().is_err());
    }
}
