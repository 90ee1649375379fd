//! Addressing field from a pair of parallel current-carrying wires and the
//! per-spin Zeeman resonance frequencies it produces.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::config::PhysicalConstants;
use crate::error::{GateError, Result};
use crate::keyfile::{KeyFile, ParseError};

/// Positions closer than this to a wire centre line are singular.
pub const SINGULAR_GUARD: f64 = 1e-12;

/// Current range (A) over which the wires are considered practical.
pub const FEASIBLE_CURRENT: (f64, f64) = (0.1, 0.6);

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WirePair {
    /// Current through each wire (A).
    pub current: f64,
    /// Gap between the wires (m).
    pub separation: f64,
    /// Wire radius (m).
    pub radius: f64,
}

impl WirePair {
    pub fn new(current: f64, separation: f64, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(GateError::BadWires(format!("radius must be positive, got {radius}")));
        }
        if !(separation > 0.0 && separation.is_finite()) {
            return Err(GateError::BadWires(format!("separation must be positive, got {separation}")));
        }
        if current == 0.0 || !current.is_finite() {
            return Err(GateError::BadWires(format!("current must be finite and nonzero, got {current}")));
        }
        Ok(Self { current, separation, radius })
    }

    /// I = 0.6 A, d = 1 µm, ρ = 1 µm.
    pub fn reference() -> Self {
        Self { current: 0.6, separation: 1e-6, radius: 1e-6 }
    }

    /// Distance from the origin to each singular point, `ρ + d/2`.
    pub fn half_span(&self) -> f64 {
        self.radius + self.separation / 2.0
    }

    /// Whether |I| lies in the practical window. Outside it the field is
    /// still computed; callers may warn.
    pub fn current_is_feasible(&self) -> bool {
        let i = self.current.abs();
        (FEASIBLE_CURRENT.0..=FEASIBLE_CURRENT.1).contains(&i)
    }

    /// Reads `I_A`, `d_m` and `rho_m` from `kf`.
    pub fn from_keyfile(kf: &mut KeyFile) -> std::result::Result<Result<Self>, ParseError> {
        let i = kf.require_f64("I_A")?;
        let d = kf.require_f64("d_m")?;
        let rho = kf.require_f64("rho_m")?;
        Ok(Self::new(i, d, rho))
    }
}

/// Field of the wire pair at position `x` (T). Odd in `x`, zero at the
/// midpoint.
pub fn gradient_field(wires: &WirePair, x: f64) -> Result<f64> {
    let a = wires.half_span();
    for wire in [-a, a] {
        if (x - wire).abs() < SINGULAR_GUARD {
            return Err(GateError::SingularPosition { x, wire });
        }
    }
    let mu0 = PhysicalConstants::CODATA.mu0;
    Ok(mu0 / (2.0 * PI) * wires.current * (1.0 / (x + a) + 1.0 / (x - a)))
}

/// Samples [`gradient_field`] on `points` evenly spaced positions from
/// `from` to `to` inclusive.
pub fn field_profile(wires: &WirePair, from: f64, to: f64, points: usize) -> Result<Vec<(f64, f64)>> {
    if points < 2 || !(from.is_finite() && to.is_finite()) || from >= to {
        return Err(GateError::BadTimes(format!(
            "profile grid needs from < to and at least 2 points (got {from}..{to}, {points})"
        )));
    }
    let last = (points - 1) as f64;
    (0..points)
        .map(|k| {
            // mirror-exact: a grid symmetric about 0 yields exactly negated x
            let x = match k {
                0 => from,
                k if k == points - 1 => to,
                k => (from * (last - k as f64) + to * k as f64) / last,
            };
            gradient_field(wires, x).map(|b| (x, b))
        })
        .collect()
}

/// Per-qubit Zeeman resonance angular frequencies (rad/s).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResonancePair {
    pub omega1: f64,
    pub omega2: f64,
}

/// `ω_i = γ μ_B (B_zi + B_gi) / ħ`.
pub fn resonance_frequencies(constants: &PhysicalConstants, bz1: f64, bg1: f64, bz2: f64, bg2: f64) -> ResonancePair {
    let k = constants.gamma * constants.mu_b / constants.hbar;
    ResonancePair { omega1: k * (bz1 + bg1), omega2: k * (bz2 + bg2) }
}
