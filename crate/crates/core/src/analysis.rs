//! Gate-level quantities extracted from a trajectory: the composite phase
//! `ϑ = φ00 - φ01 - φ10 + φ11`, the π-gate time, local correction phases,
//! concurrence, entanglement of formation and the decoherence budget.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::error::{GateError, Result};
use crate::propagator::Trajectory;
use crate::state::StateVector;

/// Amplitudes below this have no meaningful argument.
pub const AMP_FLOOR: f64 = 1e-12;

/// Default accuracy of the refined gate time (s).
pub const TIME_TOLERANCE: f64 = 1e-12;

/// Default accuracy of `ϑ(τ)` against its target (rad).
pub const PHASE_TOLERANCE: f64 = 1e-6;

/// Signs of `Arg(c_i)` in the composite phase.
const WEIGHTS: [f64; 4] = [1.0, -1.0, -1.0, 1.0];

/// Composite phase of four basis phases.
pub fn composite_phase(args: &[f64; 4]) -> f64 {
    args.iter().zip(WEIGHTS).map(|(a, w)| a * w).sum()
}

/// Unwrapped phases along a trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct PhaseSeries {
    pub times: Vec<f64>,
    /// Composite phase, shifted so that `theta[0] == 0`.
    pub theta: Vec<f64>,
    /// Continuous `Arg(c_i)` per sample (not shifted).
    pub per_basis_args: Vec<[f64; 4]>,
    /// Raw composite phase at the first sample, removed from `theta`.
    pub theta_offset: f64,
}

impl PhaseSeries {
    /// `Arg(c_i(t_k)) - Arg(c_i(0))`, i.e. `[φ00, φ01, φ10, φ11]` acquired
    /// up to sample `k`.
    pub fn acquired(&self, k: usize) -> [f64; 4] {
        let a0 = self.per_basis_args[0];
        let ak = self.per_basis_args[k];
        [ak[0] - a0[0], ak[1] - a0[1], ak[2] - a0[2], ak[3] - a0[3]]
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }
}

fn raw_args(s: &StateVector, t: f64) -> Result<[f64; 4]> {
    let mut out = [0.0; 4];
    for (i, c) in s.amps.iter().enumerate() {
        let amplitude = c.norm();
        if !(amplitude >= AMP_FLOOR) {
            return Err(GateError::UndefinedPhase { t, index: i + 1, amplitude });
        }
        out[i] = c.arg();
    }
    Ok(out)
}

/// Nearest-branch continuation of `Arg(c_i)` from `prev`.
pub fn continue_args(prev: &[f64; 4], s: &StateVector, t: f64) -> Result<[f64; 4]> {
    let raw = raw_args(s, t)?;
    let mut out = [0.0; 4];
    for i in 0..4 {
        let d = raw[i] - prev[i];
        out[i] = raw[i] - TAU * (d / TAU).round();
    }
    Ok(out)
}

/// Continuous per-coefficient arguments and the composite phase.
///
/// Each `Arg(c_i)` is continued onto the branch nearest the previous sample,
/// so sampling must be dense enough that no coefficient phase advances by
/// `π` or more between samples.
pub fn unwrap_phases(traj: &Trajectory) -> Result<PhaseSeries> {
    let mut per_basis_args = Vec::with_capacity(traj.len());
    let mut prev: Option<[f64; 4]> = None;
    for (&t, s) in traj.times.iter().zip(&traj.states) {
        let args = match prev {
            None => raw_args(s, t)?,
            Some(p) => continue_args(&p, s, t)?,
        };
        per_basis_args.push(args);
        prev = Some(args);
    }
    let Some(first) = per_basis_args.first() else {
        return Err(GateError::BadTimes("empty trajectory".into()));
    };
    let theta_offset = composite_phase(first);
    let theta = per_basis_args.iter().map(|a| composite_phase(a) - theta_offset).collect();
    Ok(PhaseSeries { times: traj.times.clone(), theta, per_basis_args, theta_offset })
}

/// Index `k` such that the first crossing of `target` lies in
/// `[times[k], times[k+1]]`.
pub fn bracket_crossing(theta: &[f64], target: f64) -> Option<usize> {
    let s0 = (*theta.first()? - target).signum();
    theta
        .windows(2)
        .position(|w| {
            let d = w[1] - target;
            d == 0.0 || d.signum() != s0
        })
}

/// First time the unwrapped phase crosses `target`, interpolated linearly
/// between the bracketing samples.
pub fn find_gate_time(phases: &PhaseSeries, target: f64) -> Result<f64> {
    let no_crossing = || GateError::NoCrossing {
        target,
        t_max: phases.times.last().copied().unwrap_or(0.0),
        theta_final: phases.theta.last().copied().unwrap_or(0.0),
    };
    if phases.theta.first() == Some(&target) {
        return Ok(phases.times[0]);
    }
    let k = bracket_crossing(&phases.theta, target).ok_or_else(no_crossing)?;
    let (t0, t1) = (phases.times[k], phases.times[k + 1]);
    let (y0, y1) = (phases.theta[k], phases.theta[k + 1]);
    if y1 == target {
        return Ok(t1);
    }
    Ok(t0 + (target - y0) / (y1 - y0) * (t1 - t0))
}

/// Anything that can carry a state forward from `(t0, psi0)` to `t`.
pub trait StateOracle {
    fn state_at(&self, t0: f64, psi0: &StateVector, t: f64) -> StateVector;
}

/// A refined crossing of the composite phase.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Crossing {
    pub tau: f64,
    pub theta: f64,
    pub target: f64,
    /// `Arg(c_i(τ)) - Arg(c_i(0))`.
    pub acquired: [f64; 4],
    pub state: StateVector,
}

/// First crossing of `target`, refined by bisection on `ϑ(t) - target`
/// inside the bracketing sample interval. Intermediate states come from
/// `oracle`, started at the left bracket sample.
///
/// Bisection stops once the bracket is narrower than `time_tol` and the
/// phase is within `phase_tol` of the target.
pub fn refine_gate_time(
    traj: &Trajectory,
    phases: &PhaseSeries,
    target: f64,
    oracle: &dyn StateOracle,
    time_tol: f64,
    phase_tol: f64,
) -> Result<Crossing> {
    let k = bracket_crossing(&phases.theta, target).ok_or_else(|| GateError::NoCrossing {
        target,
        t_max: phases.times.last().copied().unwrap_or(0.0),
        theta_final: phases.theta.last().copied().unwrap_or(0.0),
    })?;
    let (t_left, psi_left, args_left) = (phases.times[k], traj.states[k], phases.per_basis_args[k]);
    let a0 = phases.per_basis_args[0];
    let eval = |t: f64| -> Result<(f64, [f64; 4], StateVector)> {
        let psi = oracle.state_at(t_left, &psi_left, t);
        let args = continue_args(&args_left, &psi, t)?;
        Ok((composite_phase(&args) - phases.theta_offset, args, psi))
    };

    let side = (phases.theta[k] - target).signum();
    let (mut lo, mut hi) = (t_left, phases.times[k + 1]);
    let mut best = eval(hi)?;
    let mut best_t = hi;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let cur = eval(mid)?;
        let d = cur.0 - target;
        if d == 0.0 || d.signum() != side {
            hi = mid;
        } else {
            lo = mid;
        }
        best = cur;
        best_t = mid;
        if hi - lo <= time_tol && d.abs() <= phase_tol {
            break;
        }
    }
    let (theta, args, state) = best;
    let acquired = [args[0] - a0[0], args[1] - a0[1], args[2] - a0[2], args[3] - a0[3]];
    Ok(Crossing { tau: best_t, theta, target, acquired, state })
}

/// Earliest crossing of `-π` or `+π` (a π-gate either way). Ties go to `-π`.
pub fn refine_pi_gate(traj: &Trajectory, phases: &PhaseSeries, oracle: &dyn StateOracle) -> Result<Crossing> {
    let minus = bracket_crossing(&phases.theta, -PI);
    let plus = bracket_crossing(&phases.theta, PI);
    let target = match (minus, plus) {
        (Some(m), Some(p)) if p < m => PI,
        (None, Some(_)) => PI,
        _ => -PI,
    };
    refine_gate_time(traj, phases, target, oracle, TIME_TOLERANCE, PHASE_TOLERANCE)
}

/// Single-qubit phases `s1⁰, s1¹, s2⁰, s2¹` of the local operator that
/// leaves only the composite phase on `|11>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CorrectionPhases {
    pub s1_0: f64,
    pub s1_1: f64,
    pub s2_0: f64,
    pub s2_1: f64,
}

impl CorrectionPhases {
    /// Residual phases on `|00>, |01>, |10>, |11>` after correcting
    /// acquired phases `phi = [φ00, φ01, φ10, φ11]`.
    pub fn residual(&self, phi: &[f64; 4]) -> [f64; 4] {
        [
            phi[0] + self.s1_0 + self.s2_0,
            phi[1] + self.s1_0 + self.s2_1,
            phi[2] + self.s1_1 + self.s2_0,
            phi[3] + self.s1_1 + self.s2_1,
        ]
    }
}

pub fn correction_phases(phi00: f64, phi01: f64, phi10: f64) -> CorrectionPhases {
    CorrectionPhases {
        s1_0: -phi00 / 2.0,
        s1_1: -phi10 + phi00 / 2.0,
        s2_0: -phi00 / 2.0,
        s2_1: -phi01 + phi00 / 2.0,
    }
}

/// Spin-flipped state `(σy ⊗ σy) ψ*`.
pub fn spin_flip(psi: &StateVector) -> StateVector {
    let c = psi.amps.map(|z| z.conj());
    StateVector::new(-c[3], c[2], c[1], -c[0])
}

/// Pure-state concurrence `2|c2 c3 - c1 c4| / <ψ|ψ>`, clamped to `[0, 1]`.
pub fn concurrence(psi: &StateVector) -> Result<f64> {
    let n = psi.norm_sqr();
    if !(n > 0.0) {
        return Err(GateError::ZeroState);
    }
    let c = &psi.amps;
    Ok((2.0 * (c[1] * c[2] - c[0] * c[3]).norm() / n).min(1.0))
}

fn binary_entropy(x: f64) -> f64 {
    let term = |p: f64| if p <= 0.0 { 0.0 } else { -p * p.log2() };
    term(x) + term(1.0 - x)
}

/// `h((1 + sqrt(1 - C²)) / 2)` with `h` the binary entropy.
pub fn entanglement_of_formation(c: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&c) {
        return Err(GateError::OutOfRange(c));
    }
    Ok(binary_entropy(0.5 * (1.0 + (1.0 - c * c).sqrt())))
}

/// Whole gate operations that fit in `t2`.
pub fn ops_budget(tau: f64, t2: f64) -> u64 {
    assert!(tau > 0.0, "gate time must be positive");
    (t2 / tau).floor() as u64
}

/// Summary of one π-gate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GateResult {
    pub tau: f64,
    pub target: f64,
    pub theta_at_tau: f64,
    pub concurrence_at_tau: f64,
    pub eof_at_tau: f64,
    pub ops_budget: u64,
    /// `[φ00, φ01, φ10, φ11]` acquired by `τ`.
    pub acquired_phases: [f64; 4],
    pub correction_phases: CorrectionPhases,
}

impl GateResult {
    pub fn from_crossing(c: &Crossing, t2: f64) -> Result<Self> {
        let conc = concurrence(&c.state)?;
        let [p00, p01, p10, _] = c.acquired;
        Ok(Self {
            tau: c.tau,
            target: c.target,
            theta_at_tau: c.theta,
            concurrence_at_tau: conc,
            eof_at_tau: entanglement_of_formation(conc)?,
            ops_budget: ops_budget(c.tau, t2),
            acquired_phases: c.acquired,
            correction_phases: correction_phases(p00, p01, p10),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64 as C64;

    fn series(times: Vec<f64>, theta: Vec<f64>) -> PhaseSeries {
        let per_basis_args = theta.iter().map(|&t| [t, 0.0, 0.0, 0.0]).collect();
        PhaseSeries { times, theta, per_basis_args, theta_offset: 0.0 }
    }

    #[test]
    fn linear_crossing() {
        let tau0 = 9.1e-9;
        let times: Vec<f64> = (0..=1000).map(|k| k as f64 * 2e-11).collect();
        let theta = times.iter().map(|t| -PI / tau0 * t).collect();
        let tau = find_gate_time(&series(times, theta), -PI).unwrap();
        assert!((tau - tau0).abs() < 1e-20);
    }

    #[test]
    fn missing_crossing() {
        let times: Vec<f64> = (0..10).map(|k| k as f64).collect();
        let theta = times.iter().map(|t| -0.1 * t).collect();
        let err = find_gate_time(&series(times, theta), -PI).unwrap_err();
        assert!(matches!(err, GateError::NoCrossing { theta_final, .. } if (theta_final + 0.9).abs() < 1e-12));
    }

    #[test]
    fn unwrap_tracks_winding() {
        // c1 rotates by 0.9 rad per sample: raw Arg wraps, unwrapped does not
        let states: Vec<StateVector> = (0..40)
            .map(|k| {
                let a = C64::from_polar(0.5, -0.9 * k as f64);
                StateVector::new(a, C64::new(0.5, 0.0), C64::new(0.5, 0.0), C64::new(0.5, 0.0))
            })
            .collect();
        let traj = Trajectory {
            times: (0..40).map(|k| k as f64).collect(),
            norms: vec![1.0; 40],
            states,
        };
        let p = unwrap_phases(&traj).unwrap();
        for (k, th) in p.theta.iter().enumerate() {
            assert!((th + 0.9 * k as f64).abs() < 1e-12);
        }
        assert!(p.theta.windows(2).all(|w| (w[1] - w[0]).abs() < PI));
    }

    #[test]
    fn undefined_phase_at_zero_amplitude() {
        let traj = Trajectory { times: vec![0.0], norms: vec![1.0], states: vec![StateVector::basis(0)] };
        assert!(matches!(unwrap_phases(&traj), Err(GateError::UndefinedPhase { index: 2, .. })));
    }

    #[test]
    fn correction_phase_cases() {
        let z = correction_phases(0.0, 0.0, 0.0);
        assert_eq!((z.s1_0, z.s1_1, z.s2_0, z.s2_1), (0.0, 0.0, 0.0, 0.0));
        let (a, b, c) = (0.7, -1.3, 2.9);
        let s = correction_phases(2.0 * a, b, c);
        assert_eq!((s.s1_0, s.s1_1, s.s2_0, s.s2_1), (-a, -c + a, -a, -b + a));
    }

    #[test]
    fn corrections_leave_only_composite_phase() {
        let phi = [0.31, -2.2, 1.7, 4.4];
        let s = correction_phases(phi[0], phi[1], phi[2]);
        let r = s.residual(&phi);
        assert!(r[0].abs() < 1e-15 && r[1].abs() < 1e-15 && r[2].abs() < 1e-15);
        assert!((r[3] - (phi[3] - phi[2] - phi[1] + phi[0])).abs() < 1e-15);
    }

    #[test]
    fn concurrence_cases() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let epr = StateVector::from_real([s, 0.0, 0.0, s]);
        assert!((concurrence(&epr).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(concurrence(&StateVector::basis(0)).unwrap(), 0.0);
        assert_eq!(concurrence(&StateVector::from_real([0.5; 4])).unwrap(), 0.0);
        assert!(matches!(concurrence(&StateVector::from_real([0.0; 4])), Err(GateError::ZeroState)));
    }

    #[test]
    fn concurrence_matches_spin_flip_overlap() {
        let psi = StateVector::new(
            C64::new(0.2, 0.1),
            C64::new(-0.5, 0.3),
            C64::new(0.1, -0.6),
            C64::new(0.4, 0.25),
        );
        let overlap = psi.inner(&spin_flip(&psi)).norm() / psi.norm_sqr();
        assert!((concurrence(&psi).unwrap() - overlap).abs() < 1e-15);
        // EPR pair is invariant under the flip
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let epr = StateVector::from_real([s, 0.0, 0.0, s]);
        assert!(spin_flip(&epr).scale(C64::new(-1.0, 0.0)).max_abs_diff(&epr) < 1e-16);
    }

    #[test]
    fn eof_cases() {
        assert_eq!(entanglement_of_formation(0.0).unwrap(), 0.0);
        assert!((entanglement_of_formation(1.0).unwrap() - 1.0).abs() < 1e-15);
        // h(0.9) evaluated independently
        let h09 = -0.9 * 0.9f64.ln() / 2f64.ln() - 0.1 * 0.1f64.ln() / 2f64.ln();
        let e = entanglement_of_formation(0.6).unwrap();
        assert!((e - h09).abs() < 1e-14);
        assert!((e - 0.4690).abs() < 5e-5);
        assert!(matches!(entanglement_of_formation(1.01), Err(GateError::OutOfRange(_))));
        assert!(matches!(entanglement_of_formation(-0.1), Err(GateError::OutOfRange(_))));
    }

    #[test]
    fn eof_monotone() {
        let vals: Vec<f64> = (0..=1000).map(|k| entanglement_of_formation(k as f64 / 1000.0).unwrap()).collect();
        assert!(vals.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn budget_values() {
        assert_eq!(ops_budget(9.1e-9, 20e-6), 2197);
        assert_eq!(ops_budget(9.8e-9, 20e-6), 2040);
        assert_eq!(ops_budget(20e-6, 20e-6), 1);
    }
}
