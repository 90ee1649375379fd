//! Integration of `i dψ/dt = H(t) ψ` for the four amplitudes.
//!
//! Two independent routes: an exact spectral propagator for time-independent
//! Hamiltonians, and fixed-step classical RK4 for the general (driven) case.
//! The state is never renormalized during integration; norm drift beyond the
//! configured tolerance is reported as [`GateError::NormDrift`].

use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use num_complex::Complex64 as C64;

use crate::config::SimulationConfig;
use crate::error::{GateError, Result};
use crate::fieldgen::ResonancePair;
use crate::hamiltonian::{DrivenHamiltonian, HamiltonianMatrix};
use crate::state::StateVector;

/// Phase advance per RK4 step targeted by [`recommended_step`] (rad).
pub const MAX_PHASE_PER_STEP: f64 = 0.05;

/// Relative Hermiticity tolerance accepted by the spectral propagator.
pub const HERMITIAN_TOL: f64 = 1e-12;

/// Largest step keeping `rate_scale * dt` at [`MAX_PHASE_PER_STEP`].
pub fn recommended_step(rate_scale: f64) -> f64 {
    MAX_PHASE_PER_STEP / rate_scale
}

/// Sampled solution of the Schrödinger equation.
#[derive(Clone, Debug, PartialEq)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<StateVector>,
    /// Squared norm of each stored state.
    pub norms: Vec<f64>,
}

impl Trajectory {
    fn with_capacity(n: usize) -> Self {
        Self { times: Vec::with_capacity(n), states: Vec::with_capacity(n), norms: Vec::with_capacity(n) }
    }

    fn push(&mut self, t: f64, s: StateVector) {
        self.times.push(t);
        self.norms.push(s.norm_sqr());
        self.states.push(s);
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn last_state(&self) -> Option<&StateVector> {
        self.states.last()
    }

    /// Largest `| |psi|^2 - 1 |` over the samples.
    pub fn max_norm_error(&self) -> f64 {
        self.norms.iter().map(|n| (n - 1.0).abs()).fold(0.0, f64::max)
    }

    /// Largest amplitude difference against another trajectory on the same
    /// sample times.
    pub fn max_abs_diff(&self, other: &Trajectory) -> f64 {
        self.states.iter().zip(&other.states).map(|(a, b)| a.max_abs_diff(b)).fold(0.0, f64::max)
    }
}

/// Integration steps and storage stride for one run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeGrid {
    pub t_max: f64,
    pub n_steps: usize,
    /// Store every `stride`-th step (the final step is always stored).
    pub stride: usize,
}

impl TimeGrid {
    /// Uniform grid with step at most `dt` that lands exactly on `t_max`.
    pub fn new(t_max: f64, dt: f64, max_samples: usize) -> Self {
        let ratio = t_max / dt;
        let n_steps = if (ratio - ratio.round()).abs() < 1e-9 * ratio { ratio.round() } else { ratio.ceil() };
        let n_steps = (n_steps as usize).max(1);
        let stride = n_steps.div_ceil(max_samples.max(2) - 1).max(1);
        Self { t_max, n_steps, stride }
    }

    pub fn from_config(cfg: &SimulationConfig) -> Self {
        Self::new(cfg.t_max, cfg.dt, cfg.max_samples)
    }

    pub fn step(&self) -> f64 {
        self.t_max / self.n_steps as f64
    }

    pub fn time_of(&self, k: usize) -> f64 {
        if k == self.n_steps {
            self.t_max
        } else {
            self.t_max * k as f64 / self.n_steps as f64
        }
    }

    fn is_stored(&self, k: usize) -> bool {
        k.is_multiple_of(self.stride) || k == self.n_steps
    }

    pub fn sample_times(&self) -> Vec<f64> {
        (0..=self.n_steps).filter(|&k| self.is_stored(k)).map(|k| self.time_of(k)).collect()
    }
}

/// Propagator for a 2×2 Hermitian block `[[a, b], [conj(b), d]]`:
/// `exp(-iμt) [cos(Ωt) I - i sin(Ωt)/Ω K]` with `μ = (a+d)/2` and
/// `K = [[δ, b], [conj(b), -δ]]`, `δ = (a-d)/2`, `Ω = sqrt(δ² + |b|²)`.
#[derive(Clone, Copy, Debug)]
struct Block2 {
    idx: [usize; 2],
    mean: f64,
    delta: f64,
    off: C64,
    omega: f64,
}

impl Block2 {
    fn new(h: &Matrix4<C64>, idx: [usize; 2]) -> Self {
        let a = h[(idx[0], idx[0])].re;
        let d = h[(idx[1], idx[1])].re;
        let off = h[(idx[0], idx[1])];
        let delta = 0.5 * (a - d);
        Self { idx, mean: 0.5 * (a + d), delta, off, omega: delta.hypot(off.norm()) }
    }

    /// Eigenvalues `μ ± Ω`, ascending.
    fn eigenvalues(&self) -> [f64; 2] {
        [self.mean - self.omega, self.mean + self.omega]
    }

    fn apply(&self, psi: &StateVector, t: f64, out: &mut StateVector) {
        let (x, y) = (psi[self.idx[0]], psi[self.idx[1]]);
        let (s, c) = (self.omega * t).sin_cos();
        let sinc = if self.omega > 0.0 { s / self.omega } else { t };
        let phase = C64::from_polar(1.0, -self.mean * t);
        let mi = C64::new(0.0, -sinc);
        let nx = c * x + mi * (self.delta * x + self.off * y);
        let ny = c * y + mi * (self.off.conj() * x - self.delta * y);
        out[self.idx[0]] = phase * nx;
        out[self.idx[1]] = phase * ny;
    }
}

#[derive(Clone, Debug)]
enum Spectral {
    Blocks([Block2; 2]),
    Dense { vectors: Matrix4<C64>, values: [f64; 4] },
}

/// Exact propagator `exp(-iHt)` for a time-independent Hermitian `H`.
///
/// Block-diagonal Hamiltonians (the static case) are diagonalized in closed
/// form per 2×2 block; anything else goes through a dense Hermitian
/// eigendecomposition.
#[derive(Clone, Debug)]
pub struct SpectralPropagator {
    inner: Spectral,
}

impl SpectralPropagator {
    pub fn new(h: &HamiltonianMatrix) -> Result<Self> {
        let err = h.hermiticity_error();
        if !(err <= HERMITIAN_TOL) {
            return Err(GateError::NonHermitianInput(err));
        }
        let inner = if h.is_block_diagonal() {
            Spectral::Blocks([Block2::new(&h.0, [0, 3]), Block2::new(&h.0, [1, 2])])
        } else {
            Self::dense(h)
        };
        Ok(Self { inner })
    }

    /// Forces the dense eigendecomposition route.
    pub fn new_dense(h: &HamiltonianMatrix) -> Result<Self> {
        let err = h.hermiticity_error();
        if !(err <= HERMITIAN_TOL) {
            return Err(GateError::NonHermitianInput(err));
        }
        Ok(Self { inner: Self::dense(h) })
    }

    fn dense(h: &HamiltonianMatrix) -> Spectral {
        let sym = (h.0 + h.0.adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(sym);
        let v = eig.eigenvalues;
        Spectral::Dense { vectors: eig.eigenvectors, values: [v[0], v[1], v[2], v[3]] }
    }

    /// Eigenvalues in ascending order (rad/s).
    pub fn eigenvalues(&self) -> [f64; 4] {
        let mut v = match &self.inner {
            Spectral::Blocks([a, b]) => {
                let (ea, eb) = (a.eigenvalues(), b.eigenvalues());
                [ea[0], ea[1], eb[0], eb[1]]
            }
            Spectral::Dense { values, .. } => *values,
        };
        v.sort_by(f64::total_cmp);
        v
    }

    /// `exp(-iHt) psi`.
    pub fn evolve(&self, psi: &StateVector, t: f64) -> StateVector {
        match &self.inner {
            Spectral::Blocks(blocks) => {
                let mut out = *psi;
                for b in blocks {
                    b.apply(psi, t, &mut out);
                }
                out
            }
            Spectral::Dense { vectors, values } => {
                let coeffs = vectors.adjoint() * psi.to_vector();
                let rotated = Vector4::from_fn(|i, _| coeffs[i] * C64::from_polar(1.0, -values[i] * t));
                StateVector::from_vector(&(vectors * rotated))
            }
        }
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(GateError::BadTimes("no sample times".into()));
    }
    if !times.iter().all(|t| t.is_finite() && *t >= 0.0) {
        return Err(GateError::BadTimes("sample times must be finite and non-negative".into()));
    }
    if times.windows(2).any(|w| w[1] <= w[0]) {
        return Err(GateError::BadTimes("sample times must be strictly increasing".into()));
    }
    Ok(())
}

/// Exact evolution `psi(t) = V exp(-iΛt) V† psi0` at each requested time.
pub fn propagate_static(h: &HamiltonianMatrix, psi0: &StateVector, times: &[f64]) -> Result<Trajectory> {
    check_times(times)?;
    let prop = SpectralPropagator::new(h)?;
    let mut traj = Trajectory::with_capacity(times.len());
    for &t in times {
        traj.push(t, prop.evolve(psi0, t));
    }
    Ok(traj)
}

#[inline]
fn deriv(h: &Matrix4<C64>, c: &Vector4<C64>) -> Vector4<C64> {
    (h * c) * C64::new(0.0, -1.0)
}

/// One classical RK4 step of `dc/dt = -i H(t) c`.
pub fn rk4_step(h: &DrivenHamiltonian, t: f64, c: &Vector4<C64>, dt: f64) -> Vector4<C64> {
    let half = 0.5 * dt;
    let (h0, hm, h1) = if h.is_static() {
        let s = h.static_part.0;
        (s, s, s)
    } else {
        (h.at(t).0, h.at(t + half).0, h.at(t + dt).0)
    };
    let k1 = deriv(&h0, c);
    let k2 = deriv(&hm, &(c + k1 * C64::new(half, 0.0)));
    let k3 = deriv(&hm, &(c + k2 * C64::new(half, 0.0)));
    let k4 = deriv(&h1, &(c + k3 * C64::new(dt, 0.0)));
    c + (k1 + (k2 + k3) * C64::new(2.0, 0.0) + k4) * C64::new(dt / 6.0, 0.0)
}

/// Integrates from `(t0, psi0)` to `t1` with equal steps no longer than
/// `max_dt`.
pub fn evolve_rk4(h: &DrivenHamiltonian, t0: f64, psi0: &StateVector, t1: f64, max_dt: f64) -> StateVector {
    let span = t1 - t0;
    if span <= 0.0 {
        return *psi0;
    }
    let n = (span / max_dt).ceil().max(1.0) as usize;
    let dt = span / n as f64;
    let mut c = psi0.to_vector();
    for k in 0..n {
        c = rk4_step(h, t0 + dt * k as f64, &c, dt);
    }
    StateVector::from_vector(&c)
}

/// Fixed-step RK4 over `grid`, static or driven according to `cfg`.
pub fn propagate_numeric(cfg: &SimulationConfig, resonances: &ResonancePair, grid: &TimeGrid) -> Result<Trajectory> {
    let h = DrivenHamiltonian::new(cfg, resonances)?;
    propagate_with(&h, &cfg.initial_state, grid, cfg.norm_tolerance)
}

/// RK4 over `grid` for an already-assembled Hamiltonian.
pub fn propagate_with(h: &DrivenHamiltonian, psi0: &StateVector, grid: &TimeGrid, norm_tolerance: f64) -> Result<Trajectory> {
    let dt = grid.step();
    let mut traj = Trajectory::with_capacity(grid.n_steps / grid.stride + 2);
    let mut c = psi0.to_vector();
    traj.push(0.0, *psi0);
    for k in 0..grid.n_steps {
        c = rk4_step(h, grid.time_of(k), &c, dt);
        if grid.is_stored(k + 1) {
            let t = grid.time_of(k + 1);
            let s = StateVector::from_vector(&c);
            let norm = s.norm_sqr();
            if !((norm - 1.0).abs() <= norm_tolerance) {
                return Err(GateError::NormDrift { t, norm, tolerance: norm_tolerance });
            }
            traj.push(t, s);
        }
    }
    Ok(traj)
}
