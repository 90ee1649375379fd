//! End-to-end run: validate, propagate, unwrap, locate the π-gate.

use crate::analysis::{concurrence, refine_pi_gate, unwrap_phases, GateResult, PhaseSeries, StateOracle};
use crate::config::{Mode, SimulationConfig, ValidatedConfig};
use crate::error::Result;
use crate::fieldgen::{resonance_frequencies, ResonancePair};
use crate::hamiltonian::DrivenHamiltonian;
use crate::propagator::{evolve_rk4, propagate_with, SpectralPropagator, TimeGrid, Trajectory};
use crate::state::StateVector;

impl StateOracle for SpectralPropagator {
    fn state_at(&self, t0: f64, psi0: &StateVector, t: f64) -> StateVector {
        self.evolve(psi0, t - t0)
    }
}

/// RK4 re-propagation at a given maximum step.
pub struct Rk4Oracle<'a> {
    pub hamiltonian: &'a DrivenHamiltonian,
    pub max_dt: f64,
}

impl StateOracle for Rk4Oracle<'_> {
    fn state_at(&self, t0: f64, psi0: &StateVector, t: f64) -> StateVector {
        evolve_rk4(self.hamiltonian, t0, psi0, t, self.max_dt)
    }
}

/// Everything produced by one simulation.
#[derive(Clone, Debug)]
pub struct GateRun {
    pub config: ValidatedConfig,
    pub resonances: ResonancePair,
    pub trajectory: Trajectory,
    pub phases: PhaseSeries,
    /// Concurrence per stored sample.
    pub concurrence: Vec<f64>,
    pub result: GateResult,
}

/// Propagated and unwrapped, but not yet searched for a crossing.
#[derive(Clone, Debug)]
pub struct Evolution {
    pub config: ValidatedConfig,
    pub resonances: ResonancePair,
    pub hamiltonian: DrivenHamiltonian,
    pub grid: TimeGrid,
    pub trajectory: Trajectory,
    pub phases: PhaseSeries,
    pub concurrence: Vec<f64>,
}

pub fn resonances_of(cfg: &SimulationConfig) -> ResonancePair {
    resonance_frequencies(&cfg.constants, cfg.bz1, cfg.bg1, cfg.bz2, cfg.bg2)
}

/// RK4 trajectory with unwrapped phases and concurrence.
pub fn evolve(cfg: &SimulationConfig) -> Result<Evolution> {
    let config = cfg.validate()?;
    let resonances = resonances_of(&config);
    let hamiltonian = DrivenHamiltonian::new(&config, &resonances)?;
    let grid = TimeGrid::from_config(&config);
    let trajectory = propagate_with(&hamiltonian, &config.initial_state, &grid, config.norm_tolerance)?;
    let phases = unwrap_phases(&trajectory)?;
    let concurrence = trajectory.states.iter().map(concurrence).collect::<Result<Vec<_>>>()?;
    Ok(Evolution { config, resonances, hamiltonian, grid, trajectory, phases, concurrence })
}

impl Evolution {
    /// Locates the first π crossing. Static runs refine with the exact
    /// spectral propagator, driven runs with RK4 at the configured step.
    pub fn gate(self) -> Result<GateRun> {
        let crossing = match self.config.mode {
            Mode::Static => {
                let oracle = SpectralPropagator::new(&self.hamiltonian.static_part)?;
                refine_pi_gate(&self.trajectory, &self.phases, &oracle)?
            }
            Mode::Driven => {
                let oracle = Rk4Oracle { hamiltonian: &self.hamiltonian, max_dt: self.grid.step() };
                refine_pi_gate(&self.trajectory, &self.phases, &oracle)?
            }
        };
        let result = GateResult::from_crossing(&crossing, self.config.t2)?;
        Ok(GateRun {
            config: self.config,
            resonances: self.resonances,
            trajectory: self.trajectory,
            phases: self.phases,
            concurrence: self.concurrence,
            result,
        })
    }
}

/// Validates `cfg`, integrates it and extracts the π-gate.
pub fn simulate(cfg: &SimulationConfig) -> Result<GateRun> {
    evolve(cfg)?.gate()
}
