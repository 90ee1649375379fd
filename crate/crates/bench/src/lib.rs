//! Shared fixtures for the benchmarks.

use fullerene_gate::hamiltonian::DrivenHamiltonian;
use fullerene_gate::simulation::resonances_of;
use fullerene_gate::{SimulationConfig, ValidatedConfig};

/// Reference configuration in the given mode over a 2 ns horizon.
pub fn short_run(driven: bool) -> ValidatedConfig {
    let base = if driven { SimulationConfig::reference_driven() } else { SimulationConfig::reference_static() };
    SimulationConfig { t_max: 2e-9, ..base }.validate().expect("reference config is valid")
}

pub fn hamiltonian(cfg: &ValidatedConfig) -> DrivenHamiltonian {
    DrivenHamiltonian::new(cfg, &resonances_of(cfg)).expect("reference Hamiltonian")
}
