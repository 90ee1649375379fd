//! Two-spin Hamiltonian in angular-frequency units (rad/s), basis
//! `|00>, |01>, |10>, |11>`.
//!
//! The dipole axis is fixed along x, so the dipolar term reduces to
//! `g (σz⊗σz + σy⊗σy - 2 σx⊗σx)`. The Zeeman term is
//! `-(γ/2) μ_B (B_1 σz⊗I + B_2 I⊗σz) / ħ` and the optional drive adds
//! `-(γ/2) μ_B B_li cos(ω_i t) (σx + σy) / ħ` on spin `i`.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Matrix4};
use num_complex::Complex64 as C64;

use crate::config::{PhysicalConstants, SimulationConfig};
use crate::error::{GateError, Result};
use crate::fieldgen::ResonancePair;

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);
const I: C64 = C64::new(0.0, 1.0);

/// Index pairs that couple the {|00>,|11>} block to the {|01>,|10>} block.
pub const CROSS_BLOCK: [(usize, usize); 8] = [(0, 1), (0, 2), (3, 1), (3, 2), (1, 0), (2, 0), (1, 3), (2, 3)];

pub fn sigma_x() -> Matrix2<C64> {
    Matrix2::new(ZERO, ONE, ONE, ZERO)
}

pub fn sigma_y() -> Matrix2<C64> {
    Matrix2::new(ZERO, -I, I, ZERO)
}

pub fn sigma_z() -> Matrix2<C64> {
    Matrix2::new(ONE, ZERO, ZERO, -ONE)
}

pub fn kron(a: &Matrix2<C64>, b: &Matrix2<C64>) -> Matrix4<C64> {
    Matrix4::from_fn(|i, j| a[(i / 2, j / 2)] * b[(i % 2, j % 2)])
}

/// Hermitian 4×4 Hamiltonian, entries in rad/s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HamiltonianMatrix(pub Matrix4<C64>);

impl HamiltonianMatrix {
    pub fn zeros() -> Self {
        Self(Matrix4::zeros())
    }

    pub fn from_real(rows: [[f64; 4]; 4]) -> Self {
        Self(Matrix4::from_fn(|i, j| C64::new(rows[i][j], 0.0)))
    }

    pub fn entry(&self, i: usize, j: usize) -> C64 {
        self.0[(i, j)]
    }

    /// Largest `|H_ij - conj(H_ji)|` relative to the largest entry.
    pub fn hermiticity_error(&self) -> f64 {
        let scale = self.scale().max(f64::MIN_POSITIVE);
        let mut worst: f64 = 0.0;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        worst / scale
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.hermiticity_error() <= rel_tol
    }

    /// True when no entry couples the two 2×2 blocks.
    pub fn is_block_diagonal(&self) -> bool {
        CROSS_BLOCK.iter().all(|&(i, j)| self.0[(i, j)] == ZERO)
    }

    /// Largest absolute entry.
    pub fn scale(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }
}

impl std::ops::Add for HamiltonianMatrix {
    type Output = HamiltonianMatrix;

    fn add(self, rhs: Self) -> Self {
        Self(self.0 + rhs.0)
    }
}

/// `g = γ² μ0 μ_B² / (8π r³ ħ)`, which is `μ0 μ_B² / (2π r³ ħ)` for γ = 2.
pub fn dipole_coupling(constants: &PhysicalConstants, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(GateError::NonPositiveDistance(r));
    }
    let c = constants;
    Ok(c.gamma * c.gamma * c.mu0 * c.mu_b * c.mu_b / (8.0 * PI * r.powi(3) * c.hbar))
}

/// Coupling and Zeeman combinations entering the static matrix (rad/s).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StaticTerms {
    pub g: f64,
    pub m1: f64,
    pub m2: f64,
}

impl StaticTerms {
    pub fn from_config(cfg: &SimulationConfig) -> Result<Self> {
        let c = &cfg.constants;
        let g = dipole_coupling(c, cfg.r)?;
        let (b1, b2) = cfg.total_fields();
        let k = 0.5 * c.gamma * c.mu_b / c.hbar;
        Ok(Self { g, m1: -k * (b1 + b2), m2: -k * (b1 - b2) })
    }

    /// The block matrix
    /// ```text
    /// [ g+m1   0     0    -3g  ]
    /// [  0   -g+m2  -g     0   ]
    /// [  0    -g   -g-m2   0   ]
    /// [ -3g    0     0    g-m1 ]
    /// ```
    pub fn matrix(&self) -> HamiltonianMatrix {
        let StaticTerms { g, m1, m2 } = *self;
        HamiltonianMatrix::from_real([
            [g + m1, 0.0, 0.0, -3.0 * g],
            [0.0, -g + m2, -g, 0.0],
            [0.0, -g, -g - m2, 0.0],
            [-3.0 * g, 0.0, 0.0, g - m1],
        ])
    }
}

/// `J0 (σx⊗σx + σy⊗σy + σz⊗σz)` written out entrywise.
fn exchange(j0: f64) -> HamiltonianMatrix {
    HamiltonianMatrix::from_real([
        [j0, 0.0, 0.0, 0.0],
        [0.0, -j0, 2.0 * j0, 0.0],
        [0.0, 2.0 * j0, -j0, 0.0],
        [0.0, 0.0, 0.0, j0],
    ])
}

/// Static Hamiltonian (dipolar + Zeeman + exchange) from its block form.
pub fn build_static(cfg: &SimulationConfig) -> Result<HamiltonianMatrix> {
    let h = StaticTerms::from_config(cfg)?.matrix();
    Ok(if cfg.j0 != 0.0 { h + exchange(cfg.j0) } else { h })
}

/// Same operator as [`build_static`], assembled from Pauli Kronecker
/// products instead of the hand-written block entries.
pub fn build_static_kron(cfg: &SimulationConfig) -> Result<HamiltonianMatrix> {
    let c = &cfg.constants;
    let g = dipole_coupling(c, cfg.r)?;
    let (sx, sy, sz, id) = (sigma_x(), sigma_y(), sigma_z(), Matrix2::<C64>::identity());
    let xx = kron(&sx, &sx);
    let yy = kron(&sy, &sy);
    let zz = kron(&sz, &sz);
    let (b1, b2) = cfg.total_fields();
    let k = 0.5 * c.gamma * c.mu_b / c.hbar;
    let dip = (zz + yy - xx * C64::new(2.0, 0.0)) * C64::new(g, 0.0);
    let zeeman = (kron(&sz, &id) * C64::new(b1, 0.0) + kron(&id, &sz) * C64::new(b2, 0.0)) * C64::new(-k, 0.0);
    let exch = (xx + yy + zz) * C64::new(cfg.j0, 0.0);
    Ok(HamiltonianMatrix(dip + zeeman + exch))
}

/// Time-dependent Hamiltonian `H(t) = H_static + drive(t)`.
#[derive(Clone, Debug)]
pub struct DrivenHamiltonian {
    pub static_part: HamiltonianMatrix,
    /// `(σx + σy) ⊗ I` and `I ⊗ (σx + σy)`.
    ops: [Matrix4<C64>; 2],
    /// Peak drive amplitude per spin (rad/s), signed.
    amplitudes: [f64; 2],
    omegas: [f64; 2],
}

impl DrivenHamiltonian {
    pub fn new(cfg: &SimulationConfig, resonances: &ResonancePair) -> Result<Self> {
        let c = &cfg.constants;
        let k = 0.5 * c.gamma * c.mu_b / c.hbar;
        let id = Matrix2::<C64>::identity();
        let sxy = sigma_x() + sigma_y();
        Ok(Self {
            static_part: build_static(cfg)?,
            ops: [kron(&sxy, &id), kron(&id, &sxy)],
            amplitudes: [-k * cfg.bl1, -k * cfg.bl2],
            omegas: [resonances.omega1, resonances.omega2],
        })
    }

    /// Drive term alone.
    pub fn drive(&self, t: f64) -> HamiltonianMatrix {
        let a1 = self.amplitudes[0] * (self.omegas[0] * t).cos();
        let a2 = self.amplitudes[1] * (self.omegas[1] * t).cos();
        HamiltonianMatrix(self.ops[0] * C64::new(a1, 0.0) + self.ops[1] * C64::new(a2, 0.0))
    }

    pub fn at(&self, t: f64) -> HamiltonianMatrix {
        if self.is_static() {
            return self.static_part;
        }
        self.static_part + self.drive(t)
    }

    pub fn is_static(&self) -> bool {
        self.amplitudes == [0.0, 0.0]
    }

    /// Upper bound on the fastest rate in the problem: the largest static
    /// entry plus the drive peaks, or the largest resonance frequency if
    /// that is bigger.
    pub fn rate_scale(&self) -> f64 {
        let drive = 2.0 * (self.amplitudes[0].abs() + self.amplitudes[1].abs());
        let res = if self.is_static() { 0.0 } else { self.omegas[0].abs().max(self.omegas[1].abs()) };
        (self.static_part.scale() + drive).max(res)
    }
}

/// Drive term `-(γ/2) μ_B B_li cos(ω_i t) (σx + σy) / ħ` summed over spins.
pub fn build_drive(cfg: &SimulationConfig, resonances: &ResonancePair, t: f64) -> Result<HamiltonianMatrix> {
    Ok(DrivenHamiltonian::new(cfg, resonances)?.drive(t))
}
