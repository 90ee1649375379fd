//! Two-qubit pure states in the computational basis `|00>, |01>, |10>, |11>`.

use std::ops::{Index, IndexMut};

use nalgebra::Vector4;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

/// Amplitudes `c1..c4` of `c1|00> + c2|01> + c3|10> + c4|11>`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StateVector {
    pub amps: [C64; 4],
}

impl StateVector {
    pub const fn new(c1: C64, c2: C64, c3: C64, c4: C64) -> Self {
        Self { amps: [c1, c2, c3, c4] }
    }

    pub fn from_real(c: [f64; 4]) -> Self {
        Self { amps: c.map(|x| C64::new(x, 0.0)) }
    }

    /// Single basis state `|index>` with `index` in `0..4`.
    pub fn basis(index: usize) -> Self {
        let mut amps = [C64::new(0.0, 0.0); 4];
        amps[index] = C64::new(1.0, 0.0);
        Self { amps }
    }

    /// Kronecker product `a ⊗ b` of two single-qubit states.
    pub fn product(a: [C64; 2], b: [C64; 2]) -> Self {
        Self::new(a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1])
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm_sqr().sqrt();
        Self { amps: self.amps.map(|c| c / n) }
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps.iter().zip(other.amps.iter()).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { amps: self.amps.map(|c| c * z) }
    }

    /// Largest `|a_i - b_i|` over the four amplitudes.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.amps.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    pub fn to_vector(&self) -> Vector4<C64> {
        Vector4::from(self.amps)
    }

    pub fn from_vector(v: &Vector4<C64>) -> Self {
        Self { amps: [v[0], v[1], v[2], v[3]] }
    }
}

impl Index<usize> for StateVector {
    type Output = C64;

    fn index(&self, i: usize) -> &C64 {
        &self.amps[i]
    }
}

impl IndexMut<usize> for StateVector {
    fn index_mut(&mut self, i: usize) -> &mut C64 {
        &mut self.amps[i]
    }
}

/// The uniform product state `(|0> + |1>) ⊗ (|0> + |1>) / 2`.
pub fn default_initial_state() -> StateVector {
    StateVector::from_real([0.5; 4])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_state_is_uniform_and_normalized() {
        let s = default_initial_state();
        for c in s.amps {
            assert_eq!(c, C64::new(0.5, 0.0));
        }
        assert_eq!(s.norm_sqr(), 1.0);
    }

    #[test]
    fn product_matches_kron_ordering() {
        let zero = [C64::new(1.0, 0.0), C64::new(0.0, 0.0)];
        let one = [C64::new(0.0, 0.0), C64::new(1.0, 0.0)];
        assert_eq!(StateVector::product(zero, one), StateVector::basis(1));
        assert_eq!(StateVector::product(one, zero), StateVector::basis(2));
    }
}
