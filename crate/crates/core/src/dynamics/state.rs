use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

/// Amplitudes on `|e0>` (index 0) and on `|g1_k>` (index `k + 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct WaveState {
    amps: Vec<Complex64>,
}

impl WaveState {
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Self {
        Self { amps }
    }

    /// Excitation in the qubit, all modes empty.
    pub fn qubit_excited(n_modes: usize) -> Self {
        Self::basis(n_modes + 1, 0)
    }

    /// Single phonon in mode `k`, qubit in the ground state.
    pub fn mode_excited(n_modes: usize, k: usize) -> Self {
        Self::basis(n_modes + 1, k + 1)
    }

    fn basis(dim: usize, index: usize) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); dim];
        amps[index] = Complex64::new(1.0, 0.0);
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn qubit_population(&self) -> f64 {
        self.amps[0].norm_sqr()
    }

    pub fn mode_population(&self, k: usize) -> f64 {
        self.amps[k + 1].norm_sqr()
    }

    /// `<self|other>`.
    pub fn overlap(&self, other: &WaveState) -> Complex64 {
        self.amps.iter().zip(&other.amps).map(|(a, b)| a.conj() * b).sum()
    }

    /// `|<self|other>|^2`, insensitive to global phase.
    pub fn fidelity(&self, other: &WaveState) -> f64 {
        self.overlap(other).norm_sqr()
    }

    /// Euclidean distance `|| self - other ||`.
    pub fn distance(&self, other: &WaveState) -> f64 {
        let d: f64 = self.amps.iter().zip(&other.amps).map(|(a, b)| (a - b).norm_sqr()).sum();
        crate::math::sqrt(d)
    }

    pub fn scaled(&self, c: Complex64) -> WaveState {
        WaveState {
            amps: self.amps.iter().map(|a| a * c).collect(),
        }
    }
}
