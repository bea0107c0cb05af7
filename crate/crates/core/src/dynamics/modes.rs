use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{CoreError, Result};
use crate::math::sqrt;

/// Resonator modes seen by the qubit: detuning from the qubit (rad/s) and
/// peak coupling (rad/s) for each mode.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeSet {
    detunings: Vec<f64>,
    couplings: Vec<f64>,
    target: Option<usize>,
}

impl ModeSet {
    /// `target` names the mode the gate is resonant with; it must be the only
    /// mode at zero detuning.
    pub fn new(detunings: Vec<f64>, couplings: Vec<f64>, target: Option<usize>) -> Result<Self> {
        if detunings.is_empty() {
            return Err(CoreError::InvalidModeSet("no modes"));
        }
        if detunings.len() != couplings.len() {
            return Err(CoreError::InvalidModeSet("detuning and coupling counts differ"));
        }
        if detunings.iter().any(|d| !d.is_finite()) {
            return Err(CoreError::InvalidModeSet("non-finite detuning"));
        }
        if couplings.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err(CoreError::InvalidModeSet("couplings must be finite and >= 0"));
        }
        if let Some(t) = target {
            if t >= detunings.len() {
                return Err(CoreError::InvalidModeSet("target index out of range"));
            }
            let resonant = detunings.iter().filter(|d| **d == 0.0).count();
            if detunings[t] != 0.0 || resonant != 1 {
                return Err(CoreError::InvalidModeSet(
                    "target must be the only mode at zero detuning",
                ));
            }
        }
        Ok(Self {
            detunings,
            couplings,
            target,
        })
    }

    /// Uniform ladder of `n_modes` modes with the resonant target at index 0
    /// and spectators at `+spacing, -spacing, +2 spacing, -2 spacing, ...`.
    pub fn ladder(n_modes: usize, spacing: f64, g: f64) -> Result<Self> {
        if n_modes == 0 {
            return Err(CoreError::InvalidModeSet("no modes"));
        }
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(CoreError::InvalidModeSet("spacing must be finite and > 0"));
        }
        let detunings = (0..n_modes)
            .map(|k| {
                if k == 0 {
                    0.0
                } else {
                    let order = k.div_ceil(2) as f64;
                    if k % 2 == 1 {
                        order * spacing
                    } else {
                        -order * spacing
                    }
                }
            })
            .collect();
        Self::new(detunings, vec![g; n_modes], Some(0))
    }

    /// Adds an extra channel standing in for the transmon's second
    /// transition: detuning `detuning`, coupling `sqrt(2) g`.
    pub fn with_transmon_channel(mut self, detuning: f64, g: f64) -> Result<Self> {
        self.detunings.push(detuning);
        self.couplings.push(sqrt(2.0) * g);
        Self::new(self.detunings, self.couplings, self.target)
    }

    pub fn n_modes(&self) -> usize {
        self.detunings.len()
    }

    /// Hilbert-space dimension `M + 1`.
    pub fn dim(&self) -> usize {
        self.detunings.len() + 1
    }

    pub fn detunings(&self) -> &[f64] {
        &self.detunings
    }

    pub fn couplings(&self) -> &[f64] {
        &self.couplings
    }

    pub fn target(&self) -> Option<usize> {
        self.target
    }

    pub fn max_coupling(&self) -> f64 {
        self.couplings.iter().copied().fold(0.0, f64::max)
    }

    pub fn max_abs_detuning(&self) -> f64 {
        self.detunings.iter().map(|d| d.abs()).fold(0.0, f64::max)
    }

    /// Dense row-major Hamiltonian (rad/s) for envelope value `env`.
    /// Index 0 is `|e0>`, index `k + 1` is `|g1_k>`.
    pub fn hamiltonian(&self, env: f64) -> Vec<Complex64> {
        let dim = self.dim();
        let mut h = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (k, (&delta, &g)) in self.detunings.iter().zip(&self.couplings).enumerate() {
            let i = k + 1;
            h[i * dim + i] = Complex64::new(delta, 0.0);
            let c = Complex64::new(g * env, 0.0);
            h[i] = c;
            h[i * dim] = c.conj();
        }
        h
    }

    /// `out = -i H(env) psi`, exploiting the arrow structure of `H`.
    pub(crate) fn apply_generator(&self, env: f64, psi: &[Complex64], out: &mut [Complex64]) {
        let minus_i = Complex64::new(0.0, -1.0);
        let e0 = psi[0];
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, (&delta, &g)) in self.detunings.iter().zip(&self.couplings).enumerate() {
            let amp = psi[k + 1];
            let ge = g * env;
            acc += amp * ge;
            out[k + 1] = minus_i * (amp * delta + e0 * ge);
        }
        out[0] = minus_i * acc;
    }
}
