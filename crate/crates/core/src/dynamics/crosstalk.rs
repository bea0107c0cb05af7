use alloc::vec::Vec;

use super::{evolve, IntegratorSettings, ModeSet, PulseEnvelope, PulseShape, RotationAngle, WaveState};
use crate::error::{require_non_negative, require_positive, CoreError, Result};
use crate::math::{sin_sq, sqrt};
use crate::params::{effective_min_detuning, SystemParams};

/// Population transferred from `|e0>` to a single mode at detuning `delta`
/// after time `t` with constant coupling `g`:
/// `4g^2 / (4g^2 + delta^2) sin^2(sqrt(4g^2 + delta^2) t / 2)`.
pub fn two_level_rabi(g: f64, delta: f64, t: f64) -> Result<f64> {
    require_positive("coupling g", g)?;
    require_non_negative("time", t)?;
    let omega_sq = 4.0 * g * g + delta * delta;
    Ok(4.0 * g * g / omega_sq * sin_sq(sqrt(omega_sq) * t / 2.0))
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CrosstalkOutcome {
    pub n_modes: usize,
    /// Smallest spectator detuning, rad/s.
    pub delta: f64,
    /// `1 - P(|e0>)` after the swap: spectator population plus whatever
    /// stayed in the target mode.
    pub numerical_leakage: f64,
    /// `sum_k g^2 / delta_k^2` over all spectators.
    pub analytic_bound: f64,
    pub spectator_population: Vec<f64>,
    pub residual_target: f64,
    pub steps: u64,
}

/// Swaps a phonon out of the target resonator of an `N`-mode ladder with
/// spacing `omega0 / 4N` and measures how much ends up anywhere but the qubit.
pub fn crosstalk_experiment(
    p: &SystemParams,
    g: f64,
    shape: PulseShape,
    settings: &IntegratorSettings,
) -> Result<CrosstalkOutcome> {
    require_positive("coupling g", g)?;
    let n = p.n_resonators();
    if n < 3 {
        return Err(CoreError::TooFewResonators { min: 3, got: n });
    }
    let n_modes = n as usize;
    let delta = effective_min_detuning(p);
    let modes = ModeSet::ladder(n_modes, delta, g)?;
    let pulse = PulseEnvelope::area_normalized(shape, g, RotationAngle::Swap)?;
    let start = WaveState::mode_excited(n_modes, 0);
    let out = evolve(&start, &modes, &pulse, settings)?;

    let analytic_bound = modes.detunings()[1..].iter().map(|d| (g / d) * (g / d)).sum();
    let spectator_population = (1..n_modes).map(|k| out.state.mode_population(k)).collect();
    Ok(CrosstalkOutcome {
        n_modes,
        delta,
        numerical_leakage: 1.0 - out.state.qubit_population(),
        analytic_bound,
        spectator_population,
        residual_target: out.state.mode_population(0),
        steps: out.steps,
    })
}
