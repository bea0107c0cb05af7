use alloc::vec;
use num_complex::Complex64;

use super::{ModeSet, PulseEnvelope, WaveState};
use crate::error::{CoreError, Result};
use crate::math::ceil;

/// Fixed-step RK4 with Richardson step-halving control.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSettings {
    /// Target for the Richardson estimate `||psi_{h/2} - psi_h|| / 15`.
    pub tolerance: f64,
    /// Steps per fastest period: the initial step is
    /// `min(1 / (k g_max), 1 / (k max|Delta|))`.
    pub steps_per_unit_rate: f64,
    /// Step halvings allowed before giving up.
    pub max_refinements: u32,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        Self {
            tolerance: 1e-10,
            steps_per_unit_rate: 50.0,
            max_refinements: 12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Evolution {
    pub state: WaveState,
    pub steps: u64,
    pub error_estimate: f64,
}

/// Step count for the initial, coarsest pass.
pub fn default_step_count(modes: &ModeSet, pulse: &PulseEnvelope, settings: &IntegratorSettings) -> u64 {
    let fastest = modes.max_coupling().max(modes.max_abs_detuning());
    if fastest == 0.0 {
        return 1;
    }
    let h_max = 1.0 / (settings.steps_per_unit_rate * fastest);
    (ceil(pulse.duration() / h_max) as u64).max(1)
}

/// Evolves `state` through `pulse`, halving the step until the Richardson
/// error estimate meets `settings.tolerance`. Returns the finer solution.
pub fn evolve(
    state: &WaveState,
    modes: &ModeSet,
    pulse: &PulseEnvelope,
    settings: &IntegratorSettings,
) -> Result<Evolution> {
    check_input(state, modes)?;
    let mut steps = default_step_count(modes, pulse, settings);
    let mut coarse = rk4(state, modes, pulse, steps);
    let mut estimate = f64::INFINITY;
    for _ in 0..=settings.max_refinements {
        steps *= 2;
        let fine = rk4(state, modes, pulse, steps);
        estimate = fine.distance(&coarse) / 15.0;
        if estimate <= settings.tolerance {
            return Ok(Evolution {
                state: fine,
                steps,
                error_estimate: estimate,
            });
        }
        coarse = fine;
    }
    Err(CoreError::ToleranceNotMet {
        tolerance: settings.tolerance,
        estimate,
        steps,
    })
}

/// Plain RK4 with exactly `steps` equal steps and no error control.
pub fn evolve_fixed_steps(state: &WaveState, modes: &ModeSet, pulse: &PulseEnvelope, steps: u64) -> Result<WaveState> {
    check_input(state, modes)?;
    if steps == 0 {
        return Err(CoreError::Domain {
            name: "steps",
            value: 0.0,
            requirement: "must be >= 1",
        });
    }
    Ok(rk4(state, modes, pulse, steps))
}

fn check_input(state: &WaveState, modes: &ModeSet) -> Result<()> {
    if state.dim() != modes.dim() {
        return Err(CoreError::DimensionMismatch {
            expected: modes.dim(),
            got: state.dim(),
        });
    }
    let norm_sqr = state.norm_sqr();
    if (norm_sqr - 1.0).abs() > 1e-9 {
        return Err(CoreError::NotNormalized { norm_sqr });
    }
    Ok(())
}

fn rk4(state: &WaveState, modes: &ModeSet, pulse: &PulseEnvelope, steps: u64) -> WaveState {
    let dim = modes.dim();
    let h = pulse.duration() / steps as f64;
    let zero = Complex64::new(0.0, 0.0);
    let mut psi = state.clone();
    let mut k1 = vec![zero; dim];
    let mut k2 = vec![zero; dim];
    let mut k3 = vec![zero; dim];
    let mut k4 = vec![zero; dim];
    let mut tmp = vec![zero; dim];

    for n in 0..steps {
        let t = n as f64 * h;
        let (e0, e_mid, e1) = (pulse.value(t), pulse.value(t + 0.5 * h), pulse.value(t + h));
        let y = psi.amplitudes_mut();

        modes.apply_generator(e0, y, &mut k1);
        for i in 0..dim {
            tmp[i] = y[i] + k1[i] * (0.5 * h);
        }
        modes.apply_generator(e_mid, &tmp, &mut k2);
        for i in 0..dim {
            tmp[i] = y[i] + k2[i] * (0.5 * h);
        }
        modes.apply_generator(e_mid, &tmp, &mut k3);
        for i in 0..dim {
            tmp[i] = y[i] + k3[i] * h;
        }
        modes.apply_generator(e1, &tmp, &mut k4);
        for i in 0..dim {
            y[i] += (k1[i] + (k2[i] + k3[i]) * 2.0 + k4[i]) * (h / 6.0);
        }
    }
    psi
}
