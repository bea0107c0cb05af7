//! Per-qubit error probability for one circuit layer.
//!
//! The model adds a decoherence term, accumulated while information sits in
//! the resonators and in the qubit during a layer of duration `2N T_s`, to a
//! cross-talk term `A g^2 / delta^2` with `delta = omega0 / 4N`:
//!
//! ```text
//! eps(N, g) = pi (N Gamma_r + 3 Gamma_q / 4) / g + 16 A N^2 g^2 / omega0^2
//! ```
//!
//! `a/g + b g^2` has a single minimum on `g > 0`, where `a/g = 2 b g^2`. The
//! continuous-`N` variants let the quantum-volume solver treat `N` as real.

use crate::error::{require_positive, CoreError, Result};
use crate::math::{cbrt, PI};
use crate::params::{effective_min_detuning, nearest_neighbor_detuning, swap_time, SystemParams};

/// Which decoherence expression to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DecoherenceForm {
    /// `((2N - 3/2) Gamma_r + 3/2 Gamma_q) T_s`, the residency count without
    /// the large-`N` simplification.
    Exact,
    /// `(2N Gamma_r + 3/2 Gamma_q) T_s`, used by the error budget.
    #[default]
    Approximate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ErrorBreakdown {
    pub decoherence: f64,
    pub crosstalk: f64,
    pub total: f64,
}

impl ErrorBreakdown {
    fn new(decoherence: f64, crosstalk: f64) -> Self {
        Self {
            decoherence,
            crosstalk,
            total: decoherence + crosstalk,
        }
    }

    /// Probabilities above one mean the additive model no longer applies.
    /// Values are reported unclamped.
    pub fn out_of_model(&self) -> bool {
        self.total > 1.0
    }
}

/// Resonator-plus-qubit loss load `N Gamma_r + 3 Gamma_q / 4`.
fn loss_load(p: &SystemParams, n: f64) -> f64 {
    n * p.gamma_r() + 0.75 * p.gamma_q()
}

pub fn decoherence_error(p: &SystemParams, g: f64, form: DecoherenceForm) -> Result<f64> {
    let t_s = swap_time(g)?;
    let n = f64::from(p.n_resonators());
    let resonator_weight = match form {
        DecoherenceForm::Exact => 2.0 * n - 1.5,
        DecoherenceForm::Approximate => 2.0 * n,
    };
    Ok((resonator_weight * p.gamma_r() + 1.5 * p.gamma_q()) * t_s)
}

/// `A g^2 / delta^2` with `delta` the smallest detuning `omega0 / 4N`.
pub fn crosstalk_error(p: &SystemParams, g: f64) -> Result<f64> {
    require_positive("coupling g", g)?;
    let ratio = g / effective_min_detuning(p);
    Ok(p.crosstalk_prefactor() * ratio * ratio)
}

pub fn total_error(p: &SystemParams, g: f64) -> Result<ErrorBreakdown> {
    Ok(ErrorBreakdown::new(
        decoherence_error(p, g, DecoherenceForm::Approximate)?,
        crosstalk_error(p, g)?,
    ))
}

/// Coupling minimising [`total_error`]:
/// `g* = (pi (N Gamma_r + 3 Gamma_q / 4) omega0^2 / 32 A N^2)^(1/3)`.
pub fn optimal_coupling(p: &SystemParams) -> Result<f64> {
    optimal_coupling_continuous(p, f64::from(p.n_resonators()))
}

/// Minimum of [`total_error`] over `g`:
/// `3 (4 A pi^2 N^2 (N Gamma_r + 3 Gamma_q / 4)^2 / omega0^2)^(1/3)`.
pub fn optimal_error(p: &SystemParams) -> Result<f64> {
    optimal_error_continuous(p, f64::from(p.n_resonators()))
}

/// [`optimal_coupling`] with the register size relaxed to a real `n > 0`.
pub fn optimal_coupling_continuous(p: &SystemParams, n: f64) -> Result<f64> {
    let load = checked_load(p, n)?;
    let omega0 = p.omega0();
    Ok(cbrt(
        PI * load * omega0 * omega0 / (32.0 * p.crosstalk_prefactor() * n * n),
    ))
}

/// [`optimal_error`] with the register size relaxed to a real `n > 0`.
pub fn optimal_error_continuous(p: &SystemParams, n: f64) -> Result<f64> {
    let load = checked_load(p, n)?;
    let omega0 = p.omega0();
    Ok(3.0 * cbrt(4.0 * p.crosstalk_prefactor() * PI * PI * n * n * load * load / (omega0 * omega0)))
}

fn checked_load(p: &SystemParams, n: f64) -> Result<f64> {
    require_positive("resonator count", n)?;
    if p.gamma_q() == 0.0 && p.gamma_r() == 0.0 {
        return Err(CoreError::NoDecoherence);
    }
    Ok(loss_load(p, n))
}

/// Purcell-induced resonator loss and its effect on the layer error.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PurcellCorrection {
    /// `Delta Gamma_r = Gamma_q (g / delta)^2` with `delta = omega0 / 2N` the
    /// resonator spacing, 1/s.
    pub excess_rate: f64,
    /// `Delta eps = 2 Delta Gamma_r N T_s`.
    pub error_increase: f64,
    /// `Delta eps / eps` with `eps` from [`total_error`] at the same coupling.
    pub ratio: f64,
}

pub fn purcell_corrections(p: &SystemParams, g: f64) -> Result<PurcellCorrection> {
    let t_s = swap_time(g)?;
    let ratio_g = g / nearest_neighbor_detuning(p);
    let excess_rate = p.gamma_q() * ratio_g * ratio_g;
    let error_increase = 2.0 * excess_rate * f64::from(p.n_resonators()) * t_s;
    let eps = total_error(p, g)?.total;
    Ok(PurcellCorrection {
        excess_rate,
        error_increase,
        ratio: error_increase / eps,
    })
}

/// Closed-form ceiling on the Purcell ratio at the optimal coupling,
/// `(2/3) (pi^2 N^5 / 12 A^2 Q_q^2)^(1/3)`. It is attained when
/// `Gamma_r = 0`; resonator loss only lowers the true ratio.
pub fn purcell_ratio_bound(n: f64, crosstalk_prefactor: f64, q_qubit: f64) -> f64 {
    let n5 = n * n * n * n * n;
    let a = crosstalk_prefactor;
    (2.0 / 3.0) * cbrt(PI * PI * n5 / (12.0 * a * a * q_qubit * q_qubit))
}

/// [`purcell_ratio_bound`] evaluated at the volume-optimal register size
/// `N = (2 Q_q / 9 pi sqrt(3A))^(1/4)`:
/// `(1 / 9A) (8 pi sqrt(A/3) / 3 Q_q)^(1/4)`.
pub fn purcell_ratio_bound_at_volume_optimum(crosstalk_prefactor: f64, q_qubit: f64) -> f64 {
    let a = crosstalk_prefactor;
    let inner = 8.0 * PI * crate::math::sqrt(a / 3.0) / (3.0 * q_qubit);
    crate::math::powf(inner, 0.25) / (9.0 * a)
}
