//! Circuit depth `d(N) = 1 / (N eps(N))` at the per-`N` optimal coupling and
//! the quantum volume `max_N min(N, d(N))^2`.

use crate::error::{require_positive, CoreError, Result};
use crate::error_model::{optimal_error, optimal_error_continuous};
use crate::math::{powf, sqrt, PI};
use crate::params::SystemParams;

/// Inclusive integer range of register sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct NRange {
    pub min: u32,
    pub max: u32,
}

impl NRange {
    pub fn new(min: u32, max: u32) -> Result<Self> {
        if min > max {
            return Err(CoreError::EmptyRange { n_min: min, n_max: max });
        }
        if min < crate::params::MIN_RESONATORS {
            return Err(CoreError::TooFewResonators {
                min: crate::params::MIN_RESONATORS,
                got: min,
            });
        }
        Ok(Self { min, max })
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> {
        self.min..=self.max
    }
}

impl Default for NRange {
    fn default() -> Self {
        Self { min: 2, max: 500 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct VolumeResult {
    /// Continuous solution of `N = d(N)`.
    pub n_star: f64,
    /// Integer `N` maximising `min(N, d(N))`.
    pub n_best_integer: u32,
    pub volume_continuous: f64,
    pub volume_integer: f64,
    pub depth_at_n_star: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum Regime {
    /// Storage far better than the qubit, `Gamma_q >> N Gamma_r`.
    Mechanical,
    /// Storage as lossy as the qubit, `Gamma_r = Gamma_q`.
    Microwave,
}

pub fn circuit_depth(p: &SystemParams) -> Result<f64> {
    Ok(1.0 / (f64::from(p.n_resonators()) * optimal_error(p)?))
}

/// [`circuit_depth`] for a real-valued register size.
pub fn circuit_depth_continuous(p: &SystemParams, n: f64) -> Result<f64> {
    Ok(1.0 / (n * optimal_error_continuous(p, n)?))
}

const BALANCE_TOLERANCE: f64 = 1e-12;

/// Finds `N = d(N)` by bisection on the relaxed register size and scans the
/// integers in `range` for the realisable volume. Only the rates, `omega0`
/// and `A` of `p` are used; its `N` is ignored.
pub fn solve_balance(p: &SystemParams, range: NRange) -> Result<VolumeResult> {
    let gap = |n: f64| -> Result<f64> { Ok(n - circuit_depth_continuous(p, n)?) };
    let (mut lo, mut hi) = (f64::from(range.min), f64::from(range.max));
    let no_balance = CoreError::NoBalancePoint { n_min: lo, n_max: hi };
    if gap(lo)? > 0.0 || gap(hi)? < 0.0 {
        return Err(no_balance);
    }
    while hi - lo > BALANCE_TOLERANCE * hi {
        let mid = 0.5 * (lo + hi);
        if gap(mid)? < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let n_star = 0.5 * (lo + hi);
    let depth_at_n_star = circuit_depth_continuous(p, n_star)?;

    let mut best = (range.min, f64::NEG_INFINITY);
    for n in range.iter() {
        let side = f64::from(n).min(circuit_depth(&p.with_n_resonators(n)?)?);
        if side > best.1 {
            best = (n, side);
        }
    }

    Ok(VolumeResult {
        n_star,
        n_best_integer: best.0,
        volume_continuous: n_star * n_star,
        volume_integer: best.1 * best.1,
        depth_at_n_star,
    })
}

/// Asymptotic volume from `N = d(N)` when one loss channel dominates:
/// `(2 Q_q / 9 pi sqrt(3A))^(1/2)` (mechanical) or
/// `(Q_q / 6 pi sqrt(3A))^(2/5)` (microwave).
pub fn closed_form_volume(p: &SystemParams, regime: Regime) -> Result<f64> {
    closed_form_volume_from(p.q_qubit(), p.crosstalk_prefactor(), regime)
}

pub fn closed_form_volume_from(q_qubit: f64, crosstalk_prefactor: f64, regime: Regime) -> Result<f64> {
    require_positive("qubit quality factor", q_qubit)?;
    require_positive("crosstalk prefactor", crosstalk_prefactor)?;
    let root = sqrt(3.0 * crosstalk_prefactor);
    Ok(match regime {
        Regime::Mechanical => sqrt(2.0 * q_qubit / (9.0 * PI * root)),
        Regime::Microwave => powf(q_qubit / (6.0 * PI * root), 0.4),
    })
}

/// Register size at the mechanical-regime balance point, `sqrt(V_Q)`.
pub fn closed_form_optimal_n(q_qubit: f64, crosstalk_prefactor: f64) -> Result<f64> {
    Ok(sqrt(closed_form_volume_from(
        q_qubit,
        crosstalk_prefactor,
        Regime::Mechanical,
    )?))
}
