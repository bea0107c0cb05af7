//! Physical parameters, constants and the elementary timing relations.

use alloc::vec::Vec;

use crate::error::{require_non_negative, require_positive, CoreError, Result};
use crate::math::PI;

/// Fundamental constants (CODATA 2018, exact SI definitions).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Elementary charge, C.
    pub electron_charge: f64,
}

pub const CONSTANTS: PhysicalConstants = PhysicalConstants {
    hbar: 1.054_571_817e-34,
    electron_charge: 1.602_176_634e-19,
};

/// Rates above this fraction of `omega0` trigger a [`ParamWarning`].
pub const RATE_WARNING_RATIO: f64 = 1e-3;

/// Smallest register size that admits a two-resonator gate.
pub const MIN_RESONATORS: u32 = 2;

#[inline]
pub fn hz_to_angular(f_hz: f64) -> f64 {
    2.0 * PI * f_hz
}

#[inline]
pub fn angular_to_hz(omega: f64) -> f64 {
    omega / (2.0 * PI)
}

/// A single design point: qubit operating frequency, loss rates, cross-talk
/// prefactor and register size.
///
/// Rates of zero are allowed and correspond to infinite quality factors.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SystemParams {
    omega0: f64,
    gamma_q: f64,
    gamma_r: f64,
    crosstalk_prefactor: f64,
    n_resonators: u32,
}

/// A non-fatal validation finding: a rate that is not small compared to `omega0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ParamWarning {
    pub name: &'static str,
    pub ratio_to_omega0: f64,
}

impl SystemParams {
    /// Builds a design point from angular frequency `omega0` (rad/s) and
    /// decoherence rates in 1/s.
    pub fn new(omega0: f64, gamma_q: f64, gamma_r: f64, crosstalk_prefactor: f64, n_resonators: u32) -> Result<Self> {
        require_positive("omega0", omega0)?;
        require_non_negative("gamma_q", gamma_q)?;
        require_non_negative("gamma_r", gamma_r)?;
        require_positive("crosstalk_prefactor", crosstalk_prefactor)?;
        if n_resonators < MIN_RESONATORS {
            return Err(CoreError::TooFewResonators {
                min: MIN_RESONATORS,
                got: n_resonators,
            });
        }
        Ok(Self {
            omega0,
            gamma_q,
            gamma_r,
            crosstalk_prefactor,
            n_resonators,
        })
    }

    /// Builds a design point from quality factors `Q = omega0 / Gamma`.
    /// An infinite quality factor maps to a zero rate.
    pub fn from_quality_factors(
        omega0: f64,
        q_qubit: f64,
        q_mech: f64,
        crosstalk_prefactor: f64,
        n_resonators: u32,
    ) -> Result<Self> {
        require_positive("omega0", omega0)?;
        let gamma_q = rate_from_quality(omega0, "q_qubit", q_qubit)?;
        let gamma_r = rate_from_quality(omega0, "q_mech", q_mech)?;
        Self::new(omega0, gamma_q, gamma_r, crosstalk_prefactor, n_resonators)
    }

    pub fn omega0(&self) -> f64 {
        self.omega0
    }

    pub fn gamma_q(&self) -> f64 {
        self.gamma_q
    }

    pub fn gamma_r(&self) -> f64 {
        self.gamma_r
    }

    pub fn crosstalk_prefactor(&self) -> f64 {
        self.crosstalk_prefactor
    }

    pub fn n_resonators(&self) -> u32 {
        self.n_resonators
    }

    /// Qubit quality factor `omega0 / gamma_q` (infinite for a lossless qubit).
    pub fn q_qubit(&self) -> f64 {
        self.omega0 / self.gamma_q
    }

    /// Resonator quality factor `omega0 / gamma_r`.
    pub fn q_mech(&self) -> f64 {
        self.omega0 / self.gamma_r
    }

    pub fn with_n_resonators(&self, n_resonators: u32) -> Result<Self> {
        Self::new(
            self.omega0,
            self.gamma_q,
            self.gamma_r,
            self.crosstalk_prefactor,
            n_resonators,
        )
    }

    pub fn with_gamma_r(&self, gamma_r: f64) -> Result<Self> {
        Self::new(
            self.omega0,
            self.gamma_q,
            gamma_r,
            self.crosstalk_prefactor,
            self.n_resonators,
        )
    }

    pub fn with_crosstalk_prefactor(&self, a: f64) -> Result<Self> {
        Self::new(self.omega0, self.gamma_q, self.gamma_r, a, self.n_resonators)
    }

    /// Scales `omega0` and both rates by `c`, leaving every quality factor fixed.
    pub fn rescaled(&self, c: f64) -> Result<Self> {
        require_positive("scale", c)?;
        Self::new(
            c * self.omega0,
            c * self.gamma_q,
            c * self.gamma_r,
            self.crosstalk_prefactor,
            self.n_resonators,
        )
    }

    /// Rates that are not small compared to `omega0`; the rotating-wave
    /// treatment assumes every ratio stays below [`RATE_WARNING_RATIO`].
    pub fn warnings(&self) -> Vec<ParamWarning> {
        [("gamma_q", self.gamma_q), ("gamma_r", self.gamma_r)]
            .into_iter()
            .map(|(name, rate)| ParamWarning {
                name,
                ratio_to_omega0: rate / self.omega0,
            })
            .filter(|w| w.ratio_to_omega0 > RATE_WARNING_RATIO)
            .collect()
    }
}

fn rate_from_quality(omega0: f64, name: &'static str, q: f64) -> Result<f64> {
    if q.is_infinite() && q > 0.0 {
        return Ok(0.0);
    }
    require_positive(name, q)?;
    Ok(omega0 / q)
}

/// Spacing between neighbouring resonator frequencies when `N` resonators
/// fill a band of width `omega0 / 2`: `omega0 / 2N`.
pub fn nearest_neighbor_detuning(p: &SystemParams) -> f64 {
    p.omega0 / (2.0 * f64::from(p.n_resonators))
}

/// Smallest detuning in the system, `omega0 / 4N`: the transmon's second
/// transition sits half-way between two resonators.
pub fn effective_min_detuning(p: &SystemParams) -> f64 {
    p.omega0 / (4.0 * f64::from(p.n_resonators))
}

/// Duration of a full qubit-resonator swap, `pi / 2g`.
pub fn swap_time(g: f64) -> Result<f64> {
    require_positive("coupling g", g)?;
    Ok(PI / (2.0 * g))
}

/// Duration of one circuit layer, `N (T_s + T_g / 2)` with `T_g = 2 T_s`.
pub fn step_duration(p: &SystemParams, g: f64) -> Result<f64> {
    Ok(2.0 * f64::from(p.n_resonators) * swap_time(g)?)
}
