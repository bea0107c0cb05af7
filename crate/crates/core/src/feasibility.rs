//! Limits on the qubit's total capacitance `C_Sigma`.
//!
//! The coupling a circuit of capacitance `C_Sigma` can reach is capped by the
//! sum rule `g <= q_eff sqrt(omega0 / 2 hbar C_Sigma)`, so reaching the optimal
//! coupling puts a ceiling on `C_Sigma`. Two floors (transmon regime, coupler
//! capacitance `N C_1`) and two more ceilings (anharmonicity `E_C / hbar`
//! above a fixed minimum and above half the resonator spacing) complete the
//! picture. A design is feasible when the largest floor lies below the
//! smallest ceiling.

use alloc::vec::Vec;

use crate::error::{require_non_negative, require_positive, CoreError, Result};
use crate::error_model::optimal_coupling;
use crate::math::{cbrt, sqrt, PI};
use crate::params::{hz_to_angular, SystemParams, CONSTANTS};
use crate::volume::NRange;

/// Electrical parameters of the qubit-resonator couplers.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct HardwareProfile {
    /// Effective piezoelectric coupling charge, C.
    pub q_eff: f64,
    /// Capacitance added per coupler, F.
    pub coupler_capacitance: f64,
    /// Smallest acceptable anharmonicity, rad/s.
    pub min_anharmonicity: f64,
    /// Qubit frequency, rad/s.
    pub omega0: f64,
}

impl HardwareProfile {
    /// `q_eff` may be zero (no piezoelectric coupling); everything else must
    /// be positive.
    pub fn new(q_eff: f64, coupler_capacitance: f64, min_anharmonicity: f64, omega0: f64) -> Result<Self> {
        require_non_negative("q_eff", q_eff)?;
        require_positive("coupler_capacitance", coupler_capacitance)?;
        require_positive("min_anharmonicity", min_anharmonicity)?;
        require_positive("omega0", omega0)?;
        Ok(Self {
            q_eff,
            coupler_capacitance,
            min_anharmonicity,
            omega0,
        })
    }

    /// 4e-21 C, 1 fF per coupler, 50 MHz minimum anharmonicity.
    pub fn reference(omega0: f64) -> Result<Self> {
        Self::new(4e-21, 1e-15, hz_to_angular(50e6), omega0)
    }

    pub fn with_q_eff(&self, q_eff: f64) -> Result<Self> {
        Self::new(q_eff, self.coupler_capacitance, self.min_anharmonicity, self.omega0)
    }

    pub fn with_coupler_capacitance(&self, c1: f64) -> Result<Self> {
        Self::new(self.q_eff, c1, self.min_anharmonicity, self.omega0)
    }
}

/// Sum-rule ceiling on the qubit-resonator coupling for capacitance `c_sigma`.
pub fn trk_coupling_bound(profile: &HardwareProfile, c_sigma: f64) -> Result<f64> {
    require_positive("c_sigma", c_sigma)?;
    Ok(profile.q_eff * sqrt(profile.omega0 / (2.0 * CONSTANTS.hbar * c_sigma)))
}

/// `q_eff` of a coupler that saturates the sum rule with coupling `g_ref` at
/// capacitance `c_sigma_ref` and frequency `omega0_ref`.
pub fn calibrate_qeff(g_ref: f64, c_sigma_ref: f64, omega0_ref: f64) -> Result<f64> {
    require_positive("g_ref", g_ref)?;
    require_positive("c_sigma_ref", c_sigma_ref)?;
    require_positive("omega0_ref", omega0_ref)?;
    Ok(g_ref * sqrt(2.0 * CONSTANTS.hbar * c_sigma_ref / omega0_ref))
}

/// Largest `C_Sigma` whose coupling ceiling still reaches the optimal
/// coupling: `q_eff^2 omega0 / (2 hbar g*^2)`.
pub fn max_capacitance_for_coupling(profile: &HardwareProfile, p: &SystemParams) -> Result<f64> {
    check_frequency(profile, p)?;
    let g = optimal_coupling(p)?;
    Ok(profile.q_eff * profile.q_eff * p.omega0() / (2.0 * CONSTANTS.hbar * g * g))
}

/// Same ceiling written out in the system parameters:
/// `(2 q_eff^2 / hbar omega0) (4 A N^2 omega0 / pi (N Gamma_r + 3 Gamma_q / 4))^(2/3)`.
pub fn max_capacitance_closed_form(profile: &HardwareProfile, p: &SystemParams) -> Result<f64> {
    check_frequency(profile, p)?;
    if p.gamma_q() == 0.0 && p.gamma_r() == 0.0 {
        return Err(CoreError::NoDecoherence);
    }
    let n = f64::from(p.n_resonators());
    let omega0 = p.omega0();
    let load = n * p.gamma_r() + 0.75 * p.gamma_q();
    let inner = cbrt(4.0 * p.crosstalk_prefactor() * n * n * omega0 / (PI * load));
    Ok(2.0 * profile.q_eff * profile.q_eff / (CONSTANTS.hbar * omega0) * inner * inner)
}

fn check_frequency(profile: &HardwareProfile, p: &SystemParams) -> Result<()> {
    if ((profile.omega0 - p.omega0()) / p.omega0()).abs() > 1e-12 {
        return Err(CoreError::FrequencyMismatch {
            profile: profile.omega0,
            system: p.omega0(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum LowerBound {
    Transmon,
    Couplers,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize), serde(rename_all = "snake_case"))]
pub enum UpperBound {
    Coupling,
    AnharmonicityFixed,
    AnharmonicityDetuning,
}

/// All capacitances in farads.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CapacitanceBounds {
    /// `4 e^2 / hbar omega0`.
    pub lower_transmon: f64,
    /// `N C_1`.
    pub lower_couplers: f64,
    pub upper_coupling: f64,
    /// `e^2 / (2 hbar alpha_min)`.
    pub upper_anharmonicity_fixed: f64,
    /// `2 e^2 N / hbar omega0`, from `E_C >= hbar omega0 / 4N`.
    pub upper_anharmonicity_detuning: f64,
    pub feasible_interval: Option<(f64, f64)>,
}

impl CapacitanceBounds {
    fn from_limits(lowers: [f64; 2], uppers: [f64; 3]) -> Self {
        let mut b = Self {
            lower_transmon: lowers[0],
            lower_couplers: lowers[1],
            upper_coupling: uppers[0],
            upper_anharmonicity_fixed: uppers[1],
            upper_anharmonicity_detuning: uppers[2],
            feasible_interval: None,
        };
        let (floor, ceiling) = (b.floor().1, b.ceiling().1);
        if floor <= ceiling {
            b.feasible_interval = Some((floor, ceiling));
        }
        b
    }

    /// The largest lower bound.
    pub fn floor(&self) -> (LowerBound, f64) {
        if self.lower_couplers > self.lower_transmon {
            (LowerBound::Couplers, self.lower_couplers)
        } else {
            (LowerBound::Transmon, self.lower_transmon)
        }
    }

    /// The smallest upper bound.
    pub fn ceiling(&self) -> (UpperBound, f64) {
        [
            (UpperBound::Coupling, self.upper_coupling),
            (UpperBound::AnharmonicityFixed, self.upper_anharmonicity_fixed),
            (UpperBound::AnharmonicityDetuning, self.upper_anharmonicity_detuning),
        ]
        .into_iter()
        .fold((UpperBound::Coupling, f64::INFINITY), |best, c| {
            if c.1 < best.1 {
                c
            } else {
                best
            }
        })
    }

    pub fn is_feasible(&self) -> bool {
        self.feasible_interval.is_some()
    }
}

pub fn capacitance_bounds(profile: &HardwareProfile, p: &SystemParams) -> Result<CapacitanceBounds> {
    let e2 = CONSTANTS.electron_charge * CONSTANTS.electron_charge;
    let hbar = CONSTANTS.hbar;
    let n = f64::from(p.n_resonators());
    // shared so that the transmon floor and detuning ceiling coincide exactly at N = 2
    let unit = e2 / (hbar * p.omega0());
    Ok(CapacitanceBounds::from_limits(
        [4.0 * unit, n * profile.coupler_capacitance],
        [
            max_capacitance_for_coupling(profile, p)?,
            e2 / (2.0 * hbar * profile.min_anharmonicity),
            2.0 * n * unit,
        ],
    ))
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ScanRow {
    pub n: u32,
    pub bounds: CapacitanceBounds,
}

/// Where the feasible region first closes in a scan.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Closure {
    pub first_infeasible_n: u32,
    /// `first_infeasible_n - 1`, or `None` if the scan starts infeasible.
    pub last_feasible_n: Option<u32>,
    /// The floor and ceiling that cross at `first_infeasible_n`.
    pub binding_lower: LowerBound,
    pub binding_upper: UpperBound,
}

#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FeasibilityScan {
    pub rows: Vec<ScanRow>,
    /// `None` when every `N` in range is feasible.
    pub closure: Option<Closure>,
}

pub fn feasibility_scan(
    profile: &HardwareProfile,
    p_template: &SystemParams,
    range: NRange,
) -> Result<FeasibilityScan> {
    let rows = range
        .iter()
        .map(|n| {
            let p = p_template.with_n_resonators(n)?;
            Ok(ScanRow {
                n,
                bounds: capacitance_bounds(profile, &p)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let closure = rows.iter().find(|r| !r.bounds.is_feasible()).map(|r| Closure {
        first_infeasible_n: r.n,
        last_feasible_n: (r.n > range.min).then(|| r.n - 1),
        binding_lower: r.bounds.floor().0,
        binding_upper: r.bounds.ceiling().0,
    });
    Ok(FeasibilityScan { rows, closure })
}
