//! Parameter files and run configuration.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use phonon_core::feasibility::HardwareProfile;
use phonon_core::params::hz_to_angular;
use phonon_core::volume::NRange;
use phonon_core::SystemParams;
use serde::Deserialize;

use crate::error::{DesignerError, Result};

/// Resonator quality factor assumed for the mechanical regime when the file
/// gives no resonator loss.
pub const DEFAULT_Q_MECH: f64 = 1e9;

/// On-disk parameter file. Each rate may be given directly or through a
/// lifetime / quality factor, but not both.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFile {
    pub omega0_hz: f64,
    pub gamma_q_per_s: Option<f64>,
    pub qubit_t1_s: Option<f64>,
    pub gamma_r_per_s: Option<f64>,
    pub q_mech: Option<f64>,
    pub crosstalk_prefactor: f64,
    pub n_resonators: u32,
    pub n_range: Option<RangeSpec>,
    pub hardware: Option<HardwareSpec>,
    /// Free-form annotations, ignored by every command.
    #[serde(default)]
    pub notes: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RangeSpec {
    pub min: u32,
    pub max: u32,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HardwareSpec {
    pub q_eff_c: f64,
    pub coupler_capacitance_f: f64,
    pub min_anharmonicity_hz: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeChoice {
    /// Resonator loss from the file, or `Q_mech = 1e9` if absent.
    Mechanical,
    /// Resonators as lossy as the qubit.
    Microwave,
    /// Rates exactly as given; the file must specify the resonator loss.
    Custom,
}

impl RegimeChoice {
    pub fn name(&self) -> &'static str {
        match self {
            RegimeChoice::Mechanical => "mechanical",
            RegimeChoice::Microwave => "microwave",
            RegimeChoice::Custom => "custom",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseChoice {
    Rect,
    Cosine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Optimize,
    Volume,
    Feasibility,
    Simulate,
    Schedule,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub params: PathBuf,
    pub out: PathBuf,
    /// `None` runs the mechanical and microwave regimes side by side.
    pub regime: Option<RegimeChoice>,
    pub n_min: Option<u32>,
    pub n_max: Option<u32>,
    /// `None` runs both shapes.
    pub pulse: Option<PulseChoice>,
}

impl RunConfig {
    pub fn regimes(&self) -> Vec<RegimeChoice> {
        match self.regime {
            Some(r) => vec![r],
            None => vec![RegimeChoice::Mechanical, RegimeChoice::Microwave],
        }
    }

    /// Command-line bounds override the file's, which override `2..=500`.
    pub fn n_range(&self, file: &ParamFile) -> Result<NRange> {
        let default = file
            .n_range
            .map(|r| (r.min, r.max))
            .unwrap_or((NRange::default().min, NRange::default().max));
        let min = self.n_min.unwrap_or(default.0);
        let max = self.n_max.unwrap_or(default.1);
        NRange::new(min, max).map_err(|e| DesignerError::Config(format!("N range: {e}")))
    }
}

impl ParamFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|source| DesignerError::ReadParams {
            path: path.to_path_buf(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|source| DesignerError::ParseParams {
            path: path.to_path_buf(),
            source,
        })
    }

    pub fn omega0(&self) -> f64 {
        hz_to_angular(self.omega0_hz)
    }

    pub fn gamma_q(&self) -> Result<f64> {
        match (self.gamma_q_per_s, self.qubit_t1_s) {
            (Some(g), None) => Ok(g),
            (None, Some(t1)) if t1 > 0.0 => Ok(1.0 / t1),
            (None, Some(t1)) => Err(config(format!("qubit_t1_s must be positive, got {t1}"))),
            (Some(_), Some(_)) => Err(config("give gamma_q_per_s or qubit_t1_s, not both")),
            (None, None) => Err(config("missing qubit loss: gamma_q_per_s or qubit_t1_s")),
        }
    }

    /// Resonator loss rate if the file specifies one.
    pub fn gamma_r(&self) -> Result<Option<f64>> {
        match (self.gamma_r_per_s, self.q_mech) {
            (Some(g), None) => Ok(Some(g)),
            (None, Some(q)) if q > 0.0 => Ok(Some(self.omega0() / q)),
            (None, Some(q)) => Err(config(format!("q_mech must be positive, got {q}"))),
            (Some(_), Some(_)) => Err(config("give gamma_r_per_s or q_mech, not both")),
            (None, None) => Ok(None),
        }
    }

    pub fn system(&self, regime: RegimeChoice) -> Result<SystemParams> {
        let gamma_q = self.gamma_q()?;
        let gamma_r = match regime {
            RegimeChoice::Mechanical => self.gamma_r()?.unwrap_or(self.omega0() / DEFAULT_Q_MECH),
            RegimeChoice::Microwave => gamma_q,
            RegimeChoice::Custom => self
                .gamma_r()?
                .ok_or_else(|| config("custom regime needs gamma_r_per_s or q_mech"))?,
        };
        SystemParams::new(
            self.omega0(),
            gamma_q,
            gamma_r,
            self.crosstalk_prefactor,
            self.n_resonators,
        )
        .map_err(|e| config(e.to_string()))
    }

    pub fn hardware(&self) -> Result<HardwareProfile> {
        let profile = match self.hardware {
            Some(h) => HardwareProfile::new(
                h.q_eff_c,
                h.coupler_capacitance_f,
                hz_to_angular(h.min_anharmonicity_hz),
                self.omega0(),
            ),
            None => HardwareProfile::reference(self.omega0()),
        };
        profile.map_err(|e| config(format!("hardware: {e}")))
    }
}

fn config(msg: impl Into<String>) -> DesignerError {
    DesignerError::Config(msg.into())
}
