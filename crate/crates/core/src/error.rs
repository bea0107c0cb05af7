use thiserror::Error;

pub type Result<T> = core::result::Result<T, CoreError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoreError {
    /// A scalar input is outside the domain of the formula it feeds.
    #[error("{name} out of domain: {value:e} ({requirement})")]
    Domain {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("at least {min} resonators required, got {got}")]
    TooFewResonators { min: u32, got: u32 },

    #[error("both decoherence rates are zero; the optimal coupling is undefined")]
    NoDecoherence,

    #[error("no balance point N = d(N) in [{n_min}, {n_max}]")]
    NoBalancePoint { n_min: f64, n_max: f64 },

    #[error("empty N range [{n_min}, {n_max}]")]
    EmptyRange { n_min: u32, n_max: u32 },

    #[error("resonator {index} out of range for {n_resonators} resonators")]
    ResonatorOutOfRange { index: usize, n_resonators: u32 },

    #[error("resonator {index} appears in more than one pair")]
    OverlappingPairs { index: usize },

    #[error("invalid mode set: {0}")]
    InvalidModeSet(&'static str),

    #[error("state dimension {got} does not match mode set dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("input state is not normalized (norm^2 = {norm_sqr})")]
    NotNormalized { norm_sqr: f64 },

    #[error("integrator did not reach tolerance {tolerance:e}: error estimate {estimate:e} at {steps} steps")]
    ToleranceNotMet { tolerance: f64, estimate: f64, steps: u64 },

    #[error("hardware profile omega0 {profile:e} differs from system omega0 {system:e}")]
    FrequencyMismatch { profile: f64, system: f64 },
}

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(CoreError::Domain {
            name,
            value,
            requirement: "must be finite and > 0",
        })
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(CoreError::Domain {
            name,
            value,
            requirement: "must be finite and >= 0",
        })
    }
}
