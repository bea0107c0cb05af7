//! Coherent evolution of the qubit plus `M` resonator modes restricted to the
//! single-excitation subspace `{|e,vac>, |g,1_1>, ..., |g,1_M>}`.
//!
//! In the frame rotating at the qubit frequency the Hamiltonian is
//!
//! ```text
//! H(t) / hbar = sum_k Delta_k |g1_k><g1_k| + env(t) sum_k g_k (|e0><g1_k| + h.c.)
//! ```
//!
//! so a resonant mode with coupling `g` rotates `|g1> <-> |e0>` at rate `2g`.

mod crosstalk;
mod integrate;
mod modes;
mod pulse;
mod state;

pub use crosstalk::{crosstalk_experiment, two_level_rabi, CrosstalkOutcome};
pub use integrate::{default_step_count, evolve, evolve_fixed_steps, Evolution, IntegratorSettings};
pub use modes::ModeSet;
pub use pulse::{PulseEnvelope, PulseShape, RotationAngle, DEFAULT_RAMP_FRACTION};
pub use state::WaveState;

pub use num_complex::Complex64;
