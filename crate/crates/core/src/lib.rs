//! Design analysis for a superconducting processor that uses a single transmon
//! to mediate gates between `N` phononic-crystal storage resonators.
//!
//! The crate is `no_std` (with `alloc`) and purely computational:
//!
//! - [`params`]: physical parameters, constants and timing relations.
//! - [`error_model`]: per-qubit error probability, optimal coupling, Purcell corrections.
//! - [`volume`]: circuit depth and quantum volume.
//! - [`feasibility`]: coupling ceiling and qubit capacitance constraints.
//! - [`dynamics`]: single-excitation multimode evolution for cross-talk checks.
//! - [`protocol`]: sequential gate timeline and residency-weighted decoherence.
//!
//! All frequencies are angular (rad/s) inside the crate; use
//! [`params::hz_to_angular`] at the boundary.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod dynamics;
pub mod error;
pub mod error_model;
pub mod feasibility;
mod math;
pub mod params;
pub mod protocol;
pub mod volume;

pub use error::{CoreError, Result};
pub use params::{PhysicalConstants, SystemParams, CONSTANTS};
