//! File formats and command implementations for the `designer` tool.
//!
//! Parameter files are JSON ([`config::ParamFile`]); curves are written as CSV
//! with units in every column name, scalar reports as pretty-printed JSON.
//! Output is byte-for-byte reproducible for a given configuration.

pub mod commands;
pub mod config;
pub mod error;

pub use commands::{execute, render, Artifact, Outcome};
pub use config::{Command, ParamFile, PulseChoice, RegimeChoice, RunConfig};
pub use error::{DesignerError, Result};
