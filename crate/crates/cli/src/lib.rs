//! Config-driven experiment runner for single-excitation transfer through
//! cavity arrays.
//!
//! `simulate` evolves a configured chain exactly or under one regime
//! approximation and writes CSV observables; `compare` measures a regime
//! against exact evolution; `validate` runs the library's invariant suite.
//! Data files are deterministic for a fixed config; timings live only in
//! `manifest.json`.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use commands::{compare, simulate, validate, RunOptions, RunReport};
pub use error::{exit, CliError, CliResult};
