//! Single-excitation quantum-state transfer through one-dimensional
//! Jaynes-Cummings-Hubbard cavity arrays.
//!
//! Each cavity holds one two-level atom (transition frequency `ε`) coupled
//! with strength `g` to a photon mode (frequency `Ω`); photons hop between
//! neighbouring cavities with strength `κ`. Two geometries are supported:
//! a closed ring with uniform hopping and an open chain whose hopping grows
//! parabolically along the chain (the Krawtchouk chain).
//!
//! In the single-excitation sector the dynamics splits into independent 2×2
//! blocks, one per delocalized photon mode. [`dynamics`] propagates those
//! blocks exactly and also provides a dense eigendecomposition oracle;
//! [`regimes`] implements the closed-form approximate propagators valid in
//! the large-hopping, large-detuning and resonant limits.

pub mod dynamics;
mod error;
pub mod krawtchouk;
mod params;
pub mod regimes;
pub mod specfun;
pub mod topology;
pub mod validation;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use params::{ChainParams, Topology};

/// Roundoff budget for unitarity checks of the mode bases.
pub const UNITARITY_TOL: f64 = 1e-12;
/// Roundoff budget for diagonalization checks of the hopping matrices.
pub const DIAG_TOL: f64 = 1e-10;
/// Norm preservation budget of exact evolution.
pub const NORM_TOL: f64 = 1e-12;
/// Agreement budget between block evolution and the dense oracle.
pub const ORACLE_TOL: f64 = 1e-9;
