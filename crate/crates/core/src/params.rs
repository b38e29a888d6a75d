use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Photon hopping geometry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Topology {
    /// Closed ring, uniform nearest-neighbour hopping.
    CyclicUniform,
    /// Open chain with hopping `√(j(N−j))` between sites `j−1` and `j`.
    LinearParabolic,
}

impl Topology {
    pub fn name(self) -> &'static str {
        match self {
            Topology::CyclicUniform => "cyclic-uniform",
            Topology::LinearParabolic => "linear-parabolic",
        }
    }
}

/// Physical configuration of a cavity array.
///
/// All frequencies are angular frequencies in a common (arbitrary) unit;
/// times are measured in the reciprocal unit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChainParams {
    n_cavities: usize,
    atom_freq: f64,
    cavity_freq: f64,
    coupling: f64,
    hopping: f64,
    topology: Topology,
}

impl ChainParams {
    pub fn new(
        topology: Topology,
        n_cavities: usize,
        atom_freq: f64,
        cavity_freq: f64,
        coupling: f64,
        hopping: f64,
    ) -> Result<Self> {
        if n_cavities < 2 {
            return Err(Error::InvalidParams(format!(
                "need at least 2 cavities, got {n_cavities}"
            )));
        }
        for (name, v) in [
            ("atom_freq", atom_freq),
            ("cavity_freq", cavity_freq),
            ("coupling", coupling),
            ("hopping", hopping),
        ] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} is not finite: {v}")));
            }
        }
        if coupling < 0.0 {
            return Err(Error::InvalidParams(format!(
                "atom-photon coupling must be non-negative, got {coupling}"
            )));
        }
        Ok(Self {
            n_cavities,
            atom_freq,
            cavity_freq,
            coupling,
            hopping,
            topology,
        })
    }

    /// Builds parameters from the detuning `δ = ε − Ω` instead of `ε`.
    pub fn with_detuning(
        topology: Topology,
        n_cavities: usize,
        cavity_freq: f64,
        detuning: f64,
        coupling: f64,
        hopping: f64,
    ) -> Result<Self> {
        Self::new(
            topology,
            n_cavities,
            cavity_freq + detuning,
            cavity_freq,
            coupling,
            hopping,
        )
    }

    pub fn n_cavities(&self) -> usize {
        self.n_cavities
    }

    /// Atomic transition frequency `ε`.
    pub fn atom_freq(&self) -> f64 {
        self.atom_freq
    }

    /// Bare cavity frequency `Ω`.
    pub fn cavity_freq(&self) -> f64 {
        self.cavity_freq
    }

    /// Atom-photon coupling `g`.
    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    /// Photon hopping strength `κ`.
    pub fn hopping(&self) -> f64 {
        self.hopping
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    /// Atom-cavity detuning `δ = ε − Ω`.
    pub fn detuning(&self) -> f64 {
        self.atom_freq - self.cavity_freq
    }

    pub fn set_coupling(self, coupling: f64) -> Result<Self> {
        Self::new(
            self.topology,
            self.n_cavities,
            self.atom_freq,
            self.cavity_freq,
            coupling,
            self.hopping,
        )
    }

    pub fn set_hopping(self, hopping: f64) -> Result<Self> {
        Self::new(
            self.topology,
            self.n_cavities,
            self.atom_freq,
            self.cavity_freq,
            self.coupling,
            hopping,
        )
    }

    pub fn set_atom_freq(self, atom_freq: f64) -> Result<Self> {
        Self::new(
            self.topology,
            self.n_cavities,
            atom_freq,
            self.cavity_freq,
            self.coupling,
            self.hopping,
        )
    }
}
