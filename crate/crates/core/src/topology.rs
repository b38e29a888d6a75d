//! Hopping geometries, their diagonalizing transforms and the delocalized
//! photon-mode spectra.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::krawtchouk::{self, MAX_ORDER};
use crate::{ChainParams, Error, Result, Topology};

/// Dimensionless hopping adjacency `C`; the physical hopping term is `κ·C`.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingMatrix(DMatrix<f64>);

impl CouplingMatrix {
    pub fn entries(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

/// Adjacency for `params`' topology and size.
pub fn coupling_matrix(params: &ChainParams) -> CouplingMatrix {
    coupling_matrix_for(params.topology(), params.n_cavities())
}

pub fn coupling_matrix_for(topology: Topology, n: usize) -> CouplingMatrix {
    let mut c = DMatrix::zeros(n, n);
    match topology {
        Topology::CyclicUniform => {
            for j in 0..n {
                let k = (j + 1) % n;
                if j != k {
                    // at N = 2 the wrap edge is the same single edge
                    c[(j, k)] = 1.0;
                    c[(k, j)] = 1.0;
                }
            }
        }
        Topology::LinearParabolic => {
            for j in 1..n {
                let w = ((j * (n - j)) as f64).sqrt();
                c[(j, j - 1)] = w;
                c[(j - 1, j)] = w;
            }
        }
    }
    CouplingMatrix(c)
}

/// `U_{jk} = ω^{jk}/√N` with `ω = e^{2πi/N}`.
pub fn dft_matrix(n: usize) -> DMatrix<Complex64> {
    let scale = 1.0 / (n as f64).sqrt();
    DMatrix::from_fn(n, n, |j, k| {
        // reduce the exponent first so large jk keeps full accuracy
        let angle = 2.0 * PI * ((j * k) % n) as f64 / n as f64;
        Complex64::from_polar(scale, angle)
    })
}

fn basis_cache() -> &'static Mutex<HashMap<usize, Arc<DMatrix<f64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<DMatrix<f64>>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `𝖴_{jk} = K̃_k(j; 1/2, N−1)`, real symmetric orthogonal.
pub fn krawtchouk_basis(n: usize) -> Result<DMatrix<f64>> {
    Ok(krawtchouk_basis_shared(n)?.as_ref().clone())
}

pub(crate) fn krawtchouk_basis_shared(n: usize) -> Result<Arc<DMatrix<f64>>> {
    if n < 1 {
        return Err(Error::InvalidParams("basis size must be positive".into()));
    }
    let order = n - 1;
    if order > MAX_ORDER {
        return Err(Error::Overflow {
            order,
            max: MAX_ORDER,
        });
    }
    if let Some(u) = basis_cache().lock().expect("cache lock").get(&n) {
        return Ok(Arc::clone(u));
    }
    let mut u = DMatrix::zeros(n, n);
    for j in 0..n {
        for k in j..n {
            let v = krawtchouk::normalized_krawtchouk(k, j, 0.5, order)?;
            u[(j, k)] = v;
            u[(k, j)] = v;
        }
    }
    let u = Arc::new(u);
    basis_cache()
        .lock()
        .expect("cache lock")
        .insert(n, Arc::clone(&u));
    Ok(u)
}

/// Eigenvalue of `C` carried by each mode, in mode order.
pub fn hopping_spectrum(topology: Topology, n: usize) -> Vec<f64> {
    match topology {
        Topology::CyclicUniform if n == 2 => vec![1.0, -1.0],
        Topology::CyclicUniform => (0..n)
            .map(|j| {
                // min(j, N−j) makes Ω_j and Ω_{N−j} the same float
                let r = j.min(n - j);
                2.0 * (2.0 * PI * r as f64 / n as f64).cos()
            })
            .collect(),
        Topology::LinearParabolic => (0..n).map(|j| (n as f64 - 1.0) - 2.0 * j as f64).collect(),
    }
}

/// Mode frequencies `Ω_j = Ω + κλ_j` and detunings `Δ_j = ε − Ω_j`.
pub fn mode_frequencies(params: &ChainParams) -> (Vec<f64>, Vec<f64>) {
    let freqs: Vec<f64> = hopping_spectrum(params.topology(), params.n_cavities())
        .into_iter()
        .map(|lambda| params.cavity_freq() + params.hopping() * lambda)
        .collect();
    let detunings = freqs.iter().map(|w| params.atom_freq() - w).collect();
    (freqs, detunings)
}

/// Diagonalizing transform plus the per-mode spectrum.
///
/// Rows of `transform` index modes, columns index sites, so delocalized
/// amplitudes are `transform · localized`.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeBasis {
    transform: DMatrix<Complex64>,
    mode_freqs: Vec<f64>,
    detunings: Vec<f64>,
    topology: Topology,
}

impl ModeBasis {
    pub fn new(params: &ChainParams) -> Result<Self> {
        let n = params.n_cavities();
        let transform = match params.topology() {
            Topology::CyclicUniform => dft_matrix(n),
            Topology::LinearParabolic => krawtchouk_basis_shared(n)?.map(|v| Complex64::new(v, 0.0)),
        };
        let (mode_freqs, detunings) = mode_frequencies(params);
        Ok(Self {
            transform,
            mode_freqs,
            detunings,
            topology: params.topology(),
        })
    }

    pub fn transform(&self) -> &DMatrix<Complex64> {
        &self.transform
    }

    pub fn mode_freqs(&self) -> &[f64] {
        &self.mode_freqs
    }

    pub fn detunings(&self) -> &[f64] {
        &self.detunings
    }

    pub fn topology(&self) -> Topology {
        self.topology
    }

    pub fn dim(&self) -> usize {
        self.mode_freqs.len()
    }
}

/// `max |A − I|` entrywise for a square complex matrix.
pub fn identity_defect(a: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0_f64;
    for j in 0..a.nrows() {
        for k in 0..a.ncols() {
            let target = if j == k { 1.0 } else { 0.0 };
            worst = worst.max((a[(j, k)] - target).norm());
        }
    }
    worst
}

/// `max |W (κC) W† − diag(Ω_j − Ω)|` for a basis built from `params`.
pub fn diagonalization_defect(params: &ChainParams, basis: &ModeBasis) -> f64 {
    let c = coupling_matrix(params)
        .into_inner()
        .map(|v| Complex64::new(v * params.hopping(), 0.0));
    let w = basis.transform();
    let d = w * c * w.adjoint();
    let mut worst = 0.0_f64;
    for j in 0..d.nrows() {
        for k in 0..d.ncols() {
            let target = if j == k {
                basis.mode_freqs()[j] - params.cavity_freq()
            } else {
                0.0
            };
            worst = worst.max((d[(j, k)] - target).norm());
        }
    }
    worst
}
