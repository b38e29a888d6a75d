//! Exact single-excitation dynamics.
//!
//! The state `Σ 𝖺_j |G⟩|1_j⟩ + 𝖻_j |e_j⟩|0⟩` is carried as two length-N
//! amplitude vectors. In the delocalized basis the Hamiltonian splits into
//! 2×2 blocks `[[Ω_j, g], [g, ε]]` acting on `(α_j, β_j)`, which are
//! propagated in closed form.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use crate::topology::{coupling_matrix, ModeBasis};
use crate::{ChainParams, Error, Result, Topology, NORM_TOL};

/// Largest chain accepted by the dense oracle.
pub const ORACLE_MAX_N: usize = 512;

const SINC_SERIES_BELOW: f64 = 1e-6;

/// Localized amplitudes `(𝖺_j, 𝖻_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleExcitationState {
    photon: DVector<Complex64>,
    atom: DVector<Complex64>,
    normalized: bool,
}

fn check_site(n: usize, site: usize) -> Result<()> {
    if n < 1 || site >= n {
        return Err(Error::InvalidParams(format!(
            "site {site} out of range for {n} cavities"
        )));
    }
    Ok(())
}

impl SingleExcitationState {
    /// Atom at `site` excited, everything else in the ground state.
    pub fn atom_excitation_at(n: usize, site: usize) -> Result<Self> {
        check_site(n, site)?;
        let mut atom = DVector::zeros(n);
        atom[site] = Complex64::new(1.0, 0.0);
        Ok(Self::from_parts(DVector::zeros(n), atom))
    }

    /// One photon in cavity `site`.
    pub fn photon_excitation_at(n: usize, site: usize) -> Result<Self> {
        check_site(n, site)?;
        let mut photon = DVector::zeros(n);
        photon[site] = Complex64::new(1.0, 0.0);
        Ok(Self::from_parts(photon, DVector::zeros(n)))
    }

    /// Raw amplitudes. With `normalize` the state is rescaled to unit norm;
    /// otherwise it is kept as given and [`is_normalized`](Self::is_normalized)
    /// reports whether it happens to be normalized.
    pub fn from_amplitudes(photon: Vec<Complex64>, atom: Vec<Complex64>, normalize: bool) -> Result<Self> {
        if photon.len() != atom.len() {
            return Err(Error::DimensionMismatch {
                expected: photon.len(),
                found: atom.len(),
            });
        }
        if photon.is_empty() {
            return Err(Error::InvalidParams("empty amplitude vectors".into()));
        }
        if photon.iter().chain(&atom).any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidParams("amplitudes must be finite".into()));
        }
        let mut state = Self::from_parts(DVector::from_vec(photon), DVector::from_vec(atom));
        if normalize {
            let norm = state.norm();
            if norm == 0.0 {
                return Err(Error::InvalidParams("cannot normalize the zero state".into()));
            }
            state.photon /= Complex64::new(norm, 0.0);
            state.atom /= Complex64::new(norm, 0.0);
            state.normalized = true;
        }
        Ok(state)
    }

    pub(crate) fn from_parts(photon: DVector<Complex64>, atom: DVector<Complex64>) -> Self {
        let norm2 = photon.norm_squared() + atom.norm_squared();
        Self {
            photon,
            atom,
            normalized: (norm2.sqrt() - 1.0).abs() < NORM_TOL,
        }
    }

    /// Stacked `[𝖺; 𝖻]`, length 2N.
    pub fn from_stacked(v: &DVector<Complex64>) -> Self {
        let n = v.len() / 2;
        Self::from_parts(v.rows(0, n).into_owned(), v.rows(n, n).into_owned())
    }

    pub fn stacked(&self) -> DVector<Complex64> {
        let n = self.n_cavities();
        DVector::from_fn(2 * n, |i, _| if i < n { self.photon[i] } else { self.atom[i - n] })
    }

    pub fn photon(&self) -> &DVector<Complex64> {
        &self.photon
    }

    pub fn atom(&self) -> &DVector<Complex64> {
        &self.atom
    }

    pub fn n_cavities(&self) -> usize {
        self.photon.len()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn norm(&self) -> f64 {
        (self.photon.norm_squared() + self.atom.norm_squared()).sqrt()
    }

    pub fn photon_populations(&self) -> Vec<f64> {
        self.photon.iter().map(|z| z.norm_sqr()).collect()
    }

    pub fn atom_populations(&self) -> Vec<f64> {
        self.atom.iter().map(|z| z.norm_sqr()).collect()
    }

    /// Entrywise sup-norm distance over all 2N amplitudes.
    pub fn max_deviation(&self, other: &Self) -> f64 {
        self.photon
            .iter()
            .zip(other.photon.iter())
            .chain(self.atom.iter().zip(other.atom.iter()))
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Delocalized amplitudes `(α_j, β_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DelocalizedState {
    pub photon_modes: DVector<Complex64>,
    pub atom_modes: DVector<Complex64>,
}

impl DelocalizedState {
    pub fn norm(&self) -> f64 {
        (self.photon_modes.norm_squared() + self.atom_modes.norm_squared()).sqrt()
    }
}

fn check_dim(basis: &ModeBasis, n: usize) -> Result<()> {
    if basis.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: n,
        });
    }
    Ok(())
}

pub fn to_delocalized(state: &SingleExcitationState, basis: &ModeBasis) -> Result<DelocalizedState> {
    check_dim(basis, state.n_cavities())?;
    let w = basis.transform();
    Ok(DelocalizedState {
        photon_modes: w * &state.photon,
        atom_modes: w * &state.atom,
    })
}

pub fn from_delocalized(state: &DelocalizedState, basis: &ModeBasis) -> Result<SingleExcitationState> {
    check_dim(basis, state.photon_modes.len())?;
    check_dim(basis, state.atom_modes.len())?;
    let w_adj = basis.transform().adjoint();
    Ok(SingleExcitationState::from_parts(
        &w_adj * &state.photon_modes,
        &w_adj * &state.atom_modes,
    ))
}

/// Spectral data of one 2×2 block `[[Ω_j, g], [g, ε]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeBlock {
    pub mode_freq: f64,
    pub detuning: f64,
    pub chi: f64,
    pub omega_plus: f64,
    pub omega_minus: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BlockEigensystem {
    pub atom_freq: f64,
    pub coupling: f64,
    pub blocks: Vec<ModeBlock>,
}

pub fn block_eigensystem(params: &ChainParams, basis: &ModeBasis) -> BlockEigensystem {
    let g = params.coupling();
    let eps = params.atom_freq();
    let blocks = basis
        .mode_freqs()
        .iter()
        .zip(basis.detunings())
        .map(|(&mode_freq, &detuning)| {
            let chi = (0.25 * detuning * detuning + g * g).sqrt();
            let centre = 0.5 * (mode_freq + eps);
            ModeBlock {
                mode_freq,
                detuning,
                chi,
                omega_plus: centre + chi,
                omega_minus: centre - chi,
            }
        })
        .collect();
    BlockEigensystem {
        atom_freq: eps,
        coupling: g,
        blocks,
    }
}

/// `sin(χt)/χ`, continuous through `χ = 0`.
pub fn sin_over(chi: f64, t: f64) -> f64 {
    let x = chi * t;
    if x.abs() < SINC_SERIES_BELOW {
        t * (1.0 - x * x / 6.0)
    } else {
        x.sin() / chi
    }
}

/// Propagator `e^{−iH_j t}` of one block, rows/columns ordered (photon, atom).
pub fn block_propagator(block: &ModeBlock, coupling: f64, t: f64) -> [[Complex64; 2]; 2] {
    let phase = Complex64::from_polar(1.0, -0.5 * (block.omega_plus + block.omega_minus) * t);
    let c = (block.chi * t).cos();
    let s = sin_over(block.chi, t);
    let half = 0.5 * block.detuning * s;
    let off = phase * Complex64::new(0.0, -coupling * s);
    [
        [phase * Complex64::new(c, half), off],
        [off, phase * Complex64::new(c, -half)],
    ]
}

pub fn evolve_delocalized(state: &DelocalizedState, system: &BlockEigensystem, t: f64) -> DelocalizedState {
    let n = system.blocks.len();
    let mut alpha = DVector::zeros(n);
    let mut beta = DVector::zeros(n);
    for (j, block) in system.blocks.iter().enumerate() {
        let u = block_propagator(block, system.coupling, t);
        let (a, b) = (state.photon_modes[j], state.atom_modes[j]);
        alpha[j] = u[0][0] * a + u[0][1] * b;
        beta[j] = u[1][0] * a + u[1][1] * b;
    }
    DelocalizedState {
        photon_modes: alpha,
        atom_modes: beta,
    }
}

/// Exact evolution by time `t` (negative `t` runs backwards).
pub fn evolve_exact(
    state: &SingleExcitationState,
    t: f64,
    params: &ChainParams,
    basis: &ModeBasis,
) -> Result<SingleExcitationState> {
    let system = block_eigensystem(params, basis);
    let modes = to_delocalized(state, basis)?;
    from_delocalized(&evolve_delocalized(&modes, &system, t), basis)
}

/// The 2N×2N exact propagator in the localized basis, ordered `[𝖺; 𝖻]`.
pub fn exact_propagator(params: &ChainParams, basis: &ModeBasis, t: f64) -> DMatrix<Complex64> {
    let system = block_eigensystem(params, basis);
    let blocks: Vec<_> = system
        .blocks
        .iter()
        .map(|b| block_propagator(b, system.coupling, t))
        .collect();
    assemble_mode_map(basis, &blocks)
}

/// Localized 2N×2N matrix of a map that acts on each mode pair
/// `(α_j, β_j)` by the 2×2 matrix `blocks[j]`.
pub fn assemble_mode_map(basis: &ModeBasis, blocks: &[[[Complex64; 2]; 2]]) -> DMatrix<Complex64> {
    let n = basis.dim();
    let w = basis.transform();
    let w_adj = w.adjoint();
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for (row, col) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        let diag = DVector::from_iterator(n, blocks.iter().map(|b| b[row][col]));
        let block = &w_adj * DMatrix::from_diagonal(&diag) * w;
        out.view_mut((row * n, col * n), (n, n)).copy_from(&block);
    }
    out
}

/// Real symmetric single-excitation Hamiltonian over
/// `{|G⟩|1_0⟩ … |G⟩|1_{N−1}⟩, |e_0⟩|0⟩ … |e_{N−1}⟩|0⟩}`.
pub fn single_excitation_hamiltonian(params: &ChainParams) -> DMatrix<f64> {
    let n = params.n_cavities();
    let c = coupling_matrix(params).into_inner();
    let mut h = DMatrix::zeros(2 * n, 2 * n);
    for j in 0..n {
        h[(j, j)] = params.cavity_freq();
        h[(n + j, n + j)] = params.atom_freq();
        h[(j, n + j)] = params.coupling();
        h[(n + j, j)] = params.coupling();
        for k in 0..n {
            if j != k {
                h[(j, k)] = params.hopping() * c[(j, k)];
            }
        }
    }
    h
}

/// Dense eigendecomposition of the single-excitation Hamiltonian, reusable
/// across times.
#[derive(Clone, Debug)]
pub struct DenseOracle {
    eigen: SymmetricEigen<f64, nalgebra::Dyn>,
}

impl DenseOracle {
    pub fn new(params: &ChainParams) -> Result<Self> {
        let n = params.n_cavities();
        if n > ORACLE_MAX_N {
            return Err(Error::InvalidParams(format!(
                "dense oracle supports at most {ORACLE_MAX_N} cavities, got {n}"
            )));
        }
        Ok(Self {
            eigen: SymmetricEigen::new(single_excitation_hamiltonian(params)),
        })
    }

    pub fn propagator(&self, t: f64) -> DMatrix<Complex64> {
        let v = self.eigen.eigenvectors.map(|x| Complex64::new(x, 0.0));
        let phases = DVector::from_iterator(
            v.nrows(),
            self.eigen.eigenvalues.iter().map(|&e| Complex64::from_polar(1.0, -e * t)),
        );
        &v * DMatrix::from_diagonal(&phases) * v.transpose()
    }

    pub fn evolve(&self, state: &SingleExcitationState, t: f64) -> Result<SingleExcitationState> {
        let dim = self.eigen.eigenvalues.len();
        if dim != 2 * state.n_cavities() {
            return Err(Error::DimensionMismatch {
                expected: dim / 2,
                found: state.n_cavities(),
            });
        }
        let v = &self.eigen.eigenvectors;
        let psi = state.stacked();
        let coeffs = DVector::from_iterator(
            dim,
            (0..dim).map(|m| {
                let overlap: Complex64 = (0..dim).map(|i| psi[i] * v[(i, m)]).sum();
                overlap * Complex64::from_polar(1.0, -self.eigen.eigenvalues[m] * t)
            }),
        );
        let out = DVector::from_fn(dim, |i, _| (0..dim).map(|m| coeffs[m] * v[(i, m)]).sum());
        Ok(SingleExcitationState::from_stacked(&out))
    }
}

/// Brute-force evolution by dense eigendecomposition.
pub fn dense_oracle_evolve(
    state: &SingleExcitationState,
    t: f64,
    params: &ChainParams,
) -> Result<SingleExcitationState> {
    DenseOracle::new(params)?.evolve(state, t)
}

/// Cyclic translation `τ^steps`: site `j` moves to `j + steps (mod N)`.
pub fn shift_apply(state: &SingleExcitationState, steps: i64, topology: Topology) -> Result<SingleExcitationState> {
    if topology != Topology::CyclicUniform {
        return Err(Error::Topology {
            required: Topology::CyclicUniform.name(),
        });
    }
    let n = state.n_cavities() as i64;
    let rotate = |v: &DVector<Complex64>| {
        DVector::from_fn(v.len(), |j, _| v[(j as i64 - steps).rem_euclid(n) as usize])
    };
    Ok(SingleExcitationState::from_parts(rotate(&state.photon), rotate(&state.atom)))
}
