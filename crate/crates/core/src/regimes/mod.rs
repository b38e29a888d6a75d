//! Closed-form approximate propagators for the limiting regimes, and the
//! machinery to compare them with exact evolution.
//!
//! Every regime except the cyclic large-detuning Bessel sum acts diagonally
//! on the delocalized mode pairs `(α_j, β_j)`, so it is described by one 2×2
//! matrix per mode ([`regime_mode_blocks`]) and assembled into a localized
//! 2N×2N map exactly like the exact propagator.

mod cyclic;
mod parabolic;

pub use cyclic::{
    green_propagator, kernel_large_detuning_cyclic, kernel_large_detuning_cyclic_matrix,
    kernel_large_hopping_cyclic, resonance_cyclic_degenerate, resonance_cyclic_nondegenerate,
};
pub use parabolic::{
    parabolic_closed_form_f, parabolic_kernel, parabolic_kernel_closed_form,
    parabolic_transfer_bound_check, resonance_parabolic, BoundReport, ParabolicMode,
};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{assemble_mode_map, exact_propagator, SingleExcitationState};
use crate::topology::{hopping_spectrum, ModeBasis};
use crate::{ChainParams, Error, Result, Topology};

/// Perturbative kernels refuse detunings smaller than this.
pub const DETUNING_FLOOR: f64 = 1e-9;
/// Prefactor `C` of the regime tolerance `C·r²`.
pub const REGIME_TOL_FACTOR: f64 = 20.0;

type Block = [[Complex64; 2]; 2];

/// Which approximation a regime propagator implements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RegimeKind {
    /// `g ≪ |Δ_j|` for every mode; either topology.
    LargeHopping,
    /// `δ ≫ κ, g` on the ring (Bessel-function kernel).
    LargeDetuning,
    ResonanceNondegenerate { ell: usize },
    ResonanceDegenerate { ell: usize },
    /// Parabolic chain with the atom-photon coupling dropped from the kernel.
    ParabolicDispersionFree,
    ParabolicLargeDetuning,
    ParabolicResonance { ell: usize },
}

/// Whether the `g²/Δ_n` Stark phases of the non-resonant modes are kept in
/// the resonance formulas.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dispersion {
    #[default]
    Retained,
    Neglected,
}

impl Dispersion {
    fn weight(self) -> f64 {
        match self {
            Dispersion::Retained => 1.0,
            Dispersion::Neglected => 0.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegimeSpec {
    #[serde(flatten)]
    pub kind: RegimeKind,
    pub dispersion: Dispersion,
}

impl RegimeSpec {
    pub fn new(kind: RegimeKind) -> Self {
        Self {
            kind,
            dispersion: Dispersion::Retained,
        }
    }

    pub fn with_dispersion(kind: RegimeKind, dispersion: Dispersion) -> Self {
        Self { kind, dispersion }
    }
}

impl RegimeKind {
    pub fn name(&self) -> &'static str {
        match self {
            RegimeKind::LargeHopping => "large-hopping",
            RegimeKind::LargeDetuning => "large-detuning",
            RegimeKind::ResonanceNondegenerate { .. } => "resonance-nondegenerate",
            RegimeKind::ResonanceDegenerate { .. } => "resonance-degenerate",
            RegimeKind::ParabolicDispersionFree => "parabolic-dispersion-free",
            RegimeKind::ParabolicLargeDetuning => "parabolic-large-detuning",
            RegimeKind::ParabolicResonance { .. } => "parabolic-resonance",
        }
    }

    /// Topology the formulas are written for; `None` if both apply.
    pub fn topology(&self) -> Option<Topology> {
        match self {
            RegimeKind::LargeHopping => None,
            RegimeKind::LargeDetuning
            | RegimeKind::ResonanceNondegenerate { .. }
            | RegimeKind::ResonanceDegenerate { .. } => Some(Topology::CyclicUniform),
            RegimeKind::ParabolicDispersionFree
            | RegimeKind::ParabolicLargeDetuning
            | RegimeKind::ParabolicResonance { .. } => Some(Topology::LinearParabolic),
        }
    }

    pub fn is_resonance(&self) -> bool {
        self.resonant_mode().is_some()
    }

    pub fn resonant_mode(&self) -> Option<usize> {
        match *self {
            RegimeKind::ResonanceNondegenerate { ell }
            | RegimeKind::ResonanceDegenerate { ell }
            | RegimeKind::ParabolicResonance { ell } => Some(ell),
            _ => None,
        }
    }
}

fn check_topology(kind: &RegimeKind, params: &ChainParams) -> Result<()> {
    match kind.topology() {
        Some(required) if required != params.topology() => Err(Error::Topology {
            required: required.name(),
        }),
        _ => Ok(()),
    }
}

/// One dimensionless quantity a regime assumes small.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidityRatio {
    pub name: &'static str,
    pub mode: Option<usize>,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidityReport {
    pub regime: &'static str,
    pub ratios: Vec<ValidityRatio>,
    pub worst: f64,
    pub tolerance: f64,
}

/// `C · r²` for the worst ratio `r`.
pub fn regime_tolerance(worst_ratio: f64) -> f64 {
    REGIME_TOL_FACTOR * worst_ratio * worst_ratio
}

fn ratio(num: f64, den: f64) -> f64 {
    if num == 0.0 {
        0.0
    } else {
        num.abs() / den.abs()
    }
}

/// Modes treated as resonant by a resonance regime.
fn resonant_set(kind: &RegimeKind, n: usize) -> Vec<usize> {
    match *kind {
        RegimeKind::ResonanceDegenerate { ell } => vec![ell, (n - ell) % n],
        RegimeKind::ResonanceNondegenerate { ell } | RegimeKind::ParabolicResonance { ell } => vec![ell],
        _ => Vec::new(),
    }
}

pub fn validity_report(spec: &RegimeSpec, params: &ChainParams) -> Result<ValidityReport> {
    check_topology(&spec.kind, params)?;
    let basis = ModeBasis::new(params)?;
    let g = params.coupling();
    let mut ratios = Vec::new();
    match spec.kind {
        RegimeKind::LargeHopping | RegimeKind::ParabolicDispersionFree => {
            for (j, &d) in basis.detunings().iter().enumerate() {
                ratios.push(ValidityRatio {
                    name: "g/|Delta_j|",
                    mode: Some(j),
                    value: ratio(g, d),
                });
            }
        }
        RegimeKind::LargeDetuning | RegimeKind::ParabolicLargeDetuning => {
            let delta = params.detuning();
            ratios.push(ValidityRatio {
                name: "kappa/|delta|",
                mode: None,
                value: ratio(params.hopping(), delta),
            });
            ratios.push(ValidityRatio {
                name: "g/|delta|",
                mode: None,
                value: ratio(g, delta),
            });
        }
        RegimeKind::ResonanceNondegenerate { ell }
        | RegimeKind::ResonanceDegenerate { ell }
        | RegimeKind::ParabolicResonance { ell } => {
            check_mode(ell, params.n_cavities())?;
            let resonant = resonant_set(&spec.kind, params.n_cavities());
            ratios.push(ValidityRatio {
                name: "|Delta_l|/g",
                mode: Some(ell),
                value: ratio(basis.detunings()[ell], g),
            });
            for (j, &d) in basis.detunings().iter().enumerate() {
                if !resonant.contains(&j) {
                    ratios.push(ValidityRatio {
                        name: "g/|Delta_n|",
                        mode: Some(j),
                        value: ratio(g, d),
                    });
                }
            }
        }
    }
    let worst = ratios.iter().map(|r| r.value).fold(0.0, f64::max);
    Ok(ValidityReport {
        regime: spec.kind.name(),
        ratios,
        worst,
        tolerance: regime_tolerance(worst),
    })
}

fn check_mode(ell: usize, n: usize) -> Result<()> {
    if ell >= n {
        return Err(Error::InvalidParams(format!(
            "resonant mode {ell} out of range for {n} modes"
        )));
    }
    Ok(())
}

pub(crate) fn check_detuning(mode: usize, detuning: f64) -> Result<()> {
    if !(detuning.abs() >= DETUNING_FLOOR) {
        return Err(Error::SingularDetuning {
            mode,
            detuning,
            floor: DETUNING_FLOOR,
        });
    }
    Ok(())
}

/// `g²/Δ`, which vanishes identically at `g = 0` whatever `Δ` is.
pub(crate) fn stark_shift(g: f64, mode: usize, detuning: f64) -> Result<f64> {
    if g == 0.0 {
        return Ok(0.0);
    }
    check_detuning(mode, detuning)?;
    Ok(g * g / detuning)
}

pub(crate) fn phase(angle: f64) -> Complex64 {
    Complex64::from_polar(1.0, angle)
}

fn diagonal_block(photon: Complex64, atom: Complex64) -> Block {
    let zero = Complex64::new(0.0, 0.0);
    [[photon, zero], [zero, atom]]
}

/// Same-sector 2×2 maps of the large-hopping limit,
/// `α → e^{−i(Ω_j − g²/Δ_j)t} α`, `β → e^{−i(ε + g²/Δ_j)t} β`.
pub(crate) fn large_hopping_blocks(params: &ChainParams, basis: &ModeBasis, t: f64) -> Result<Vec<Block>> {
    let g = params.coupling();
    let eps = params.atom_freq();
    basis
        .mode_freqs()
        .iter()
        .zip(basis.detunings())
        .enumerate()
        .map(|(j, (&w, &d))| {
            let shift = stark_shift(g, j, d)?;
            Ok(diagonal_block(phase(-(w - shift) * t), phase(-(eps + shift) * t)))
        })
        .collect()
}

pub(crate) fn check_large_detuning(params: &ChainParams) -> Result<()> {
    let delta = params.detuning();
    if params.coupling() != 0.0 && !(delta.abs() >= DETUNING_FLOOR) {
        return Err(Error::Precondition(format!(
            "large-detuning expansion needs |delta| >= {DETUNING_FLOOR:e}, got {delta:e}"
        )));
    }
    Ok(())
}

/// Mode energies of the large-detuning limit, `g²/Δ_m` expanded to first
/// order in `κ/δ`: photon `Ω − g²/δ + κ(1 − g²/δ²)λ_m`, atom
/// `ε + g²/δ + κ(g²/δ²)λ_m`, with `λ_m` the hopping eigenvalue.
pub(crate) struct LargeDetuningConstants {
    pub photon_offset: f64,
    pub photon_slope: f64,
    pub atom_offset: f64,
    pub atom_slope: f64,
}

pub(crate) fn large_detuning_constants(params: &ChainParams) -> Result<LargeDetuningConstants> {
    check_large_detuning(params)?;
    let g = params.coupling();
    let kappa = params.hopping();
    let (stark, ratio2) = if g == 0.0 {
        (0.0, 0.0)
    } else {
        let delta = params.detuning();
        (g * g / delta, (g / delta).powi(2))
    };
    Ok(LargeDetuningConstants {
        photon_offset: params.cavity_freq() - stark,
        photon_slope: kappa * (1.0 - ratio2),
        atom_offset: params.atom_freq() + stark,
        atom_slope: kappa * ratio2,
    })
}

pub(crate) fn large_detuning_blocks(params: &ChainParams, t: f64) -> Result<Vec<Block>> {
    let c = large_detuning_constants(params)?;
    Ok(hopping_spectrum(params.topology(), params.n_cavities())
        .into_iter()
        .map(|lambda| {
            diagonal_block(
                phase(-(c.photon_offset + c.photon_slope * lambda) * t),
                phase(-(c.atom_offset + c.atom_slope * lambda) * t),
            )
        })
        .collect())
}

/// Resonance maps: the resonant modes Rabi-oscillate at `g + Δ_ℓ²/8g`
/// around `ε − Δ_ℓ/2`; the others only pick up (optional) Stark phases.
pub(crate) fn resonance_blocks(
    params: &ChainParams,
    basis: &ModeBasis,
    kind: &RegimeKind,
    dispersion: Dispersion,
    t: f64,
) -> Result<Vec<Block>> {
    let n = params.n_cavities();
    let ell = kind.resonant_mode().expect("resonance regime");
    check_mode(ell, n)?;
    let g = params.coupling();
    if !(g > 0.0) {
        return Err(Error::Precondition(
            "resonance formulas need a positive atom-photon coupling".into(),
        ));
    }
    let degenerate = ell != (n - ell) % n;
    match kind {
        RegimeKind::ResonanceNondegenerate { .. } if degenerate => {
            return Err(Error::ModeDegeneracy {
                mode: ell,
                actual: "degenerate",
                required: "nondegenerate",
            })
        }
        RegimeKind::ResonanceDegenerate { .. } if !degenerate => {
            return Err(Error::ModeDegeneracy {
                mode: ell,
                actual: "nondegenerate",
                required: "degenerate",
            })
        }
        _ => {}
    }
    let resonant = resonant_set(kind, n);
    let eps = params.atom_freq();
    let d_ell = basis.detunings()[ell];
    let rabi = (g + d_ell * d_ell / (8.0 * g)) * t;
    let p = phase(-(eps - 0.5 * d_ell) * t);
    let (cos, sin) = (p * rabi.cos(), p * Complex64::new(0.0, -rabi.sin()));
    let weight = dispersion.weight();
    (0..n)
        .map(|m| {
            if resonant.contains(&m) {
                return Ok([[cos, sin], [sin, cos]]);
            }
            let shift = match dispersion {
                Dispersion::Retained => stark_shift(g, m, basis.detunings()[m])?,
                Dispersion::Neglected => 0.0,
            };
            let w = basis.mode_freqs()[m];
            Ok(diagonal_block(
                phase(-(w - weight * shift) * t),
                phase(-(eps + weight * shift) * t),
            ))
        })
        .collect()
}

/// Per-mode 2×2 maps of every mode-diagonal regime.
///
/// The cyclic large-detuning regime is printed as a Bessel sum; its mode
/// form here has the same energies, and the two agree to the truncation
/// tolerance of the sum.
pub fn regime_mode_blocks(spec: &RegimeSpec, params: &ChainParams, basis: &ModeBasis, t: f64) -> Result<Vec<Block>> {
    check_topology(&spec.kind, params)?;
    match spec.kind {
        RegimeKind::LargeHopping => large_hopping_blocks(params, basis, t),
        RegimeKind::LargeDetuning | RegimeKind::ParabolicLargeDetuning => large_detuning_blocks(params, t),
        RegimeKind::ParabolicDispersionFree => parabolic::blocks(params, basis, ParabolicMode::DispersionFree, t),
        RegimeKind::ResonanceNondegenerate { .. }
        | RegimeKind::ResonanceDegenerate { .. }
        | RegimeKind::ParabolicResonance { .. } => resonance_blocks(params, basis, &spec.kind, spec.dispersion, t),
    }
}

/// Photon and atom kernels of a sector-preserving propagator at time `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelMatrix {
    pub k_a: DMatrix<Complex64>,
    pub k_b: DMatrix<Complex64>,
    pub time: f64,
}

impl KernelMatrix {
    pub fn apply(&self, state: &SingleExcitationState) -> Result<SingleExcitationState> {
        let n = self.k_a.nrows();
        if state.n_cavities() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: state.n_cavities(),
            });
        }
        Ok(SingleExcitationState::from_parts(
            &self.k_a * state.photon(),
            &self.k_b * state.atom(),
        ))
    }

    /// Block-diagonal 2N×2N form.
    pub fn to_matrix(&self) -> DMatrix<Complex64> {
        let n = self.k_a.nrows();
        let mut out = DMatrix::zeros(2 * n, 2 * n);
        out.view_mut((0, 0), (n, n)).copy_from(&self.k_a);
        out.view_mut((n, n), (n, n)).copy_from(&self.k_b);
        out
    }

    pub(crate) fn from_blocks(basis: &ModeBasis, blocks: &[Block], time: f64) -> Self {
        let k_a = spectral_kernel(basis, blocks.iter().map(|b| b[0][0]));
        let k_b = spectral_kernel(basis, blocks.iter().map(|b| b[1][1]));
        Self { k_a, k_b, time }
    }
}

/// `W† diag(d) W`. On the ring the result is built from its first column so
/// it is circulant entry-for-entry.
pub(crate) fn spectral_kernel(basis: &ModeBasis, diag: impl Iterator<Item = Complex64>) -> DMatrix<Complex64> {
    let n = basis.dim();
    let d = DVector::from_iterator(n, diag);
    let w = basis.transform();
    match basis.topology() {
        Topology::CyclicUniform => {
            let column: Vec<Complex64> = (0..n)
                .map(|j| (0..n).map(|m| w[(m, j)].conj() * d[m] * w[(m, 0)]).sum())
                .collect();
            DMatrix::from_fn(n, n, |j, k| column[(j + n - k) % n])
        }
        Topology::LinearParabolic => w.adjoint() * DMatrix::from_diagonal(&d) * w,
    }
}

/// How a state is propagated: exactly, or by one regime's closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "path", rename_all = "kebab-case")]
pub enum EvolutionPath {
    Exact,
    Regime(RegimeSpec),
}

/// Linear single-excitation propagator for fixed parameters.
#[derive(Clone, Debug)]
pub struct Propagator {
    params: ChainParams,
    basis: ModeBasis,
    path: EvolutionPath,
}

impl Propagator {
    pub fn new(params: &ChainParams, path: EvolutionPath) -> Result<Self> {
        if let EvolutionPath::Regime(spec) = &path {
            check_topology(&spec.kind, params)?;
            // surface precondition failures before any time step
            let basis = ModeBasis::new(params)?;
            if spec.kind != RegimeKind::LargeDetuning {
                regime_mode_blocks(spec, params, &basis, 0.0)?;
            } else {
                check_large_detuning(params)?;
            }
        }
        Ok(Self {
            params: *params,
            basis: ModeBasis::new(params)?,
            path,
        })
    }

    pub fn params(&self) -> &ChainParams {
        &self.params
    }

    pub fn basis(&self) -> &ModeBasis {
        &self.basis
    }

    pub fn path(&self) -> EvolutionPath {
        self.path
    }

    /// Localized 2N×2N matrix, ordered `[𝖺; 𝖻]`.
    pub fn matrix(&self, t: f64) -> Result<DMatrix<Complex64>> {
        match &self.path {
            EvolutionPath::Exact => Ok(exact_propagator(&self.params, &self.basis, t)),
            EvolutionPath::Regime(spec) if spec.kind == RegimeKind::LargeDetuning => {
                Ok(kernel_large_detuning_cyclic_matrix(&self.params, t)?.to_matrix())
            }
            EvolutionPath::Regime(spec) => {
                let blocks = regime_mode_blocks(spec, &self.params, &self.basis, t)?;
                Ok(assemble_mode_map(&self.basis, &blocks))
            }
        }
    }

    /// Photon and atom kernels; only for paths without cross-sector terms.
    pub fn kernel(&self, t: f64) -> Result<KernelMatrix> {
        match &self.path {
            EvolutionPath::Regime(spec) if spec.kind == RegimeKind::LargeDetuning => {
                kernel_large_detuning_cyclic_matrix(&self.params, t)
            }
            EvolutionPath::Regime(spec) if !spec.kind.is_resonance() => {
                let blocks = regime_mode_blocks(spec, &self.params, &self.basis, t)?;
                Ok(KernelMatrix::from_blocks(&self.basis, &blocks, t))
            }
            _ => Err(Error::Precondition(
                "this evolution path couples the photon and atom sectors".into(),
            )),
        }
    }

    pub fn evolve(&self, state: &SingleExcitationState, t: f64) -> Result<SingleExcitationState> {
        let n = self.params.n_cavities();
        if state.n_cavities() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: state.n_cavities(),
            });
        }
        Ok(SingleExcitationState::from_stacked(&(self.matrix(t)? * state.stacked())))
    }
}

/// Which amplitude a transfer is measured on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Channel {
    Photon,
    Atom,
}

/// `|amplitude at target|` over a time grid for a unit excitation at source.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FidelityCurve {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub peak_index: usize,
    pub peak_time: f64,
    pub peak_value: f64,
}

impl FidelityCurve {
    pub(crate) fn from_values(times: Vec<f64>, values: Vec<f64>) -> Self {
        let mut peak_index = 0;
        for (i, &v) in values.iter().enumerate() {
            if v > values[peak_index] {
                peak_index = i;
            }
        }
        Self {
            peak_time: times.get(peak_index).copied().unwrap_or(f64::NAN),
            peak_value: values.get(peak_index).copied().unwrap_or(f64::NAN),
            times,
            values,
            peak_index,
        }
    }
}

pub fn transfer_fidelity(
    propagator: &Propagator,
    source: usize,
    target: usize,
    channel: Channel,
    t_grid: &[f64],
) -> Result<FidelityCurve> {
    let n = propagator.params().n_cavities();
    if source >= n || target >= n {
        return Err(Error::InvalidParams(format!(
            "sites {source} -> {target} out of range for {n} cavities"
        )));
    }
    let offset = match channel {
        Channel::Photon => 0,
        Channel::Atom => n,
    };
    let values = t_grid
        .iter()
        .map(|&t| Ok(propagator.matrix(t)?[(offset + target, offset + source)].norm()))
        .collect::<Result<Vec<_>>>()?;
    Ok(FidelityCurve::from_values(t_grid.to_vec(), values))
}

/// Sup-norm gap between a regime propagator and exact evolution.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Deviation {
    /// Over the blocks the regime formulas predict (photon→photon and
    /// atom→atom for kernels, atom→atom for resonances).
    pub same_sector: f64,
    /// Over the photon↔atom blocks; first order in the small ratios.
    pub leakage: f64,
    pub worst_time: f64,
}

fn block_max(diff: &DMatrix<Complex64>, n: usize, row: usize, col: usize) -> f64 {
    diff.view((row * n, col * n), (n, n))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Deviation of a regime propagator from exact evolution at one time.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DeviationSample {
    pub time: f64,
    pub same_sector: f64,
    pub leakage: f64,
}

/// `regime` must be built on a regime path; the exact path has zero gap.
pub fn deviation_at(regime: &Propagator, t: f64) -> Result<DeviationSample> {
    let params = regime.params();
    let n = params.n_cavities();
    let diff = regime.matrix(t)? - exact_propagator(params, regime.basis(), t);
    let bb = block_max(&diff, n, 1, 1);
    let resonance = matches!(regime.path(), EvolutionPath::Regime(spec) if spec.kind.is_resonance());
    let same_sector = if resonance { bb } else { bb.max(block_max(&diff, n, 0, 0)) };
    Ok(DeviationSample {
        time: t,
        same_sector,
        leakage: block_max(&diff, n, 0, 1).max(block_max(&diff, n, 1, 0)),
    })
}

pub fn regime_deviation(params: &ChainParams, spec: &RegimeSpec, t_grid: &[f64]) -> Result<Deviation> {
    let regime = Propagator::new(params, EvolutionPath::Regime(*spec))?;
    let mut out = Deviation {
        same_sector: 0.0,
        leakage: 0.0,
        worst_time: t_grid.first().copied().unwrap_or(0.0),
    };
    for &t in t_grid {
        let sample = deviation_at(&regime, t)?;
        if sample.same_sector > out.same_sector {
            out.same_sector = sample.same_sector;
            out.worst_time = t;
        }
        out.leakage = out.leakage.max(sample.leakage);
    }
    Ok(out)
}

/// Uniform grid of `n_points` times on `[start, end]`.
pub fn linear_grid(start: f64, end: f64, n_points: usize) -> Vec<f64> {
    match n_points {
        0 => Vec::new(),
        1 => vec![start],
        _ => (0..n_points)
            .map(|i| start + (end - start) * i as f64 / (n_points - 1) as f64)
            .collect(),
    }
}

/// Largest singular value.
pub fn operator_norm(m: &DMatrix<Complex64>) -> f64 {
    m.clone().singular_values().iter().copied().fold(0.0, f64::max)
}
