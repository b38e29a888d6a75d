//! Parabolic (Krawtchouk) chain regimes.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::cyclic::resonance_from_atoms;
use super::{
    diagonal_block, large_detuning_constants, large_hopping_blocks, phase, regime_tolerance, Block, Dispersion,
    FidelityCurve, KernelMatrix, RegimeKind,
};
use crate::krawtchouk::MAX_ORDER;
use crate::specfun::double_double::{ComplexDd, DoubleDouble};
use crate::specfun::{binomial_u128, hyp2f1_coefficients_dd};
use crate::topology::ModeBasis;
use crate::{ChainParams, Error, Result, Topology, UNITARITY_TOL};

/// Which exponent the parabolic kernel keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParabolicMode {
    /// `Ω̂_ℓ − g²/Δ̂_ℓ` (photon) and `ε + g²/Δ̂_ℓ` (atom).
    Full,
    /// `Ω̂_ℓ` and `ε`.
    DispersionFree,
    /// Stark shifts expanded to first order in `κ/δ`.
    LargeDetuning,
}

fn require_parabolic(params: &ChainParams) -> Result<()> {
    if params.topology() != Topology::LinearParabolic {
        return Err(Error::Topology {
            required: Topology::LinearParabolic.name(),
        });
    }
    Ok(())
}

pub(super) fn blocks(params: &ChainParams, basis: &ModeBasis, mode: ParabolicMode, t: f64) -> Result<Vec<Block>> {
    match mode {
        ParabolicMode::Full => large_hopping_blocks(params, basis, t),
        ParabolicMode::DispersionFree => Ok(basis
            .mode_freqs()
            .iter()
            .map(|&w| diagonal_block(phase(-w * t), phase(-params.atom_freq() * t)))
            .collect()),
        ParabolicMode::LargeDetuning => super::large_detuning_blocks(params, t),
    }
}

/// Spectral-sum kernels `𝒦(j,k) = Σ_ℓ 𝖴_{jℓ} 𝖴_{kℓ} e^{−iE_ℓ t}`.
pub fn parabolic_kernel(params: &ChainParams, t: f64, mode: ParabolicMode) -> Result<KernelMatrix> {
    require_parabolic(params)?;
    let basis = ModeBasis::new(params)?;
    let blocks = blocks(params, &basis, mode, t)?;
    Ok(KernelMatrix::from_blocks(&basis, &blocks, t))
}

/// `f_{j,k} = Σ_ℓ 𝖴_{jℓ} 𝖴_{kℓ} zˡ` in closed form:
/// `2^{−(N−1)} √(C(N−1,j) C(N−1,k)) (1−z)^{j+k} (1+z)^{N−1−j−k}
///  ₂F₁(−j, −k; −(N−1); −4z/(1−z)²)`.
///
/// Multiplying the series through by `(1−z)^{j+k}` leaves the finite sum
/// `Σ_s c_s (−4z)^s (1−z)^{j+k−2s}`, so `z = 1` needs no special branch.
/// When `j + k > N − 1` the mirror pair `(N−1−j, N−1−k)` is used instead,
/// which has the same `f` and a nonnegative `(1+z)` exponent. The sum is
/// accumulated in double-double arithmetic because its terms cancel
/// heavily.
pub fn parabolic_closed_form_f(j: usize, k: usize, n: usize, z: Complex64) -> Result<Complex64> {
    if n == 0 || n - 1 > MAX_ORDER {
        return Err(Error::Overflow {
            order: n.saturating_sub(1),
            max: MAX_ORDER,
        });
    }
    if j >= n || k >= n {
        return Err(Error::Domain(format!("indices ({j}, {k}) out of range for N = {n}")));
    }
    let top = n - 1;
    let (j, k) = if j + k > top { (top - j, top - k) } else { (j, k) };
    let zd = ComplexDd::from_complex(z);
    let one = ComplexDd::ONE;
    let one_minus = one - zd;
    let minus_4z = zd.scale(DoubleDouble::from_f64(-4.0));
    let coeffs = hyp2f1_coefficients_dd(j, k, n);

    let mut minus_pows = vec![one; j + k + 1];
    for p in 1..=j + k {
        minus_pows[p] = minus_pows[p - 1] * one_minus;
    }
    let mut sum = ComplexDd::default();
    let mut z_pow = one;
    for (s, c) in coeffs.iter().enumerate() {
        sum = sum + (z_pow * minus_pows[j + k - 2 * s]).scale(*c);
        z_pow = z_pow * minus_4z;
    }
    let binomials = DoubleDouble::from_u128(binomial_u128(top, j) * binomial_u128(top, k));
    let prefactor = binomials.sqrt().scale_pow2(-(top as i32));
    let plus = (one + zd).powu(top - j - k);
    Ok((sum * plus).scale(prefactor).to_complex())
}

/// Closed-form kernels for the modes whose exponent is linear in the mode
/// index: `𝒦 = e^{−i(c + s(N−1))t} f(z)` with `z = e^{2ist}`.
pub fn parabolic_kernel_closed_form(params: &ChainParams, t: f64, mode: ParabolicMode) -> Result<KernelMatrix> {
    require_parabolic(params)?;
    let n = params.n_cavities();
    let (photon, atom) = match mode {
        ParabolicMode::Full => {
            return Err(Error::Precondition(
                "the full parabolic kernel has no hypergeometric closed form".into(),
            ))
        }
        ParabolicMode::DispersionFree => ((params.cavity_freq(), params.hopping()), (params.atom_freq(), 0.0)),
        ParabolicMode::LargeDetuning => {
            let c = large_detuning_constants(params)?;
            ((c.photon_offset, c.photon_slope), (c.atom_offset, c.atom_slope))
        }
    };
    let kernel = |(offset, slope): (f64, f64)| -> Result<DMatrix<Complex64>> {
        let prefactor = phase(-(offset + slope * (n as f64 - 1.0)) * t);
        let z = phase(2.0 * slope * t);
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            for k in j..n {
                let v = prefactor * parabolic_closed_form_f(j, k, n, z)?;
                m[(j, k)] = v;
                m[(k, j)] = v;
            }
        }
        Ok(m)
    };
    Ok(KernelMatrix {
        k_a: kernel(photon)?,
        k_b: kernel(atom)?,
        time: t,
    })
}

/// Outcome of scanning `|𝖺_{N−1}(t)|` for a photon starting in cavity 0.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub curve: FidelityCurve,
    /// Slack allowed above 1.
    pub tolerance: f64,
    pub bound_holds: bool,
    /// Peak within `UNITARITY_TOL`-scale distance of 1.
    pub reaches_unity: bool,
    /// Peak below `1 − 1e−4`.
    pub strictly_below: bool,
    pub worst_ratio: f64,
}

const UNITY_SLACK: f64 = 1e-9;
const STRICT_DEFICIT: f64 = 1e-4;

/// End-to-end photon transfer under the large-hopping kernel, checked
/// against `|𝖺_{N−1}(t)| ≤ Σ_ℓ 𝖴_{0ℓ}² = 1`.
pub fn parabolic_transfer_bound_check(params: &ChainParams, t_grid: &[f64]) -> Result<BoundReport> {
    require_parabolic(params)?;
    let basis = ModeBasis::new(params)?;
    let n = params.n_cavities();
    let u = basis.transform();
    let worst_ratio = basis
        .detunings()
        .iter()
        .map(|&d| if params.coupling() == 0.0 { 0.0 } else { params.coupling() / d.abs() })
        .fold(0.0, f64::max);
    let weights: Vec<f64> = (0..n).map(|l| u[(n - 1, l)].re * u[(0, l)].re).collect();
    let values = t_grid
        .iter()
        .map(|&t| {
            let b = large_hopping_blocks(params, &basis, t)?;
            Ok(weights
                .iter()
                .zip(&b)
                .map(|(w, blk)| blk[0][0] * *w)
                .sum::<Complex64>()
                .norm())
        })
        .collect::<Result<Vec<_>>>()?;
    let curve = FidelityCurve::from_values(t_grid.to_vec(), values);
    let tolerance = regime_tolerance(worst_ratio).max(UNITARITY_TOL);
    let peak = curve.peak_value;
    Ok(BoundReport {
        bound_holds: curve.values.iter().all(|&v| v <= 1.0 + tolerance),
        reaches_unity: (peak - 1.0).abs() < UNITY_SLACK,
        strictly_below: peak < 1.0 - STRICT_DEFICIT,
        tolerance,
        worst_ratio,
        curve,
    })
}

/// Resonance of the atoms with parabolic mode `ℓ`, for atomic initial data.
pub fn resonance_parabolic(
    params: &ChainParams,
    ell: usize,
    t: f64,
    atom0: &[Complex64],
    dispersion: Dispersion,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    require_parabolic(params)?;
    resonance_from_atoms(params, RegimeKind::ParabolicResonance { ell }, t, atom0, dispersion)
}
