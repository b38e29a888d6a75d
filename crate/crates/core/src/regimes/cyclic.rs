//! Ring (uniform hopping) regimes.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::{
    check_detuning, large_detuning_constants, large_hopping_blocks, phase, resonance_blocks, Dispersion,
    KernelMatrix, RegimeKind,
};
use crate::dynamics::{from_delocalized, to_delocalized, DelocalizedState, SingleExcitationState};
use crate::specfun::{bessel_j_orders, BESSEL_MAX_ORDER};
use crate::topology::ModeBasis;
use crate::{ChainParams, Error, Result, Topology};

/// Two consecutive ν-shells below this end the Bessel sum.
const SHELL_TOL: f64 = 1e-14;

fn require_cyclic(params: &ChainParams) -> Result<()> {
    if params.topology() != Topology::CyclicUniform {
        return Err(Error::Topology {
            required: Topology::CyclicUniform.name(),
        });
    }
    Ok(())
}

/// Large-hopping kernels
/// `𝒦_𝖺(j,k) = (1/N) Σ_ℓ ω^{−ℓ(j−k)} e^{−i(Ω_ℓ − g²/Δ_ℓ)t}` and
/// `𝒦_𝖻(j,k) = (1/N) Σ_ℓ ω^{−ℓ(j−k)} e^{−i(ε + g²/Δ_ℓ)t}`.
pub fn kernel_large_hopping_cyclic(params: &ChainParams, t: f64) -> Result<KernelMatrix> {
    require_cyclic(params)?;
    let basis = ModeBasis::new(params)?;
    let blocks = large_hopping_blocks(params, &basis, t)?;
    Ok(KernelMatrix::from_blocks(&basis, &blocks, t))
}

/// `G(j) = (1/N) Σ_k ω^{−jk} / Δ_k`.
pub fn green_propagator(params: &ChainParams) -> Result<Vec<Complex64>> {
    require_cyclic(params)?;
    let basis = ModeBasis::new(params)?;
    let n = params.n_cavities();
    for (k, &d) in basis.detunings().iter().enumerate() {
        check_detuning(k, d)?;
    }
    Ok((0..n)
        .map(|j| {
            basis
                .detunings()
                .iter()
                .enumerate()
                .map(|(k, &d)| phase(-2.0 * std::f64::consts::PI * ((j * k) % n) as f64 / n as f64) / d)
                .sum::<Complex64>()
                / n as f64
        })
        .collect())
}

/// `Σ_ν (−i)^{j+νN} J_{j+νN}(x)` for every `j`, i.e. the site amplitudes of
/// `(1/N) Σ_m ω^{−mj} e^{−ix cos(2πm/N)}`.
fn bessel_wrap(n: usize, x: f64) -> Result<Vec<Complex64>> {
    let table = bessel_j_orders(BESSEL_MAX_ORDER, x.abs())?;
    let term = |order: i64| -> Complex64 {
        let m = order.unsigned_abs() as usize;
        let mut value = table[m];
        // J_{−m} = (−1)^m J_m and J_m(−x) = (−1)^m J_m(x)
        if m % 2 == 1 && ((order < 0) != (x < 0.0)) {
            value = -value;
        }
        let i_pow = match order.rem_euclid(4) {
            0 => Complex64::new(1.0, 0.0),
            1 => Complex64::new(0.0, -1.0),
            2 => Complex64::new(-1.0, 0.0),
            _ => Complex64::new(0.0, 1.0),
        };
        i_pow * value
    };
    let max = BESSEL_MAX_ORDER as i64;
    let tail_negligible = x.abs() < BESSEL_MAX_ORDER as f64 / 2.0 && table[BESSEL_MAX_ORDER].abs() < SHELL_TOL * 1e-3;
    let n_i = n as i64;
    (0..n_i)
        .map(|j| {
            let mut sum = term(j);
            let mut quiet = 0;
            let mut nu = 1;
            while quiet < 2 {
                let (up, down) = (j + nu * n_i, j - nu * n_i);
                if up.abs() > max || down.abs() > max {
                    // past the turning point |J_n(x)| decays faster than
                    // geometrically, so a negligible last entry bounds the tail
                    if tail_negligible {
                        break;
                    }
                    return Err(Error::Truncation {
                        max_order: BESSEL_MAX_ORDER,
                    });
                }
                let shell = term(up) + term(down);
                sum += shell;
                quiet = if shell.norm() < SHELL_TOL { quiet + 1 } else { 0 };
                nu += 1;
            }
            Ok(sum)
        })
        .collect()
}

fn hopping_scale(n: usize) -> f64 {
    // eigenvalues of C are 2cos(2πm/N), except the single-edge N = 2 ring
    if n == 2 {
        1.0
    } else {
        2.0
    }
}

/// Photon amplitudes `𝖺_j(t)` for a photon initially in cavity 0:
/// `e^{−i(Ω − g²/δ)t} Σ_ν (−i)^{j+νN} J_{j+νN}(2κ(1 − g²/δ²)t)`; `𝖻_j(t) = 0`.
pub fn kernel_large_detuning_cyclic(params: &ChainParams, t: f64) -> Result<Vec<Complex64>> {
    require_cyclic(params)?;
    let c = large_detuning_constants(params)?;
    let n = params.n_cavities();
    let prefactor = phase(-c.photon_offset * t);
    Ok(bessel_wrap(n, hopping_scale(n) * c.photon_slope * t)?
        .into_iter()
        .map(|a| prefactor * a)
        .collect())
}

/// Circulant photon and atom kernels of the large-detuning limit, both in
/// Bessel form.
pub fn kernel_large_detuning_cyclic_matrix(params: &ChainParams, t: f64) -> Result<KernelMatrix> {
    require_cyclic(params)?;
    let c = large_detuning_constants(params)?;
    let n = params.n_cavities();
    let scale = hopping_scale(n);
    let circulant = |offset: f64, slope: f64| -> Result<DMatrix<Complex64>> {
        let prefactor = phase(-offset * t);
        let column = bessel_wrap(n, scale * slope * t)?;
        Ok(DMatrix::from_fn(n, n, |j, k| prefactor * column[(j + n - k) % n]))
    };
    Ok(KernelMatrix {
        k_a: circulant(c.photon_offset, c.photon_slope)?,
        k_b: circulant(c.atom_offset, c.atom_slope)?,
        time: t,
    })
}

pub(super) fn resonance_from_atoms(
    params: &ChainParams,
    kind: RegimeKind,
    t: f64,
    atom0: &[Complex64],
    dispersion: Dispersion,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    let n = params.n_cavities();
    if atom0.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: atom0.len(),
        });
    }
    let basis = ModeBasis::new(params)?;
    let blocks = resonance_blocks(params, &basis, &kind, dispersion, t)?;
    let zero = vec![Complex64::new(0.0, 0.0); n];
    let initial = SingleExcitationState::from_amplitudes(zero, atom0.to_vec(), false)?;
    let modes = to_delocalized(&initial, &basis)?;
    let evolved = DelocalizedState {
        photon_modes: modes
            .atom_modes
            .iter()
            .zip(&blocks)
            .map(|(b, m)| m[0][1] * b)
            .collect::<Vec<_>>()
            .into(),
        atom_modes: modes
            .atom_modes
            .iter()
            .zip(&blocks)
            .map(|(b, m)| m[1][1] * b)
            .collect::<Vec<_>>()
            .into(),
    };
    let out = from_delocalized(&evolved, &basis)?;
    Ok((out.photon().iter().copied().collect(), out.atom().iter().copied().collect()))
}

/// Resonance with a nondegenerate ring mode `ℓ ∈ {0, N/2}`, for atomic
/// initial data. Returns `(𝖺(t), 𝖻(t))`.
pub fn resonance_cyclic_nondegenerate(
    params: &ChainParams,
    ell: usize,
    t: f64,
    atom0: &[Complex64],
    dispersion: Dispersion,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    require_cyclic(params)?;
    resonance_from_atoms(params, RegimeKind::ResonanceNondegenerate { ell }, t, atom0, dispersion)
}

/// Resonance with the degenerate pair `{ℓ, N−ℓ}`, for atomic initial data.
pub fn resonance_cyclic_degenerate(
    params: &ChainParams,
    ell: usize,
    t: f64,
    atom0: &[Complex64],
    dispersion: Dispersion,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    require_cyclic(params)?;
    resonance_from_atoms(params, RegimeKind::ResonanceDegenerate { ell }, t, atom0, dispersion)
}
