//! Self-check suite behind `jch validate`.
//!
//! Each invariant returns a measured defect and the tolerance it must stay
//! under. Randomized draws come from a seeded ChaCha stream, so a run is
//! reproducible from its seed.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dynamics::{evolve_exact, shift_apply, DenseOracle, SingleExcitationState};
use crate::krawtchouk::{normalized_krawtchouk, normalized_krawtchouk_recurrence, parity_check_with_sign};
use crate::regimes::{
    linear_grid, parabolic_closed_form_f, parabolic_transfer_bound_check, regime_deviation, resonance_cyclic_degenerate,
    resonance_cyclic_nondegenerate, resonance_parabolic, validity_report, Dispersion, EvolutionPath, Propagator,
    RegimeKind, RegimeSpec,
};
use crate::specfun::{bessel_j, bessel_j_orders, hyp2f1_coefficients, hyp2f1_terminating};
use crate::topology::{dft_matrix, diagonalization_defect, identity_defect, krawtchouk_basis, ModeBasis};
use crate::{ChainParams, Error, Result, Topology, DIAG_TOL, NORM_TOL, ORACLE_TOL, UNITARITY_TOL};

/// Largest chain length covered by the basis suites.
pub const MAX_SUITE_N: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scope {
    Topology,
    Krawtchouk,
    Specfun,
    Dynamics,
    Regimes,
    Transfer,
}

impl Scope {
    pub const ALL: [Scope; 6] = [
        Scope::Topology,
        Scope::Krawtchouk,
        Scope::Specfun,
        Scope::Dynamics,
        Scope::Regimes,
        Scope::Transfer,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scope::Topology => "topology",
            Scope::Krawtchouk => "krawtchouk",
            Scope::Specfun => "specfun",
            Scope::Dynamics => "dynamics",
            Scope::Regimes => "regimes",
            Scope::Transfer => "transfer",
        }
    }
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scope::ALL
            .into_iter()
            .find(|scope| scope.name() == s)
            .ok_or_else(|| Error::InvalidParams(format!("unknown scope `{s}`")))
    }
}

/// Deliberate defects for mutation testing of the suite itself.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Flip the sign in the Krawtchouk mirror identity.
    ParitySign,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parity-sign" => Ok(Fault::ParitySign),
            _ => Err(Error::InvalidParams(format!("unknown fault `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ValidationOptions {
    pub scopes: Vec<Scope>,
    pub seed: u64,
    pub fault: Option<Fault>,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        Self {
            scopes: Scope::ALL.to_vec(),
            seed: 0,
            fault: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantOutcome {
    pub scope: Scope,
    pub name: &'static str,
    pub passed: bool,
    /// Measured defect; `None` when the check raised an error.
    pub defect: Option<f64>,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationSummary {
    pub seed: u64,
    pub scopes: Vec<Scope>,
    pub fault: Option<Fault>,
    pub passed: bool,
    pub n_invariants: usize,
    pub failed: Vec<String>,
    pub outcomes: Vec<InvariantOutcome>,
}

struct Check {
    scope: Scope,
    name: &'static str,
    tolerance: f64,
    run: fn(&mut Ctx) -> Result<(f64, String)>,
}

struct Ctx {
    rng: ChaCha8Rng,
    fault: Option<Fault>,
}

const CHECKS: &[Check] = &[
    Check {
        scope: Scope::Topology,
        name: "dft-unitarity",
        tolerance: UNITARITY_TOL,
        run: dft_unitarity,
    },
    Check {
        scope: Scope::Topology,
        name: "krawtchouk-orthogonality",
        tolerance: DIAG_TOL,
        run: krawtchouk_orthogonality,
    },
    Check {
        scope: Scope::Topology,
        name: "hopping-diagonalization",
        tolerance: DIAG_TOL,
        run: hopping_diagonalization,
    },
    Check {
        scope: Scope::Topology,
        name: "cyclic-degeneracy",
        tolerance: 0.0,
        run: cyclic_degeneracy,
    },
    Check {
        scope: Scope::Krawtchouk,
        name: "parity",
        tolerance: 0.0,
        run: parity,
    },
    Check {
        scope: Scope::Krawtchouk,
        name: "recurrence-agreement",
        tolerance: 1e-12,
        run: recurrence_agreement,
    },
    Check {
        scope: Scope::Specfun,
        name: "bessel-normalization",
        tolerance: 1e-13,
        run: bessel_normalization,
    },
    Check {
        scope: Scope::Specfun,
        name: "bessel-reference-values",
        tolerance: 1e-13,
        run: bessel_reference_values,
    },
    Check {
        scope: Scope::Specfun,
        name: "hypergeometric-series",
        tolerance: 1e-12,
        run: hypergeometric_series,
    },
    Check {
        scope: Scope::Dynamics,
        name: "oracle-equivalence",
        tolerance: ORACLE_TOL,
        run: oracle_equivalence,
    },
    Check {
        scope: Scope::Dynamics,
        name: "norm-preservation",
        tolerance: NORM_TOL,
        run: norm_preservation,
    },
    Check {
        scope: Scope::Dynamics,
        name: "translation-invariance",
        tolerance: 1e-10,
        run: translation_invariance,
    },
    Check {
        scope: Scope::Regimes,
        name: "closed-form-identity",
        tolerance: 1e-10,
        run: closed_form_identity,
    },
    Check {
        scope: Scope::Regimes,
        name: "sector-conservation",
        tolerance: 1e-12,
        run: sector_conservation,
    },
    Check {
        scope: Scope::Regimes,
        name: "regime-tolerance",
        tolerance: 1.0,
        run: regime_windows,
    },
    Check {
        scope: Scope::Transfer,
        name: "parabolic-perfect-transfer",
        tolerance: 1e-9,
        run: parabolic_perfect_transfer,
    },
    Check {
        scope: Scope::Transfer,
        name: "binomial-profile",
        tolerance: 1e-10,
        run: binomial_profile,
    },
    Check {
        scope: Scope::Transfer,
        name: "resonant-transfer",
        tolerance: 1e-12,
        run: resonant_transfer,
    },
    Check {
        scope: Scope::Transfer,
        name: "transfer-bound",
        tolerance: 0.0,
        run: transfer_bound,
    },
];

/// Runs every invariant in the requested scopes, in a fixed order.
pub fn run_suite(options: &ValidationOptions) -> ValidationSummary {
    let mut scopes = options.scopes.clone();
    scopes.sort();
    scopes.dedup();
    let mut outcomes = Vec::new();
    for check in CHECKS.iter().filter(|c| scopes.contains(&c.scope)) {
        // each invariant draws from its own stream so scopes stay independent
        let salt = check.name.bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64));
        let mut ctx = Ctx {
            rng: ChaCha8Rng::seed_from_u64(options.seed ^ salt),
            fault: options.fault,
        };
        let outcome = match (check.run)(&mut ctx) {
            Ok((defect, detail)) => InvariantOutcome {
                scope: check.scope,
                name: check.name,
                passed: defect <= check.tolerance,
                defect: Some(defect),
                tolerance: check.tolerance,
                detail,
            },
            Err(e) => InvariantOutcome {
                scope: check.scope,
                name: check.name,
                passed: false,
                defect: None,
                tolerance: check.tolerance,
                detail: e.to_string(),
            },
        };
        outcomes.push(outcome);
    }
    let failed: Vec<String> = outcomes
        .iter()
        .filter(|o| !o.passed)
        .map(|o| format!("{}/{}", o.scope, o.name))
        .collect();
    ValidationSummary {
        seed: options.seed,
        scopes,
        fault: options.fault,
        passed: failed.is_empty(),
        n_invariants: outcomes.len(),
        failed,
        outcomes,
    }
}

fn params(topology: Topology, n: usize, delta: f64, g: f64, kappa: f64) -> Result<ChainParams> {
    ChainParams::with_detuning(topology, n, 1.0, delta, g, kappa)
}

fn random_state(rng: &mut ChaCha8Rng, n: usize) -> Result<SingleExcitationState> {
    let mut draw = || (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
    let photon = draw();
    let atom = draw();
    SingleExcitationState::from_amplitudes(photon, atom, true)
}

fn dft_unitarity(_: &mut Ctx) -> Result<(f64, String)> {
    let worst = (2..=MAX_SUITE_N)
        .map(|n| {
            let u = dft_matrix(n);
            identity_defect(&(u.adjoint() * &u))
        })
       .fold(0.0, f64::max);
    Ok((worst, format!("N = 2..={MAX_SUITE_N}")))
}

fn krawtchouk_orthogonality(_: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for n in 2..=MAX_SUITE_N {
        let u = krawtchouk_basis(n)?;
        worst = worst.max((u.transpose() * &u - nalgebra::DMatrix::identity(n, n)).amax());
    }
    Ok((worst, format!("Gram error, N = 2..={MAX_SUITE_N}")))
}

fn hopping_diagonalization(_: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for topology in [Topology::CyclicUniform, Topology::LinearParabolic] {
        for n in 2..=MAX_SUITE_N {
            let p = params(topology, n, 0.3, 0.1, 1.0)?;
            worst = worst.max(diagonalization_defect(&p, &ModeBasis::new(&p)?));
        }
    }
    Ok((worst, "both topologies".into()))
}

fn cyclic_degeneracy(_: &mut Ctx) -> Result<(f64, String)> {
    let mut mismatches = 0;
    for n in 2..=MAX_SUITE_N {
        let basis = ModeBasis::new(&params(Topology::CyclicUniform, n, 0.3, 0.1, 1.7)?)?;
        let w = basis.mode_freqs();
        mismatches += (1..n).filter(|&j| w[j] != w[n - j]).count();
    }
    Ok((mismatches as f64, "Ω_j = Ω_{N−j} bitwise".into()))
}

fn parity(ctx: &mut Ctx) -> Result<(f64, String)> {
    let flip = if ctx.fault == Some(Fault::ParitySign) { -1.0 } else { 1.0 };
    let mut violations = 0;
    for order in 1..=24 {
        for l in 0..=order {
            for j in 0..=order {
                if !parity_check_with_sign(l, j, order, flip)? {
                    violations += 1;
                }
            }
        }
    }
    Ok((violations as f64, "mirror identities, order 1..=24".into()))
}

fn recurrence_agreement(_: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for order in [1, 2, 5, 12, 31, 48] {
        for x in 0..=order {
            let values = normalized_krawtchouk_recurrence(x, order)?;
            for (n, v) in values.iter().enumerate() {
                worst = worst.max((v - normalized_krawtchouk(n, x, 0.5, order)?).abs());
            }
        }
    }
    Ok((worst, "degree recurrence vs exact series".into()))
}

fn bessel_normalization(_: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for x in [0.0, 0.5, 3.0, 17.5, 60.0, 140.0] {
        let j = bessel_j_orders(200, x)?;
        let squares = j[0] * j[0] + 2.0 * j[1..].iter().map(|v| v * v).sum::<f64>();
        worst = worst.max((squares - 1.0).abs());
    }
    Ok((worst, "J_0² + 2ΣJ_n² = 1".into()))
}

fn bessel_reference_values(_: &mut Ctx) -> Result<(f64, String)> {
    const TABLE: [(i64, f64, f64); 5] = [
        (0, 1.0, 0.765_197_686_557_966_55),
        (1, 1.0, 0.440_050_585_744_933_52),
        (2, 10.0, 0.254_630_313_685_120_62),
        (5, 2.5, 0.019_501_625_134_503_22),
        (-3, 4.0, -0.430_171_473_875_621_94),
    ];
    let mut worst = 0.0f64;
    for (n, x, v) in TABLE {
        worst = worst.max((bessel_j(n, x)? - v).abs());
    }
    Ok((worst, "tabulated J_n(x)".into()))
}

fn hypergeometric_series(ctx: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for _ in 0..64 {
        let n = ctx.rng.random_range(2..=16);
        let (j, k) = (ctx.rng.random_range(0..n), ctx.rng.random_range(0..n));
        let x = Complex64::new(ctx.rng.random_range(-1.0..1.0), ctx.rng.random_range(-1.0..1.0));
        let coeffs = hyp2f1_coefficients(j, k, n)?;
        let direct: Complex64 = coeffs.iter().enumerate().map(|(s, c)| x.powu(s as u32) * c).sum();
        let horner = hyp2f1_terminating(j, k, n, x)?;
        worst = worst.max((direct - horner).norm() / direct.norm().max(1.0));
    }
    Ok((worst, "Horner vs power sum".into()))
}

fn oracle_equivalence(ctx: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for topology in [Topology::CyclicUniform, Topology::LinearParabolic] {
        for n in [2, 3, 4, 5, 8, 16] {
            for _ in 0..10 {
                let p = params(
                    topology,
                    n,
                    ctx.rng.random_range(-5.0..5.0),
                    ctx.rng.random_range(0.0..3.0),
                    ctx.rng.random_range(0.0..3.0),
                )?;
                let s = random_state(&mut ctx.rng, n)?;
                let t = ctx.rng.random_range(0.0..10.0);
                let exact = evolve_exact(&s, t, &p, &ModeBasis::new(&p)?)?;
                worst = worst.max(exact.max_deviation(&DenseOracle::new(&p)?.evolve(&s, t)?));
            }
        }
    }
    Ok((worst, "block evolution vs dense eigendecomposition".into()))
}

fn norm_preservation(ctx: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for topology in [Topology::CyclicUniform, Topology::LinearParabolic] {
        for n in [2, 7, 32] {
            let p = params(topology, n, 0.7, 1.3, 2.1)?;
            let basis = ModeBasis::new(&p)?;
            let s = random_state(&mut ctx.rng, n)?;
            for t in [0.0, 1.0, 100.0, 1e4] {
                worst = worst.max((evolve_exact(&s, t, &p, &basis)?.norm() - 1.0).abs());
            }
        }
    }
    Ok((worst, "‖ψ(t)‖ = 1".into()))
}

fn translation_invariance(ctx: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for n in [3, 6, 11] {
        let p = params(Topology::CyclicUniform, n, 0.4, 0.9, 1.1)?;
        let basis = ModeBasis::new(&p)?;
        let s = random_state(&mut ctx.rng, n)?;
        let steps = ctx.rng.random_range(-20..20);
        let t = 3.7;
        let a = shift_apply(&evolve_exact(&s, t, &p, &basis)?, steps, Topology::CyclicUniform)?;
        let b = evolve_exact(&shift_apply(&s, steps, Topology::CyclicUniform)?, t, &p, &basis)?;
        worst = worst.max(a.max_deviation(&b));
    }
    Ok((worst, "shift commutes with evolution".into()))
}

fn closed_form_identity(ctx: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for n in [2, 5, 9, 16, 24, 32] {
        let u = krawtchouk_basis(n)?;
        for _ in 0..4 {
            let z = Complex64::from_polar(1.0, ctx.rng.random_range(0.0..2.0 * PI));
            for j in 0..n {
                for k in 0..n {
                    let spectral: Complex64 = (0..n).map(|l| z.powu(l as u32) * (u[(j, l)] * u[(k, l)])).sum();
                    worst = worst.max((parabolic_closed_form_f(j, k, n, z)? - spectral).norm());
                }
            }
        }
    }
    Ok((worst, "hypergeometric closed form vs spectral sum".into()))
}

fn sector_conservation(ctx: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    let cases = [
        (Topology::CyclicUniform, RegimeKind::LargeHopping, 20.0),
        (Topology::CyclicUniform, RegimeKind::LargeDetuning, 80.0),
        (Topology::LinearParabolic, RegimeKind::LargeHopping, 30.0),
        (Topology::LinearParabolic, RegimeKind::ParabolicLargeDetuning, 80.0),
    ];
    for (topology, kind, delta) in cases {
        let n = 9;
        let p = params(topology, n, delta, 0.5, 1.0)?;
        let prop = Propagator::new(&p, EvolutionPath::Regime(RegimeSpec::new(kind)))?;
        let s = random_state(&mut ctx.rng, n)?;
        let before = s.photon_populations().iter().sum::<f64>();
        for t in [0.5, 3.0, 9.0] {
            let out = prop.evolve(&s, t)?;
            worst = worst.max((out.photon_populations().iter().sum::<f64>() - before).abs());
        }
    }
    Ok((worst, "photon weight under large-hopping and large-detuning kernels".into()))
}

/// Deviation as a fraction of the regime tolerance; passes at ≤ 1.
fn regime_windows(_: &mut Ctx) -> Result<(f64, String)> {
    use RegimeKind::*;
    let cases: [(Topology, RegimeKind, usize, f64, f64, f64, f64); 5] = [
        (Topology::CyclicUniform, LargeHopping, 4, 50.0, 1.0, 50.0, 10.0),
        (Topology::CyclicUniform, ResonanceNondegenerate { ell: 0 }, 4, 50.0, 1.0, 25.0, 2.0 * PI),
        (Topology::CyclicUniform, ResonanceDegenerate { ell: 1 }, 4, 0.0, 1.0, 25.0, 2.0 * PI),
        (Topology::LinearParabolic, ParabolicResonance { ell: 1 }, 3, 0.0, 1.0, 25.0, 2.0 * PI),
        (Topology::LinearParabolic, ParabolicLargeDetuning, 6, 100.0, 1.0, 1.0, 4.0),
    ];
    let mut worst = 0.0f64;
    let mut detail = Vec::new();
    for (topology, kind, n, delta, g, kappa, t_end) in cases {
        let p = params(topology, n, delta, g, kappa)?;
        let spec = RegimeSpec::new(kind);
        let tol = validity_report(&spec, &p)?.tolerance;
        let dev = regime_deviation(&p, &spec, &linear_grid(0.0, t_end, 101))?;
        worst = worst.max(dev.same_sector / tol);
        detail.push(format!("{}: {:.3e}/{:.3e}", kind.name(), dev.same_sector, tol));
    }
    Ok((worst, detail.join("; ")))
}

fn parabolic_perfect_transfer(_: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for n in 2..=16 {
        let p = params(Topology::LinearParabolic, n, 0.0, 0.0, 1.3)?;
        let basis = ModeBasis::new(&p)?;
        let s = SingleExcitationState::photon_excitation_at(n, 0)?;
        for m in [1.0, 3.0] {
            let t = m * PI / (2.0 * p.hopping());
            worst = worst.max((evolve_exact(&s, t, &p, &basis)?.photon()[n - 1].norm() - 1.0).abs());
        }
    }
    Ok((worst, "|a_{N−1}| at π/2κ and 3π/2κ, N = 2..=16".into()))
}

fn binomial_profile(_: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    for n in [2, 5, 8, 16] {
        let kappa = 0.9;
        let p = params(Topology::LinearParabolic, n, 0.0, 0.0, kappa)?;
        let basis = ModeBasis::new(&p)?;
        let s = SingleExcitationState::photon_excitation_at(n, 0)?;
        for t in linear_grid(0.0, PI / kappa, 32) {
            let a = evolve_exact(&s, t, &p, &basis)?;
            for j in 0..n {
                let binom = crate::specfun::binomial_u128(n - 1, j) as f64;
                let expected = binom.sqrt() * (kappa * t).sin().abs().powi(j as i32) * (kappa * t).cos().abs().powi((n - 1 - j) as i32);
                worst = worst.max((a.photon()[j].norm() - expected).abs());
            }
        }
    }
    Ok((worst, "|a_j(t)| = √C(N−1,j) |sin κt|^j |cos κt|^{N−1−j}".into()))
}

fn resonant_transfer(_: &mut Ctx) -> Result<(f64, String)> {
    let mut worst = 0.0f64;
    let neglect = Dispersion::Neglected;
    let e0 = |n: usize| -> Vec<Complex64> { (0..n).map(|j| Complex64::new(if j == 0 { 1.0 } else { 0.0 }, 0.0)).collect() };
    let ring2 = params(Topology::CyclicUniform, 2, 1.0, 1.0, 1.0)?;
    worst = worst.max((resonance_cyclic_nondegenerate(&ring2, 0, PI, &e0(2), neglect)?.1[1].norm() - 1.0).abs());
    let ring4 = params(Topology::CyclicUniform, 4, 0.0, 1.0, 25.0)?;
    worst = worst.max((resonance_cyclic_degenerate(&ring4, 1, PI, &e0(4), neglect)?.1[2].norm() - 1.0).abs());
    let chain3 = params(Topology::LinearParabolic, 3, 0.0, 1.0, 25.0)?;
    worst = worst.max((resonance_parabolic(&chain3, 1, PI, &e0(3), neglect)?.1[2].norm() - 1.0).abs());
    Ok((worst, "resonance formulas reach unity at π/g".into()))
}

fn transfer_bound(ctx: &mut Ctx) -> Result<(f64, String)> {
    let mut violations = 0;
    for _ in 0..200 {
        let n = ctx.rng.random_range(2..=12);
        let p = params(
            Topology::LinearParabolic,
            n,
            ctx.rng.random_range(-1.0..1.0),
            ctx.rng.random_range(0.0..0.5),
            ctx.rng.random_range(5.0..30.0),
        )?;
        let grid: Vec<f64> = (0..16).map(|_| ctx.rng.random_range(0.0..10.0)).collect();
        if !parabolic_transfer_bound_check(&p, &grid)?.bound_holds {
            violations += 1;
        }
    }
    Ok((violations as f64, "|a_{N−1}| ≤ 1 over 200 random grids".into()))
}
