//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; the process fails if any criterion does.

use std::f64::consts::PI;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use jch_core::dynamics::{evolve_exact, DenseOracle, SingleExcitationState};
use jch_core::regimes::{
    kernel_large_detuning_cyclic, kernel_large_detuning_cyclic_matrix, kernel_large_hopping_cyclic, linear_grid,
    parabolic_closed_form_f, parabolic_kernel, parabolic_transfer_bound_check, regime_deviation,
    resonance_cyclic_degenerate, resonance_cyclic_nondegenerate, resonance_parabolic, validity_report, Dispersion,
    KernelMatrix, ParabolicMode, RegimeKind, RegimeSpec,
};
use jch_core::topology::{dft_matrix, diagonalization_defect, krawtchouk_basis, ModeBasis};
use jch_core::{ChainParams, Complex64, Topology};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORACLE_TOL: f64 = 1e-9;
const ORACLE_BUDGET: Duration = Duration::from_secs(30);
const TRANSFER_TOL: f64 = 1e-9;
const CLOSED_FORM_TOL: f64 = 1e-10;
const PROFILE_TOL: f64 = 1e-10;
const N2_DEFICIT: f64 = 1e-6;
const N2_RATIO_BOUND: f64 = 1e-3;
const FORMULA_TOL: f64 = 1e-12;
const DEGENERATE_EXACT_TOL: f64 = 5e-3;
const BESSEL_DEVIATION_TOL: f64 = 1e-3;
const ATOM_LEAK_TOL: f64 = 1e-3;
const SCALING_SLOPE: (f64, f64) = (-0.43, -0.23);
const SECTOR_TOL: f64 = 1e-12;
const BOUND_GRIDS: usize = 10_000;
const STRICT_DEFICIT: f64 = 1e-4;
const GRAM_TOL: f64 = 1e-10;
const CONVERGENCE_SLACK: f64 = 0.10;
const VALIDATE_BUDGET: Duration = Duration::from_secs(120);

type Verdict = (bool, String);

fn chain(topology: Topology, n: usize, delta: f64, g: f64, kappa: f64) -> ChainParams {
    ChainParams::with_detuning(topology, n, 1.0, delta, g, kappa).unwrap()
}

fn e0(n: usize) -> Vec<Complex64> {
    (0..n).map(|j| Complex64::new(if j == 0 { 1.0 } else { 0.0 }, 0.0)).collect()
}

fn exact(params: &ChainParams, state: &SingleExcitationState, t: f64) -> SingleExcitationState {
    evolve_exact(state, t, params, &ModeBasis::new(params).unwrap()).unwrap()
}

fn c01_oracle_equivalence() -> Verdict {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for topology in [Topology::CyclicUniform, Topology::LinearParabolic] {
        for n in [2, 3, 4, 5, 8, 16] {
            for _ in 0..50 {
                let params = ChainParams::new(
                    topology,
                    n,
                    rng.random_range(-3.0..3.0),
                    rng.random_range(-3.0..3.0),
                    rng.random_range(0.0..3.0),
                    rng.random_range(0.0..3.0),
                )
                .unwrap();
                let photon = (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
                let atom = (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
                let state = SingleExcitationState::from_amplitudes(photon, atom, true).unwrap();
                let t = rng.random_range(0.0..20.0);
                let oracle = DenseOracle::new(&params).unwrap().evolve(&state, t).unwrap();
                worst = worst.max(exact(&params, &state, t).max_deviation(&oracle));
            }
        }
    }
    let elapsed = start.elapsed();
    (
        worst < ORACLE_TOL && elapsed < ORACLE_BUDGET,
        format!("600 draws, max deviation {worst:.2e} (< {ORACLE_TOL:e}), {:.2} s", elapsed.as_secs_f64()),
    )
}

fn c02_parabolic_perfect_transfer() -> Verdict {
    let mut worst = 0.0f64;
    for n in 2..=16 {
        let params = chain(Topology::LinearParabolic, n, 0.0, 0.0, 1.0);
        let state = SingleExcitationState::photon_excitation_at(n, 0).unwrap();
        for m in [1.0, 3.0] {
            let a = exact(&params, &state, m * PI / 2.0).photon()[n - 1].norm();
            worst = worst.max((a - 1.0).abs());
        }
    }
    (worst < TRANSFER_TOL, format!("N = 2..=16 at pi/2k and 3pi/2k, max |1 - |a_(N-1)|| = {worst:.2e}"))
}

fn c03_closed_form_identity() -> Verdict {
    let mut worst = 0.0f64;
    let kappa = 1.0;
    for n in 2..=32 {
        let u = krawtchouk_basis(n).unwrap();
        for t in linear_grid(0.0, PI / kappa, 64) {
            let z = Complex64::from_polar(1.0, 2.0 * kappa * t);
            let powers: Vec<Complex64> = (0..n).map(|l| z.powu(l as u32)).collect();
            for j in 0..n {
                for k in 0..n {
                    let spectral: Complex64 = (0..n).map(|l| powers[l] * (u[(j, l)] * u[(k, l)])).sum();
                    worst = worst.max((parabolic_closed_form_f(j, k, n, z).unwrap() - spectral).norm());
                }
            }
        }
    }
    (worst < CLOSED_FORM_TOL, format!("N = 2..=32, 64 times, all (j, k): max error {worst:.2e}"))
}

fn c04_binomial_profile() -> Verdict {
    let mut worst = 0.0f64;
    let (omega, kappa) = (1.0, 0.7);
    for n in 2..=16 {
        let params = ChainParams::new(Topology::LinearParabolic, n, omega, omega, 0.0, kappa).unwrap();
        let state = SingleExcitationState::photon_excitation_at(n, 0).unwrap();
        for t in linear_grid(0.0, 2.0 * PI / kappa, 32) {
            let a = exact(&params, &state, t);
            for j in 0..n {
                let binom: f64 = (0..j).map(|i| (n - 1 - i) as f64 / (i + 1) as f64).product();
                let phase = Complex64::new(0.0, -1.0).powu(j as u32) * Complex64::from_polar(1.0, -omega * t);
                let formula = phase * binom.sqrt() * (kappa * t).sin().powi(j as i32) * (kappa * t).cos().powi((n - 1 - j) as i32);
                worst = worst.max((a.photon()[j] - formula).norm());
            }
        }
    }
    (worst < PROFILE_TOL, format!("N = 2..=16, 32 times, complex amplitudes: max error {worst:.2e}"))
}

fn c05_two_site_resonance() -> Verdict {
    // ring of two: modes 0 and 1 at Omega +- kappa; the atoms sit on mode 0, so
    // the off-resonant detuning is 2 kappa
    let g = 1.0;
    let mut lines = Vec::new();
    let mut exact_ok = true;
    for ratio in [N2_RATIO_BOUND, N2_RATIO_BOUND / 2.0, N2_RATIO_BOUND / 10.0] {
        let kappa = g / (2.0 * ratio);
        let params = chain(Topology::CyclicUniform, 2, kappa, g, kappa);
        let b1 = exact(&params, &SingleExcitationState::atom_excitation_at(2, 0).unwrap(), PI / g).atom()[1].norm();
        let ok = b1 > 1.0 - N2_DEFICIT;
        exact_ok &= ok;
        lines.push(format!("g/D_off={ratio:e}: 1-|b_1|={:.3e}{}", 1.0 - b1, if ok { "" } else { " (over)" }));
    }
    let params = chain(Topology::CyclicUniform, 2, 500.0, g, 500.0);
    let (_, b) = resonance_cyclic_nondegenerate(&params, 0, PI / g, &e0(2), Dispersion::Neglected).unwrap();
    let formula_ok = (b[1].norm() - 1.0).abs() < FORMULA_TOL;
    lines.push(format!("formula |b_1(pi/g)| = {}", b[1].norm()));
    (exact_ok && formula_ok, lines.join("; "))
}

fn c06_degenerate_resonance() -> Verdict {
    let g = 1.0;
    let params = chain(Topology::CyclicUniform, 4, 0.0, g, 25.0);
    let ratio = validity_report(&RegimeSpec::new(RegimeKind::ResonanceDegenerate { ell: 1 }), &params).unwrap().worst;
    let (_, b) = resonance_cyclic_degenerate(&params, 1, PI / g, &e0(4), Dispersion::Neglected).unwrap();
    let formula = b[2].norm();
    let exact_b2 = exact(&params, &SingleExcitationState::atom_excitation_at(4, 0).unwrap(), PI / g).atom()[2].norm();
    (
        (formula - 1.0).abs() < FORMULA_TOL && (exact_b2 - 1.0).abs() < DEGENERATE_EXACT_TOL && (ratio - 0.02).abs() < 1e-12,
        format!("ratio {ratio}, formula |b_2| = {formula}, exact |b_2| = {exact_b2:.6} (within {DEGENERATE_EXACT_TOL:e} of 1)"),
    )
}

fn c07_parabolic_resonance() -> Verdict {
    let g = 1.0;
    let params = chain(Topology::LinearParabolic, 3, 0.0, g, 25.0);
    let u01_sq = krawtchouk_basis(3).unwrap()[(0, 1)].powi(2);
    let (_, b) = resonance_parabolic(&params, 1, PI / g, &e0(3), Dispersion::Neglected).unwrap();
    let spec = RegimeSpec::new(RegimeKind::ParabolicResonance { ell: 1 });
    let report = validity_report(&spec, &params).unwrap();
    let dev = regime_deviation(&params, &spec, &linear_grid(0.0, 2.0 * PI / g, 201)).unwrap();
    let exact_b2 = exact(&params, &SingleExcitationState::atom_excitation_at(3, 0).unwrap(), PI / g).atom()[2].norm();
    let passed = (u01_sq - 0.5).abs() < 1e-15
        && (b[2].norm() - 1.0).abs() < FORMULA_TOL
        && dev.same_sector < report.tolerance
        && (exact_b2 - 1.0).abs() < report.tolerance;
    (
        passed,
        format!(
            "U01^2 = {u01_sq}, formula |b_2| = {}, exact |b_2| = {exact_b2:.6}, sup deviation {:.2e} < regime_tol {:.2e}",
            b[2].norm(),
            dev.same_sector,
            report.tolerance
        ),
    )
}

fn large_detuning_chain() -> (ChainParams, Vec<f64>) {
    let (kappa, delta, g) = (1.0, 100.0, 1.0);
    (chain(Topology::CyclicUniform, 12, delta, g, kappa), linear_grid(0.0, 4.0 / kappa, 81))
}

fn c08a_bessel_kernel() -> Verdict {
    let (params, grid) = large_detuning_chain();
    let photon0 = SingleExcitationState::photon_excitation_at(12, 0).unwrap();
    let mut worst = 0.0f64;
    for &t in &grid {
        let bessel = kernel_large_detuning_cyclic(&params, t).unwrap();
        let a = exact(&params, &photon0, t);
        for j in 0..12 {
            worst = worst.max((bessel[j] - a.photon()[j]).norm());
        }
    }
    (worst < BESSEL_DEVIATION_TOL, format!("N=12, d/k=100, g/d=0.01, t in [0, 4/k]: max |a_bessel - a_exact| = {worst:.2e}"))
}

fn c08b_atom_leakage() -> Verdict {
    let (params, grid) = large_detuning_chain();
    let photon0 = SingleExcitationState::photon_excitation_at(12, 0).unwrap();
    let worst = grid
        .iter()
        .map(|&t| exact(&params, &photon0, t).atom().iter().map(|b| b.norm()).fold(0.0, f64::max))
        .fold(0.0, f64::max);
    (worst < ATOM_LEAK_TOL, format!("max |b_j| from exact evolution = {worst:.3e} (bound {ATOM_LEAK_TOL:e})"))
}

fn c09_asymptotic_scaling() -> Verdict {
    let (kappa, delta, g) = (1.0, 100.0, 1.0);
    let sizes = [16usize, 24, 32, 48, 64];
    let slope_of = |time: &dyn Fn(usize, f64) -> f64| -> f64 {
        let points: Vec<(f64, f64)> = sizes
            .iter()
            .map(|&n| {
                let params = chain(Topology::CyclicUniform, n, delta, g, kappa);
                let kappa_eff = kappa * (1.0 - g * g / (delta * delta));
                let a = kernel_large_detuning_cyclic(&params, time(n, kappa_eff)).unwrap();
                ((n as f64).ln(), a[n / 2].norm().ln())
            })
            .collect();
        let mx = points.iter().map(|p| p.0).sum::<f64>() / points.len() as f64;
        let my = points.iter().map(|p| p.1).sum::<f64>() / points.len() as f64;
        let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
        sxy / sxx
    };
    // wavefront: the Bessel argument 2k't equals the order N/2
    let slope = slope_of(&|n, k| n as f64 / (4.0 * k));
    let literal = slope_of(&|n, k| n as f64 / (2.0 * k));
    (
        (SCALING_SLOPE.0..=SCALING_SLOPE.1).contains(&slope),
        format!("slope at t = N/(4k') is {slope:.4}; at t = N/(2k') it would be {literal:.4}"),
    )
}

fn sector_defect(kernel: &KernelMatrix) -> f64 {
    let n = kernel.k_a.nrows();
    let id = DMatrix::<Complex64>::identity(n, n);
    let a = (kernel.k_a.adjoint() * &kernel.k_a - &id).iter().map(|v| v.norm()).fold(0.0, f64::max);
    let b = (kernel.k_b.adjoint() * &kernel.k_b - &id).iter().map(|v| v.norm()).fold(0.0, f64::max);
    a.max(b)
}

fn c10_sector_conservation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for _ in 0..40 {
        let n = rng.random_range(2..=16);
        let (kappa, g) = (rng.random_range(0.5..2.0), rng.random_range(0.0..0.5));
        let t = rng.random_range(0.0..10.0);
        let ring = chain(Topology::CyclicUniform, n, rng.random_range(60.0..120.0), g, kappa);
        let line = chain(Topology::LinearParabolic, n, rng.random_range(60.0..120.0), g, kappa);
        let kernels = [
            kernel_large_hopping_cyclic(&ring, t).unwrap(),
            kernel_large_detuning_cyclic_matrix(&ring, t).unwrap(),
            parabolic_kernel(&line, t, ParabolicMode::Full).unwrap(),
            parabolic_kernel(&line, t, ParabolicMode::LargeDetuning).unwrap(),
        ];
        for k in &kernels {
            worst = worst.max(sector_defect(k));
        }
        let column: f64 = kernel_large_detuning_cyclic(&ring, t).unwrap().iter().map(|a| a.norm_sqr()).sum();
        worst = worst.max((column - 1.0).abs());
    }
    (worst < SECTOR_TOL, format!("max |K^dag K - I| and |sum |a_j|^2 - 1| = {worst:.2e}"))
}

fn c11_transfer_bound() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut violations = 0;
    let mut highest = 0.0f64;
    for _ in 0..BOUND_GRIDS {
        let n = rng.random_range(2..=16);
        let kappa = rng.random_range(1.0..20.0);
        let params = chain(
            Topology::LinearParabolic,
            n,
            rng.random_range(-0.5..0.5) * kappa,
            rng.random_range(0.0..0.2) * kappa,
            kappa,
        );
        let grid: Vec<f64> = (0..16).map(|_| rng.random_range(0.0..4.0 * PI / kappa)).collect();
        match parabolic_transfer_bound_check(&params, &grid) {
            Ok(r) => {
                highest = highest.max(r.curve.peak_value);
                violations += usize::from(!r.bound_holds);
            }
            // a draw landing on a resonant mode is outside the regime
            Err(jch_core::Error::SingularDetuning { .. }) => {}
            Err(e) => panic!("{e}"),
        }
    }
    let params = chain(Topology::LinearParabolic, 4, 0.0, 1.5, 10.0);
    let strict = parabolic_transfer_bound_check(&params, &linear_grid(0.0, PI / 10.0, 2001)).unwrap();
    (
        violations == 0 && strict.strictly_below,
        format!(
            "{BOUND_GRIDS} grids, {violations} violations, highest peak {highest:.12}; N=4 k=10 g=1.5 peak {:.6} (< 1 - {STRICT_DEFICIT:e}: {})",
            strict.curve.peak_value, strict.strictly_below
        ),
    )
}

fn c12_bases() -> Verdict {
    let mut dft = 0.0f64;
    for n in 2..=256 {
        let u = dft_matrix(n);
        dft = dft.max((u.adjoint() * &u - DMatrix::identity(n, n)).iter().map(|v| v.norm()).fold(0.0, f64::max));
    }
    let mut gram = 0.0f64;
    let mut diag = 0.0f64;
    for n in 2..=65 {
        let u = krawtchouk_basis(n).unwrap();
        gram = gram.max((u.transpose() * &u - DMatrix::identity(n, n)).amax());
        for topology in [Topology::CyclicUniform, Topology::LinearParabolic] {
            let p = chain(topology, n, 0.0, 0.1, 1.0);
            diag = diag.max(diagonalization_defect(&p, &ModeBasis::new(&p).unwrap()));
        }
    }
    (
        dft < 1e-12 && gram < GRAM_TOL && diag < GRAM_TOL,
        format!("DFT N<=256 unitarity {dft:.1e}; Krawtchouk N<=65 Gram {gram:.1e}; diagonalization {diag:.1e}"),
    )
}

struct ConvergencePlan {
    kind: RegimeKind,
    params: fn(u32) -> ChainParams,
    window: f64,
}

fn c13_regime_convergence() -> Verdict {
    let plans = [
        ConvergencePlan {
            kind: RegimeKind::LargeHopping,
            params: |s| chain(Topology::CyclicUniform, 4, 50.0, 1.0 / 2f64.powi(s as i32), 50.0),
            window: 10.0,
        },
        ConvergencePlan {
            kind: RegimeKind::LargeDetuning,
            params: |s| chain(Topology::CyclicUniform, 12, 100.0 * 2f64.powi(s as i32), 1.0, 1.0),
            window: 4.0,
        },
        ConvergencePlan {
            kind: RegimeKind::ResonanceNondegenerate { ell: 0 },
            params: |s| {
                let kappa = 25.0 * 2f64.powi(s as i32);
                chain(Topology::CyclicUniform, 4, 2.0 * kappa, 1.0, kappa)
            },
            window: 2.0 * PI,
        },
        ConvergencePlan {
            kind: RegimeKind::ResonanceDegenerate { ell: 1 },
            params: |s| chain(Topology::CyclicUniform, 4, 0.0, 1.0, 25.0 * 2f64.powi(s as i32)),
            window: 2.0 * PI,
        },
        ConvergencePlan {
            kind: RegimeKind::ParabolicDispersionFree,
            params: |s| chain(Topology::LinearParabolic, 6, 0.0, 0.5 / 2f64.powi(s as i32), 10.0),
            window: PI / 10.0,
        },
        ConvergencePlan {
            kind: RegimeKind::ParabolicLargeDetuning,
            params: |s| chain(Topology::LinearParabolic, 6, 100.0 * 2f64.powi(s as i32), 1.0, 1.0),
            window: 4.0,
        },
        ConvergencePlan {
            kind: RegimeKind::ParabolicResonance { ell: 1 },
            params: |s| chain(Topology::LinearParabolic, 3, 0.0, 1.0, 25.0 * 2f64.powi(s as i32)),
            window: 2.0 * PI,
        },
    ];
    let mut passed = true;
    let mut lines = Vec::new();
    for plan in &plans {
        let spec = RegimeSpec::new(plan.kind);
        let grid = linear_grid(0.0, plan.window, 201);
        let errors: Vec<f64> = (0..5)
            .map(|s| regime_deviation(&(plan.params)(s), &spec, &grid).unwrap().same_sector)
            .collect();
        let ok = errors.windows(2).all(|w| w[1] <= w[0] * (1.0 + CONVERGENCE_SLACK));
        passed &= ok;
        let ratios: Vec<String> = errors.windows(2).map(|w| format!("{:.2}", w[0] / w[1])).collect();
        lines.push(format!("{} {:.1e}->{:.1e} x[{}]", plan.kind.name(), errors[0], errors[4], ratios.join(",")));
    }
    (passed, lines.join("; "))
}

fn c14_cli_determinism() -> Verdict {
    let bin = env!("CARGO_BIN_EXE_jch");
    let configs = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let tmp = tempfile::TempDir::new().unwrap();
    let mut identical = true;
    let mut n_files = 0;
    for name in ["parabolic_transfer", "cyclic_resonance", "large_hopping_compare"] {
        let mut runs = Vec::new();
        for (i, threads) in ["1", "3"].iter().enumerate() {
            let out = tmp.path().join(format!("{name}_{i}"));
            let status = Command::new(bin)
                .args(["--threads", threads, "--out-dir", out.to_str().unwrap(), "simulate"])
                .arg(configs.join(format!("{name}.toml")))
                .output()
                .unwrap();
            assert!(status.status.success(), "simulate {name} failed");
            let mut files: Vec<_> = std::fs::read_dir(&out)
                .unwrap()
                .map(|e| e.unwrap().path())
                .filter(|p| p.extension().is_some_and(|e| e == "csv"))
                .collect();
            files.sort();
            runs.push(files.iter().map(|p| (p.file_name().unwrap().to_owned(), std::fs::read(p).unwrap())).collect::<Vec<_>>());
        }
        n_files += runs[0].len();
        identical &= runs[0] == runs[1];
    }
    let start = Instant::now();
    let status = Command::new(bin)
        .args(["--out-dir", tmp.path().join("validate").to_str().unwrap(), "validate"])
        .output()
        .unwrap();
    let elapsed = start.elapsed();
    let validate_ok = status.status.code() == Some(0) && elapsed < VALIDATE_BUDGET;
    (
        identical && validate_ok,
        format!(
            "{n_files} CSVs byte-identical across runs: {identical}; validate exit {:?} in {:.1} s",
            status.status.code(),
            elapsed.as_secs_f64()
        ),
    )
}

fn main() {
    let criteria: [(&str, &str, fn() -> Verdict); 15] = [
        ("1", "oracle equivalence", c01_oracle_equivalence),
        ("2", "parabolic perfect transfer", c02_parabolic_perfect_transfer),
        ("3", "closed-form identity", c03_closed_form_identity),
        ("4", "binomial transfer profile", c04_binomial_profile),
        ("5", "two-site ring resonance", c05_two_site_resonance),
        ("6", "degenerate ring resonance", c06_degenerate_resonance),
        ("7", "three-site parabolic resonance", c07_parabolic_resonance),
        ("8a", "large-detuning Bessel kernel", c08a_bessel_kernel),
        ("8b", "large-detuning atom amplitudes", c08b_atom_leakage),
        ("9", "asymptotic scaling", c09_asymptotic_scaling),
        ("10", "sector conservation", c10_sector_conservation),
        ("11", "transfer bound", c11_transfer_bound),
        ("12", "orthogonality and unitarity", c12_bases),
        ("13", "regime convergence", c13_regime_convergence),
        ("14", "CLI determinism", c14_cli_determinism),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = Vec::new();
    for (id, title, run) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| f == id) {
            continue;
        }
        let start = Instant::now();
        let (passed, detail) = match catch_unwind(AssertUnwindSafe(run)) {
            Ok(v) => v,
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                (false, format!("panicked: {msg}"))
            }
        };
        let verdict = if passed { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {id:>3} {title}: {detail} [{:.2} s]", start.elapsed().as_secs_f64());
        if !passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed criteria {}", failed.join(", "));
        std::process::exit(1);
    }
}
