//! The `simulate`, `compare` and `validate` subcommands.

use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use jch_core::dynamics::SingleExcitationState;
use jch_core::regimes::{deviation_at, validity_report, Channel, EvolutionPath, Propagator, ValidityReport};
use jch_core::topology::ModeBasis;
use jch_core::validation::{run_suite, ValidationOptions, ValidationSummary};
use jch_core::{ChainParams, Complex64};
use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{self, OutputConfig, ResolvedConfig};
use crate::error::{CliError, CliResult};
use crate::output::{ensure_dir, fmt_f64, write_json, Table, SCHEMA_VERSION};

/// Options shared by every subcommand.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub out_dir: PathBuf,
    /// Worker threads; 0 lets rayon decide.
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OutputSummary {
    pub observable: &'static str,
    pub file: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peak_time: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub peak_value: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeviationSummary {
    pub max_same_sector: f64,
    pub max_leakage: f64,
    pub worst_time: f64,
    pub tolerance: f64,
    pub within_tolerance: bool,
}

#[derive(Serialize)]
struct Resolved<'a> {
    params: &'a ChainParams,
    detuning: f64,
    evolution: EvolutionPath,
    mode_frequencies: &'a [f64],
    mode_detunings: &'a [f64],
    time_unit: Option<&'static str>,
    n_times: usize,
    t_first: f64,
    t_last: f64,
}

#[derive(Serialize)]
struct Manifest<'a> {
    schema_version: u32,
    tool: &'static str,
    tool_version: &'static str,
    command: &'static str,
    config_path: String,
    /// Verbatim config text; re-running it reproduces the data files.
    config: &'a str,
    resolved: Resolved<'a>,
    outputs: &'a [OutputSummary],
    #[serde(skip_serializing_if = "Option::is_none")]
    deviation: Option<&'a DeviationSummary>,
    threads: usize,
    started_unix_s: u64,
    wall_time_s: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub outputs: Vec<OutputSummary>,
    pub deviation: Option<DeviationSummary>,
    pub manifest: PathBuf,
}

/// Reporting unit for times: `1/g` for resonance runs, `1/κ` otherwise.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TimeUnit {
    pub label: &'static str,
    pub rate: f64,
}

pub fn time_unit(params: &ChainParams, evolution: &EvolutionPath) -> Option<TimeUnit> {
    let kappa = TimeUnit {
        label: "1/kappa",
        rate: params.hopping(),
    };
    let g = TimeUnit {
        label: "1/g",
        rate: params.coupling(),
    };
    let resonance = matches!(evolution, EvolutionPath::Regime(spec) if spec.kind.is_resonance());
    let order = if resonance { [g, kappa] } else { [kappa, g] };
    order.into_iter().find(|u| u.rate != 0.0)
}

fn time_header(unit: Option<TimeUnit>) -> Vec<String> {
    let mut h = vec!["time[abs]".to_string()];
    if let Some(u) = unit {
        h.push(format!("time[{}]", u.label));
    }
    h
}

fn time_cells(t: f64, unit: Option<TimeUnit>) -> Vec<String> {
    let mut c = vec![fmt_f64(t)];
    if let Some(u) = unit {
        c.push(fmt_f64(t * u.rate));
    }
    c
}

fn thread_pool(threads: usize) -> CliResult<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::io("starting worker threads", std::io::Error::other(e)))
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

/// Everything the outputs need from one grid point.
struct Frame {
    state: SingleExcitationState,
    fidelities: Vec<f64>,
    matrix: Option<DMatrix<Complex64>>,
}

fn site_label(n: usize, index: usize) -> String {
    if index < n {
        format!("a_{index}")
    } else {
        format!("b_{}", index - n)
    }
}

fn validity_table(report: &ValidityReport) -> Table {
    let mut t = Table::new(vec!["quantity".into(), "mode".into(), "value[dimensionless]".into()]);
    for r in &report.ratios {
        t.push_row([
            r.name.to_string(),
            r.mode.map_or(String::new(), |m| m.to_string()),
            fmt_f64(r.value),
        ]);
    }
    t.push_row(["worst".to_string(), String::new(), fmt_f64(report.worst)]);
    t.push_row(["tolerance".to_string(), String::new(), fmt_f64(report.tolerance)]);
    t
}

fn write_manifest(
    cfg: &ResolvedConfig,
    options: &RunOptions,
    command: &'static str,
    outputs: &[OutputSummary],
    deviation: Option<&DeviationSummary>,
    started: (u64, Instant),
) -> CliResult<PathBuf> {
    let basis = ModeBasis::new(&cfg.params)?;
    let manifest = Manifest {
        schema_version: SCHEMA_VERSION,
        tool: "jch",
        tool_version: env!("CARGO_PKG_VERSION"),
        command,
        config_path: cfg.path.display().to_string(),
        config: &cfg.source_text,
        resolved: Resolved {
            params: &cfg.params,
            detuning: cfg.params.detuning(),
            evolution: cfg.evolution,
            mode_frequencies: basis.mode_freqs(),
            mode_detunings: basis.detunings(),
            time_unit: time_unit(&cfg.params, &cfg.evolution).map(|u| u.label),
            n_times: cfg.times.len(),
            t_first: cfg.times[0],
            t_last: cfg.times[cfg.times.len() - 1],
        },
        outputs,
        deviation,
        threads: options.threads,
        started_unix_s: started.0,
        wall_time_s: started.1.elapsed().as_secs_f64(),
    };
    write_json(&options.out_dir, "manifest.json", &manifest)
}

pub fn simulate(config_path: &Path, options: &RunOptions) -> CliResult<RunReport> {
    let cfg = config::load(config_path)?;
    simulate_resolved(&cfg, options)
}

pub fn simulate_resolved(cfg: &ResolvedConfig, options: &RunOptions) -> CliResult<RunReport> {
    let started = (unix_now(), Instant::now());
    let propagator = Propagator::new(&cfg.params, cfg.evolution)?;
    let n = cfg.params.n_cavities();
    let unit = time_unit(&cfg.params, &cfg.evolution);
    let transfers: Vec<(usize, usize)> = cfg
        .outputs
        .iter()
        .filter_map(|o| match *o {
            OutputConfig::TransferFidelity {
                source,
                target,
                channel,
            } => {
                let offset = if channel == Channel::Photon { 0 } else { n };
                Some((offset + target, offset + source))
            }
            _ => None,
        })
        .collect();
    let keep_matrix = cfg.outputs.contains(&OutputConfig::KernelDump);
    let psi0 = cfg.initial.stacked();

    let frames = thread_pool(options.threads)?.install(|| {
        cfg.times
            .par_iter()
            .map(|&t| {
                let m = propagator.matrix(t)?;
                Ok(Frame {
                    state: SingleExcitationState::from_stacked(&(&m * &psi0)),
                    fidelities: transfers.iter().map(|&(r, c)| m[(r, c)].norm()).collect(),
                    matrix: keep_matrix.then_some(m),
                })
            })
            .collect::<jch_core::Result<Vec<_>>>()
    })?;

    ensure_dir(&options.out_dir)?;
    let mut summaries = Vec::new();
    let mut transfer_index = 0;
    for output in &cfg.outputs {
        let file = output.file_name();
        let mut summary = OutputSummary {
            observable: output.name(),
            file: file.clone(),
            peak_time: None,
            peak_value: None,
        };
        let table = match output {
            OutputConfig::SitePopulations => {
                let mut header = time_header(unit);
                header.extend((0..2 * n).map(|i| format!("{}[dimensionless]", site_label(n, i))));
                let mut table = Table::new(header);
                for (t, frame) in cfg.times.iter().zip(&frames) {
                    let mut row = time_cells(*t, unit);
                    row.extend(frame.state.photon_populations().into_iter().map(fmt_f64));
                    row.extend(frame.state.atom_populations().into_iter().map(fmt_f64));
                    table.push_row(row);
                }
                table
            }
            OutputConfig::TransferFidelity { .. } => {
                let mut header = time_header(unit);
                header.push("fidelity[dimensionless]".into());
                let mut table = Table::new(header);
                let mut peak = (f64::NAN, f64::NEG_INFINITY);
                for (t, frame) in cfg.times.iter().zip(&frames) {
                    let f = frame.fidelities[transfer_index];
                    if f > peak.1 {
                        peak = (*t, f);
                    }
                    let mut row = time_cells(*t, unit);
                    row.push(fmt_f64(f));
                    table.push_row(row);
                }
                transfer_index += 1;
                summary.peak_time = Some(peak.0);
                summary.peak_value = Some(peak.1);
                table
            }
            OutputConfig::KernelDump => {
                let mut header = time_header(unit);
                header.extend(["row".into(), "col".into(), "re[dimensionless]".into(), "im[dimensionless]".into()]);
                let mut table = Table::new(header);
                for (t, frame) in cfg.times.iter().zip(&frames) {
                    let m = frame.matrix.as_ref().expect("kept for kernel dumps");
                    for r in 0..2 * n {
                        for c in 0..2 * n {
                            let mut row = time_cells(*t, unit);
                            row.extend([site_label(n, r), site_label(n, c), fmt_f64(m[(r, c)].re), fmt_f64(m[(r, c)].im)]);
                            table.push_row(row);
                        }
                    }
                }
                table
            }
            OutputConfig::ValidityReport => {
                let EvolutionPath::Regime(spec) = &cfg.evolution else {
                    unreachable!("rejected while resolving the config")
                };
                validity_table(&validity_report(spec, &cfg.params)?)
            }
        };
        table.write(&options.out_dir, &file)?;
        summaries.push(summary);
    }
    let manifest = write_manifest(cfg, options, "simulate", &summaries, None, started)?;
    Ok(RunReport {
        outputs: summaries,
        deviation: None,
        manifest,
    })
}

pub fn compare(config_path: &Path, options: &RunOptions) -> CliResult<RunReport> {
    let cfg = config::load(config_path)?;
    compare_resolved(&cfg, options)
}

pub fn compare_resolved(cfg: &ResolvedConfig, options: &RunOptions) -> CliResult<RunReport> {
    let started = (unix_now(), Instant::now());
    let EvolutionPath::Regime(spec) = cfg.evolution else {
        return Err(CliError::Config {
            path: cfg.path.clone(),
            line: 1,
            column: 1,
            message: "compare needs a [regime] table".into(),
        });
    };
    let propagator = Propagator::new(&cfg.params, cfg.evolution)?;
    let report = validity_report(&spec, &cfg.params)?;
    let unit = time_unit(&cfg.params, &cfg.evolution);
    let samples = thread_pool(options.threads)?.install(|| {
        cfg.times
            .par_iter()
            .map(|&t| deviation_at(&propagator, t))
            .collect::<jch_core::Result<Vec<_>>>()
    })?;

    ensure_dir(&options.out_dir)?;
    let mut header = time_header(unit);
    header.extend(["same_sector[dimensionless]".into(), "leakage[dimensionless]".into()]);
    let mut table = Table::new(header);
    let mut summary = DeviationSummary {
        max_same_sector: 0.0,
        max_leakage: 0.0,
        worst_time: cfg.times[0],
        tolerance: report.tolerance,
        within_tolerance: true,
    };
    for s in &samples {
        let mut row = time_cells(s.time, unit);
        row.extend([fmt_f64(s.same_sector), fmt_f64(s.leakage)]);
        table.push_row(row);
        if s.same_sector > summary.max_same_sector {
            summary.max_same_sector = s.same_sector;
            summary.worst_time = s.time;
        }
        summary.max_leakage = summary.max_leakage.max(s.leakage);
    }
    summary.within_tolerance = summary.max_same_sector <= report.tolerance;
    table.write(&options.out_dir, "compare.csv")?;
    validity_table(&report).write(&options.out_dir, "validity_report.csv")?;
    let outputs = vec![
        OutputSummary {
            observable: "deviation",
            file: "compare.csv".into(),
            peak_time: Some(summary.worst_time),
            peak_value: Some(summary.max_same_sector),
        },
        OutputSummary {
            observable: "validity_report",
            file: "validity_report.csv".into(),
            peak_time: None,
            peak_value: None,
        },
    ];
    let manifest = write_manifest(cfg, options, "compare", &outputs, Some(&summary), started)?;
    Ok(RunReport {
        outputs,
        deviation: Some(summary),
        manifest,
    })
}

/// Runs the invariant suite and writes `validation_summary.json`.
pub fn validate(validation: &ValidationOptions, options: &RunOptions) -> CliResult<ValidationSummary> {
    let summary = thread_pool(options.threads)?.install(|| run_suite(validation));
    ensure_dir(&options.out_dir)?;
    write_json(&options.out_dir, "validation_summary.json", &summary)?;
    Ok(summary)
}
