use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use jch_cli::commands::{self, RunOptions};
use jch_cli::{exit, CliError};
use jch_core::validation::{Fault, Scope, ValidationOptions};

#[derive(Parser)]
#[command(name = "jch", version, about = "Single-excitation transfer through Jaynes-Cummings-Hubbard arrays")]
struct Cli {
    /// Directory for CSV files, manifests and summaries.
    #[arg(long, global = true, default_value = "out")]
    out_dir: PathBuf,
    /// Worker threads (0 = one per core). Output does not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Seed for randomized validation draws; never affects physics.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the configured chain and write the requested observables.
    Simulate { config: PathBuf },
    /// Measure the configured regime against exact evolution.
    Compare { config: PathBuf },
    /// Run the invariant suite; exits 1 if any invariant fails.
    Validate {
        /// Restrict to these modules (comma separated or repeated).
        #[arg(long, value_delimiter = ',', value_parser = parse_scope)]
        scope: Vec<Scope>,
        #[arg(long, hide = true, value_parser = parse_fault)]
        inject_fault: Option<Fault>,
    },
}

fn parse_scope(s: &str) -> Result<Scope, String> {
    s.parse().map_err(|_| {
        let names: Vec<_> = Scope::ALL.iter().map(|s| s.name()).collect();
        format!("expected one of {}", names.join(", "))
    })
}

fn parse_fault(s: &str) -> Result<Fault, String> {
    s.parse().map_err(|e: jch_core::Error| e.to_string())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let options = RunOptions {
        out_dir: cli.out_dir,
        threads: cli.threads,
    };
    match cli.command {
        Command::Simulate { config } => {
            let report = commands::simulate(&config, &options)?;
            for o in &report.outputs {
                match (o.peak_time, o.peak_value) {
                    (Some(t), Some(v)) => println!("{}: peak {v} at t = {t}", o.file),
                    _ => println!("{}", o.file),
                }
            }
            println!("{}", report.manifest.display());
        }
        Command::Compare { config } => {
            let report = commands::compare(&config, &options)?;
            if let Some(d) = report.deviation {
                println!(
                    "max deviation {} at t = {} (tolerance {}, leakage {})",
                    d.max_same_sector, d.worst_time, d.tolerance, d.max_leakage
                );
            }
            println!("{}", report.manifest.display());
        }
        Command::Validate { scope, inject_fault } => {
            let validation = ValidationOptions {
                scopes: if scope.is_empty() { Scope::ALL.to_vec() } else { scope },
                seed: cli.seed,
                fault: inject_fault,
            };
            let summary = commands::validate(&validation, &options)?;
            println!("{}", serde_json::to_string_pretty(&summary)?);
            if !summary.passed {
                return Err(CliError::ValidationFailed { failed: summary.failed });
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::from(exit::OK as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
