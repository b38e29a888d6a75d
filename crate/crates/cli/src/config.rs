//! Experiment configuration files.
//!
//! A config is a TOML document with the tables `[chain]`, `[initial]`,
//! `[time]`, an optional `[regime]` and any number of `[[outputs]]`.
//! Unknown keys are rejected. Every error is reported as
//! `path:line:column: message`.

use std::ops::Range;
use std::path::{Path, PathBuf};

use jch_core::dynamics::SingleExcitationState;
use jch_core::regimes::{linear_grid, Channel, Dispersion, EvolutionPath, RegimeKind, RegimeSpec};
use jch_core::topology::ModeBasis;
use jch_core::{ChainParams, Complex64, Topology};
use serde::Deserialize;
use toml::Spanned;

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub chain: Spanned<ChainConfig>,
    pub initial: Spanned<InitialConfig>,
    #[serde(default)]
    pub regime: Option<Spanned<RegimeConfig>>,
    pub time: Spanned<TimeConfig>,
    #[serde(default)]
    pub outputs: Vec<Spanned<OutputConfig>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChainConfig {
    pub topology: Topology,
    pub n_cavities: usize,
    pub cavity_freq: f64,
    /// Exactly one of `atom_freq` and `detuning = atom_freq − cavity_freq`.
    pub atom_freq: Option<f64>,
    pub detuning: Option<f64>,
    pub coupling: f64,
    pub hopping: f64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialConfig {
    /// Single excitation on one site...
    pub channel: Option<Channel>,
    pub site: Option<usize>,
    /// ...or raw `[re, im]` amplitudes for every site.
    pub photon: Option<Vec<[f64; 2]>>,
    pub atom: Option<Vec<[f64; 2]>>,
    #[serde(default = "default_true")]
    pub normalize: bool,
}

fn default_true() -> bool {
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeName {
    LargeHopping,
    LargeDetuning,
    ResonanceNondegenerate,
    ResonanceDegenerate,
    ParabolicDispersionFree,
    ParabolicLargeDetuning,
    ParabolicResonance,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RegimeConfig {
    pub kind: RegimeName,
    /// Resonant mode, required by the resonance regimes.
    pub ell: Option<usize>,
    #[serde(default)]
    pub dispersion: Dispersion,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeConfig {
    pub start: Option<f64>,
    pub end: Option<f64>,
    pub points: Option<usize>,
    /// Explicit grid, instead of `start`/`end`/`points`.
    pub values: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Deserialize)]
#[serde(tag = "observable", rename_all = "snake_case", deny_unknown_fields)]
pub enum OutputConfig {
    SitePopulations,
    TransferFidelity {
        source: usize,
        target: usize,
        channel: Channel,
    },
    KernelDump,
    ValidityReport,
}

impl OutputConfig {
    pub fn name(&self) -> &'static str {
        match self {
            OutputConfig::SitePopulations => "site_populations",
            OutputConfig::TransferFidelity { .. } => "transfer_fidelity",
            OutputConfig::KernelDump => "kernel_dump",
            OutputConfig::ValidityReport => "validity_report",
        }
    }

    pub fn file_name(&self) -> String {
        match self {
            OutputConfig::TransferFidelity {
                source,
                target,
                channel,
            } => {
                let channel = match channel {
                    Channel::Photon => "photon",
                    Channel::Atom => "atom",
                };
                format!("transfer_fidelity_{channel}_{source}_to_{target}.csv")
            }
            other => format!("{}.csv", other.name()),
        }
    }
}

/// A config checked against the physics: parameters are valid, sites are in
/// range and the mode basis exists.
#[derive(Clone, Debug)]
pub struct ResolvedConfig {
    pub path: PathBuf,
    pub source_text: String,
    pub params: ChainParams,
    pub initial: SingleExcitationState,
    pub evolution: EvolutionPath,
    pub times: Vec<f64>,
    pub outputs: Vec<OutputConfig>,
}

struct Anchor<'a> {
    path: &'a Path,
    text: &'a str,
}

impl Anchor<'_> {
    fn error(&self, span: Option<Range<usize>>, message: impl Into<String>) -> CliError {
        let offset = span.map_or(0, |s| s.start.min(self.text.len()));
        let before = &self.text[..offset];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        CliError::Config {
            path: self.path.to_path_buf(),
            line,
            column,
            message: message.into(),
        }
    }
}

pub fn load(path: &Path) -> CliResult<ResolvedConfig> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::Config {
        path: path.to_path_buf(),
        line: 1,
        column: 1,
        message: format!("cannot read config: {e}"),
    })?;
    parse(path, &text)
}

/// Parses and resolves config text; `path` only labels error messages.
pub fn parse(path: &Path, text: &str) -> CliResult<ResolvedConfig> {
    let anchor = Anchor { path, text };
    let raw: ExperimentConfig =
        toml::from_str(text).map_err(|e| anchor.error(e.span(), e.message().trim_end().to_string()))?;
    resolve(&anchor, raw)
}

fn resolve(anchor: &Anchor<'_>, raw: ExperimentConfig) -> CliResult<ResolvedConfig> {
    let chain_span = raw.chain.span();
    let chain = raw.chain.into_inner();
    let atom_freq = match (chain.atom_freq, chain.detuning) {
        (Some(e), None) => e,
        (None, Some(d)) => chain.cavity_freq + d,
        _ => {
            return Err(anchor.error(
                Some(chain_span),
                "[chain] needs exactly one of `atom_freq` and `detuning`",
            ))
        }
    };
    let params = ChainParams::new(
        chain.topology,
        chain.n_cavities,
        atom_freq,
        chain.cavity_freq,
        chain.coupling,
        chain.hopping,
    )
    .map_err(|e| anchor.error(Some(chain_span.clone()), e.to_string()))?;
    ModeBasis::new(&params).map_err(|e| anchor.error(Some(chain_span), e.to_string()))?;
    let n = params.n_cavities();

    let initial_span = raw.initial.span();
    let initial = resolve_initial(raw.initial.into_inner(), n)
        .map_err(|message| anchor.error(Some(initial_span), message))?;

    let evolution = match raw.regime {
        None => EvolutionPath::Exact,
        Some(regime) => {
            let span = regime.span();
            let spec = resolve_regime(regime.into_inner(), &params)
                .map_err(|message| anchor.error(Some(span), message))?;
            EvolutionPath::Regime(spec)
        }
    };

    let time_span = raw.time.span();
    let times = resolve_time(raw.time.into_inner()).map_err(|message| anchor.error(Some(time_span), message))?;

    let mut outputs = Vec::new();
    for output in raw.outputs {
        let span = output.span();
        let output = output.into_inner();
        check_output(&output, n, &evolution).map_err(|message| anchor.error(Some(span.clone()), message))?;
        if outputs.iter().any(|o: &OutputConfig| o.file_name() == output.file_name()) {
            return Err(anchor.error(Some(span), format!("duplicate output `{}`", output.file_name())));
        }
        outputs.push(output);
    }

    Ok(ResolvedConfig {
        path: anchor.path.to_path_buf(),
        source_text: anchor.text.to_string(),
        params,
        initial,
        evolution,
        times,
        outputs,
    })
}

fn resolve_initial(initial: InitialConfig, n: usize) -> Result<SingleExcitationState, String> {
    let amplitudes = |v: Option<Vec<[f64; 2]>>, name: &str| -> Result<Vec<Complex64>, String> {
        let v = v.unwrap_or_else(|| vec![[0.0, 0.0]; n]);
        if v.len() != n {
            return Err(format!("`{name}` has {} amplitudes, expected {n}", v.len()));
        }
        Ok(v.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
    };
    match initial {
        InitialConfig {
            channel: Some(channel),
            site: Some(site),
            photon: None,
            atom: None,
            ..
        } => {
            if site >= n {
                return Err(format!("site {site} out of range for {n} cavities"));
            }
            match channel {
                Channel::Photon => SingleExcitationState::photon_excitation_at(n, site),
                Channel::Atom => SingleExcitationState::atom_excitation_at(n, site),
            }
            .map_err(|e| e.to_string())
        }
        InitialConfig {
            channel: None,
            site: None,
            photon,
            atom,
            normalize,
        } if photon.is_some() || atom.is_some() => {
            let photon = amplitudes(photon, "photon")?;
            let atom = amplitudes(atom, "atom")?;
            SingleExcitationState::from_amplitudes(photon, atom, normalize).map_err(|e| e.to_string())
        }
        _ => Err("[initial] needs either `channel` and `site`, or `photon`/`atom` amplitudes".into()),
    }
}

fn resolve_regime(regime: RegimeConfig, params: &ChainParams) -> Result<RegimeSpec, String> {
    let n = params.n_cavities();
    let ell = || -> Result<usize, String> {
        let ell = regime.ell.ok_or("resonance regimes need `ell`")?;
        if ell >= n {
            return Err(format!("ell = {ell} out of range for {n} cavities"));
        }
        Ok(ell)
    };
    let kind = match regime.kind {
        RegimeName::LargeHopping => RegimeKind::LargeHopping,
        RegimeName::LargeDetuning => RegimeKind::LargeDetuning,
        RegimeName::ParabolicDispersionFree => RegimeKind::ParabolicDispersionFree,
        RegimeName::ParabolicLargeDetuning => RegimeKind::ParabolicLargeDetuning,
        RegimeName::ResonanceNondegenerate => RegimeKind::ResonanceNondegenerate { ell: ell()? },
        RegimeName::ResonanceDegenerate => RegimeKind::ResonanceDegenerate { ell: ell()? },
        RegimeName::ParabolicResonance => RegimeKind::ParabolicResonance { ell: ell()? },
    };
    if !kind.is_resonance() && regime.ell.is_some() {
        return Err(format!("`ell` is meaningless for the {} regime", kind.name()));
    }
    Ok(RegimeSpec::with_dispersion(kind, regime.dispersion))
}

fn resolve_time(time: TimeConfig) -> Result<Vec<f64>, String> {
    let times = match time {
        TimeConfig {
            start: Some(start),
            end: Some(end),
            points: Some(points),
            values: None,
        } => {
            if !(start.is_finite() && end.is_finite()) {
                return Err("`start` and `end` must be finite".into());
            }
            if end < start {
                return Err(format!("end = {end} is before start = {start}"));
            }
            if points == 0 {
                return Err("`points` must be at least 1".into());
            }
            linear_grid(start, end, points)
        }
        TimeConfig {
            start: None,
            end: None,
            points: None,
            values: Some(values),
        } => {
            if values.is_empty() {
                return Err("`values` is empty".into());
            }
            values
        }
        _ => return Err("[time] needs either `start`, `end` and `points`, or `values`".into()),
    };
    if let Some(t) = times.iter().find(|t| !t.is_finite()) {
        return Err(format!("time {t} is not finite"));
    }
    Ok(times)
}

fn check_output(output: &OutputConfig, n: usize, evolution: &EvolutionPath) -> Result<(), String> {
    match output {
        OutputConfig::TransferFidelity { source, target, .. } => {
            for site in [source, target] {
                if *site >= n {
                    return Err(format!("site {site} out of range for {n} cavities"));
                }
            }
            Ok(())
        }
        OutputConfig::ValidityReport if *evolution == EvolutionPath::Exact => {
            Err("validity_report needs a [regime] table".into())
        }
        _ => Ok(()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::exit;

    const BASE: &str = r#"
[chain]
topology = "linear-parabolic"
n_cavities = 4
cavity_freq = 1.0
detuning = 0.0
coupling = 0.0
hopping = 1.0

[initial]
channel = "photon"
site = 0

[time]
start = 0.0
end = 1.0
points = 3
"#;

    fn parse_str(text: &str) -> CliResult<ResolvedConfig> {
        parse(Path::new("test.toml"), text)
    }

    fn location(err: CliError) -> (usize, usize, String) {
        match err {
            CliError::Config {
                line, column, message, ..
            } => (line, column, message),
            other => panic!("expected a config error, got {other:?}"),
        }
    }

    #[test]
    fn base_config_resolves() {
        let c = parse_str(BASE).unwrap();
        assert_eq!(c.params.n_cavities(), 4);
        assert_eq!(c.params.atom_freq(), 1.0);
        assert_eq!(c.times, vec![0.0, 0.5, 1.0]);
        assert_eq!(c.evolution, EvolutionPath::Exact);
        assert!(c.outputs.is_empty());
    }

    #[test]
    fn unknown_key_is_line_anchored() {
        let text = BASE.replace("hopping = 1.0", "hopping = 1.0\nhoping = 2.0");
        let err = parse_str(&text).unwrap_err();
        assert_eq!(err.exit_code(), exit::CONFIG);
        let (line, column, message) = location(err);
        assert_eq!((line, column), (9, 1));
        assert!(message.contains("hoping"), "{message}");
    }

    #[test]
    fn semantic_errors_point_at_their_table() {
        let text = format!("{BASE}\n[[outputs]]\nobservable = \"transfer_fidelity\"\nsource = 0\ntarget = 4\nchannel = \"photon\"\n");
        let (line, _, message) = location(parse_str(&text).unwrap_err());
        assert!(message.contains("site 4"), "{message}");
        assert!((19..=20).contains(&line), "line {line}");

        let text = BASE.replace("end = 1.0", "end = -1.0");
        let (line, _, message) = location(parse_str(&text).unwrap_err());
        assert!(message.contains("before start"));
        assert!((14..=15).contains(&line), "line {line}");

        let text = BASE.replace("detuning = 0.0", "detuning = 0.0\natom_freq = 2.0");
        assert!(location(parse_str(&text).unwrap_err()).2.contains("exactly one"));

        let text = BASE.replace("n_cavities = 4", "n_cavities = 1");
        assert!(location(parse_str(&text).unwrap_err()).2.contains("at least 2"));
    }

    #[test]
    fn regime_tables() {
        let text = format!("{BASE}\n[regime]\nkind = \"parabolic-resonance\"\nell = 1\ndispersion = \"neglected\"\n");
        let c = parse_str(&text).unwrap();
        assert_eq!(
            c.evolution,
            EvolutionPath::Regime(RegimeSpec::with_dispersion(
                RegimeKind::ParabolicResonance { ell: 1 },
                Dispersion::Neglected
            ))
        );
        let text = format!("{BASE}\n[regime]\nkind = \"parabolic-resonance\"\n");
        assert!(location(parse_str(&text).unwrap_err()).2.contains("ell"));
        let text = format!("{BASE}\n[regime]\nkind = \"warp-drive\"\n");
        assert!(parse_str(&text).is_err());
    }

    #[test]
    fn raw_amplitudes_and_explicit_grid() {
        let text = BASE
            .replace("channel = \"photon\"\nsite = 0", "atom = [[1.0, 0.0], [0.0, 1.0], [0.0, 0.0], [0.0, 0.0]]")
            .replace("start = 0.0\nend = 1.0\npoints = 3", "values = [0.0, 2.0]");
        let c = parse_str(&text).unwrap();
        assert!((c.initial.atom()[1].im - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(c.times, vec![0.0, 2.0]);
    }

    #[test]
    fn validity_report_needs_a_regime() {
        let text = format!("{BASE}\n[[outputs]]\nobservable = \"validity_report\"\n");
        assert!(location(parse_str(&text).unwrap_err()).2.contains("regime"));
    }
}
