//! `wva-sense`: command-line front end for the `wva-core` simulator.
//!
//! Every command writes CSV (or JSON) files plus a `manifest.json` into the
//! output directory. `wva-sense replay --manifest <file> --out <dir>` re-runs
//! a recorded command and reproduces its outputs byte for byte.

// `!(x > 0.0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod commands;
pub mod error;
pub mod manifest;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use wva_core::config::ScenarioConfig;

pub use error::CliError;
pub use manifest::{RunManifest, MANIFEST_FILE};

#[derive(Debug, Parser)]
#[command(
    name = "wva-sense",
    version,
    about = "Weak-value amplified FBG interrogation simulator"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "name", content = "args", rename_all = "kebab-case")]
pub enum Command {
    /// Centroid shift, amplification, power and SNR versus post-selection angle.
    SweepBeta(SweepBetaArgs),
    /// Centroid shift versus temperature difference at a fixed angle, with a linear fit.
    SweepTemp(SweepTempArgs),
    /// Amplification factor versus angle for a list of g = γ·cosδ values.
    AmaxCurve(AmaxCurveArgs),
    /// Ideal centroid-shift lines for given amplification factors.
    TheoryLines(TheoryLinesArgs),
    /// Fit a sensitivity line to measured (dt_c, shift_nm) rows.
    Calibrate(CalibrateArgs),
    /// Write the measured and filtered spectrum at one operating point.
    DumpSpectrum(DumpSpectrumArgs),
    /// Largest amplification whose expected SNR stays above a floor.
    MaxUsable(MaxUsableArgs),
    /// Re-run a command recorded in a manifest.
    Replay(ReplayArgs),
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct Common {
    /// Scenario file (JSON).
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Output directory, created if missing.
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
    /// Overrides `osa.seed`.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepArgs {
    /// First angle in degrees (default from the config, else -89).
    #[arg(long, allow_negative_numbers = true)]
    pub beta_min: Option<f64>,
    /// Last angle in degrees (default from the config, else 0).
    #[arg(long, allow_negative_numbers = true)]
    pub beta_max: Option<f64>,
    /// Angle step in degrees (default from the config, else 0.05).
    #[arg(long, allow_negative_numbers = true)]
    pub step: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepBetaArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub sweep: SweepArgs,
    /// T1 - T2 in °C (default: first `temperatures.t1_c` entry).
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
    /// Angles (degrees) whose full spectra are written alongside the sweep.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub dump_spectra: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct SweepTempArgs {
    #[command(flatten)]
    pub common: Common,
    /// Post-selection angle in degrees (default `postselect.beta_deg`).
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// Temperature differences in °C (default from `temperatures.t1_c`).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub dt: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct AmaxCurveArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [0.99, 0.999, 0.9999])]
    pub g: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = -90.0)]
    pub beta_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub beta_max: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.01)]
    pub step: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct TheoryLinesArgs {
    #[command(flatten)]
    pub common: Common,
    /// Amplification factors.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, default_values_t = [1.0, 25.0, 50.0])]
    pub a: Vec<f64>,
    /// Extra lines from post-selection angles (degrees), mapped through g.
    #[arg(
        long,
        value_delimiter = ',',
        allow_hyphen_values = true,
        requires = "g"
    )]
    pub beta: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub g: Option<f64>,
    /// Thermal sensitivity in nm/°C (default `fbg1.kappa_nm_per_c`, else 0.009).
    #[arg(long, allow_negative_numbers = true)]
    pub kappa: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub dt_min: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 12.0)]
    pub dt_max: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1.0)]
    pub dt_step: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct CalibrateArgs {
    #[command(flatten)]
    pub common: Common,
    /// CSV with `dt_c,shift_nm` rows; `#` lines are ignored.
    #[arg(long)]
    pub input: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct DumpSpectrumArgs {
    #[command(flatten)]
    pub common: Common,
    /// Post-selection angle in degrees (default `postselect.beta_deg`).
    #[arg(long, allow_negative_numbers = true)]
    pub beta: Option<f64>,
    /// T1 - T2 in °C (default: first `temperatures.t1_c` entry).
    #[arg(long, allow_negative_numbers = true)]
    pub dt: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct MaxUsableArgs {
    #[command(flatten)]
    pub common: Common,
    #[command(flatten)]
    pub sweep: SweepArgs,
    #[arg(long, allow_negative_numbers = true)]
    pub snr_min_db: f64,
}

#[derive(Debug, Clone, PartialEq, Args, Serialize, Deserialize)]
pub struct ReplayArgs {
    #[arg(long)]
    pub manifest: PathBuf,
    /// Directory for the reproduced outputs.
    #[arg(long)]
    pub out: PathBuf,
}

impl Command {
    fn common(&self) -> Option<&Common> {
        match self {
            Command::SweepBeta(a) => Some(&a.common),
            Command::SweepTemp(a) => Some(&a.common),
            Command::AmaxCurve(a) => Some(&a.common),
            Command::TheoryLines(a) => Some(&a.common),
            Command::Calibrate(a) => Some(&a.common),
            Command::DumpSpectrum(a) => Some(&a.common),
            Command::MaxUsable(a) => Some(&a.common),
            Command::Replay(_) => None,
        }
    }

    fn common_mut(&mut self) -> Option<&mut Common> {
        match self {
            Command::SweepBeta(a) => Some(&mut a.common),
            Command::SweepTemp(a) => Some(&mut a.common),
            Command::AmaxCurve(a) => Some(&mut a.common),
            Command::TheoryLines(a) => Some(&mut a.common),
            Command::Calibrate(a) => Some(&mut a.common),
            Command::DumpSpectrum(a) => Some(&mut a.common),
            Command::MaxUsable(a) => Some(&mut a.common),
            Command::Replay(_) => None,
        }
    }
}

/// Loads the scenario file and applies `--seed`.
pub fn load_config(common: &Common) -> Result<Option<ScenarioConfig>, CliError> {
    let Some(path) = &common.config else {
        return Ok(None);
    };
    let mut cfg = ScenarioConfig::from_path(path).map_err(|source| CliError::Input {
        path: path.clone(),
        source,
    })?;
    if let (Some(seed), Some(osa)) = (common.seed, cfg.osa.as_mut()) {
        osa.seed = seed;
    }
    Ok(Some(cfg))
}

fn effective_seed(common: &Common, cfg: Option<&ScenarioConfig>) -> Option<u64> {
    match cfg.and_then(|c| c.osa.as_ref()) {
        Some(osa) => Some(osa.seed),
        None => common.seed,
    }
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Output {
        path: dir.to_path_buf(),
        source,
    })
}

/// Runs one command with an already-resolved scenario and records a manifest.
pub fn execute(command: &Command, cfg: Option<ScenarioConfig>) -> Result<RunManifest, CliError> {
    let common = command
        .common()
        .ok_or_else(|| CliError::usage("replay cannot be nested"))?;
    ensure_dir(&common.out)?;
    let outputs = commands::dispatch(command, cfg.as_ref(), &common.out)?;
    let manifest = RunManifest::new(
        command.clone(),
        cfg.clone(),
        effective_seed(common, cfg.as_ref()),
        outputs,
    );
    manifest.write(&common.out)?;
    Ok(manifest)
}

pub fn run(cli: Cli) -> Result<RunManifest, CliError> {
    match cli.command {
        Command::Replay(r) => {
            let recorded = RunManifest::read(&r.manifest)?;
            let mut command = recorded.command;
            let common = command
                .common_mut()
                .ok_or_else(|| CliError::usage("manifest records a replay"))?;
            common.out = r.out;
            execute(&command, recorded.config)
        }
        command => {
            let cfg = load_config(command.common().expect("not a replay"))?;
            execute(&command, cfg)
        }
    }
}
