//! Command implementations. Each writes its files into `out` and returns
//! their names relative to it.

use std::fs::{self, File};
use std::io::{BufRead, BufReader, Read};
use std::path::Path;

use wva_core::config::ScenarioConfig;
use wva_core::format::sig;
use wva_core::optics::{amplification_factor, max_amplification, MaxAmplification};
use wva_core::osa::{max_usable_amplification, snr_estimate, BetaSweep};
use wva_core::sensor::{centroid_shift_model, fit_sensitivity, Interrogator};
use wva_core::spectral::write_spectrum;
use wva_core::{CalibrationResult, Error, Scenario};

use crate::error::CliError;
use crate::{
    AmaxCurveArgs, CalibrateArgs, Command, DumpSpectrumArgs, MaxUsableArgs, SweepArgs,
    SweepBetaArgs, SweepTempArgs, TheoryLinesArgs,
};

type Outputs = Result<Vec<String>, CliError>;

pub fn dispatch(command: &Command, cfg: Option<&ScenarioConfig>, out: &Path) -> Outputs {
    match command {
        Command::SweepBeta(a) => sweep_beta(a, require(cfg)?, out),
        Command::SweepTemp(a) => sweep_temp(a, require(cfg)?, out),
        Command::AmaxCurve(a) => amax_curve(a, out),
        Command::TheoryLines(a) => theory_lines_cmd(a, cfg, out),
        Command::Calibrate(a) => calibrate(a, out),
        Command::DumpSpectrum(a) => dump_spectrum(a, require(cfg)?, out),
        Command::MaxUsable(a) => max_usable(a, require(cfg)?, out),
        Command::Replay(_) => Err(CliError::usage("replay cannot be nested")),
    }
}

fn require(cfg: Option<&ScenarioConfig>) -> Result<&ScenarioConfig, CliError> {
    cfg.ok_or_else(|| CliError::usage("this command needs --config"))
}

/// Accumulates CSV text; numbers are printed with [`sig`].
struct Csv {
    text: String,
}

impl Csv {
    fn new(header: &str) -> Self {
        Csv {
            text: format!("{header}\n"),
        }
    }

    fn row(&mut self, values: &[f64]) {
        let cells: Vec<String> = values.iter().map(|&v| sig(v)).collect();
        self.text.push_str(&cells.join(","));
        self.text.push('\n');
    }

    fn comment(&mut self, line: &str) {
        self.text.push_str("# ");
        self.text.push_str(line);
        self.text.push('\n');
    }

    fn save(self, out: &Path, name: &str) -> Result<String, CliError> {
        write_file(out, name, self.text.as_bytes())
    }
}

fn write_file(out: &Path, name: &str, bytes: &[u8]) -> Result<String, CliError> {
    let path = out.join(name);
    fs::write(&path, bytes).map_err(|source| CliError::Output { path, source })?;
    Ok(name.to_string())
}

fn sweep_from(args: &SweepArgs, cfg: &ScenarioConfig) -> Result<BetaSweep, CliError> {
    let base = cfg.sweep()?;
    Ok(BetaSweep::new(
        args.beta_min.unwrap_or(base.min_deg),
        args.beta_max.unwrap_or(base.max_deg),
        args.step.unwrap_or(base.step_deg),
    )?)
}

fn t1_for(sc: &Scenario, dt: Option<f64>) -> f64 {
    dt.map_or(sc.t1, |dt| sc.t2 + dt)
}

fn beta_for(cfg: &ScenarioConfig, beta_deg: Option<f64>) -> Result<f64, CliError> {
    let deg = beta_deg.or(cfg.postselect.beta_deg).unwrap_or(0.0);
    if !deg.is_finite() || deg.abs() > 90.0 {
        return Err(CliError::usage(format!(
            "--beta {deg} must lie in [-90, 90] degrees"
        )));
    }
    Ok(deg.to_radians())
}

fn sweep_beta(args: &SweepBetaArgs, cfg: &ScenarioConfig, out: &Path) -> Outputs {
    let sc = cfg.build()?;
    let sweep = sweep_from(&args.sweep, cfg)?;
    let t1 = t1_for(&sc, args.dt);
    let it = Interrogator::new(sc.clone())?;
    let angles = sweep.angles_deg();
    let betas: Vec<f64> = angles.iter().map(|d| d.to_radians()).collect();
    let p0 = wva_core::spectral::total_power(&it.postselected(0.0, t1)?);

    let mut csv = Csv::new("beta_deg,centroid_shift_nm,a_effective,total_power_rel,snr_db");
    let mut skipped = 0usize;
    for (deg, rec) in angles.iter().zip(it.sweep_beta(&betas, t1)) {
        let rec = match rec {
            Ok(r) => r,
            Err(e) if e.is_numerical() => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        let snr_db = match &sc.osa {
            Some(osa) => snr_estimate(&it.expected_trace(rec.beta, t1)?, osa).snr_db,
            None => f64::INFINITY,
        };
        csv.row(&[
            *deg,
            rec.centroid_nm_shift,
            rec.a_effective,
            rec.transmitted_power / p0,
            snr_db,
        ]);
    }
    if skipped == angles.len() {
        return Err(Error::NoSignal.into());
    }
    if skipped > 0 {
        csv.comment(&format!("skipped {skipped} singular angles"));
    }
    let mut outputs = vec![csv.save(out, "sweep_beta.csv")?];

    for (k, &deg) in args.dump_spectra.iter().enumerate() {
        if !deg.is_finite() || deg.abs() > 90.0 {
            return Err(CliError::usage(format!(
                "--dump-spectra angle {deg} must lie in [-90, 90]"
            )));
        }
        let rec = it.evaluate(deg.to_radians(), t1, DUMP_STREAM_BASE + k as u64)?;
        let mut buf = Vec::new();
        write_spectrum(&rec.raw, &mut buf)?;
        outputs.push(write_file(
            out,
            &format!("spectrum_beta_{}.csv", sig(deg)),
            &buf,
        )?);
    }
    Ok(outputs)
}

/// Noise streams for `--dump-spectra`, clear of the sweep's own indices.
pub const DUMP_STREAM_BASE: u64 = 1 << 32;

fn sweep_temp(args: &SweepTempArgs, cfg: &ScenarioConfig, out: &Path) -> Outputs {
    let sc = cfg.build()?;
    let beta = beta_for(cfg, args.beta)?;
    let t1s: Vec<f64> = if args.dt.is_empty() {
        cfg.temperatures.t1_c.clone()
    } else {
        args.dt.iter().map(|dt| sc.t2 + dt).collect()
    };
    if t1s.len() < 2 {
        return Err(CliError::usage(
            "a temperature sweep needs at least two temperatures",
        ));
    }
    let it = Interrogator::new(sc.clone())?;
    let points = it.sweep_temperature(beta, &t1s)?;
    let fit = fit_sensitivity(&points)?;

    let mut csv = Csv::new("dt_c,centroid_shift_nm");
    for &(dt, shift) in &points {
        csv.row(&[dt, shift]);
    }
    calibration_footer(&mut csv, &fit);
    csv.comment(&format!("beta_deg={}", sig(beta.to_degrees())));
    csv.comment(&format!(
        "a_effective={}",
        sig(it.amplification(beta, sc.t1)?)
    ));
    Ok(vec![
        csv.save(out, "sweep_temp.csv")?,
        write_calibration(&fit, out)?,
    ])
}

fn calibration_footer(csv: &mut Csv, fit: &CalibrationResult) {
    csv.comment(&format!("slope_nm_per_c={}", sig(fit.slope_nm_per_c)));
    csv.comment(&format!("intercept_nm={}", sig(fit.intercept_nm)));
    csv.comment(&format!("residual_rms_nm={}", sig(fit.residual_rms_nm)));
    csv.comment(&format!("n_points={}", fit.n_points));
}

fn write_calibration(fit: &CalibrationResult, out: &Path) -> Result<String, CliError> {
    let text = serde_json::to_string_pretty(fit).expect("fit serializes") + "\n";
    write_file(out, "calibration.json", text.as_bytes())
}

/// One A(β) curve with its sampled peak and the closed-form optimum.
#[derive(Debug, Clone)]
pub struct AmaxCurve {
    pub g: f64,
    /// (β in degrees, A); singular angles are left out.
    pub points: Vec<(f64, f64)>,
    pub sampled_peak: (f64, f64),
    pub closed_form: MaxAmplification,
}

pub fn amax_curves(g_list: &[f64], sweep: &BetaSweep) -> Result<Vec<AmaxCurve>, CliError> {
    g_list
        .iter()
        .map(|&g| {
            if !(g.abs() < 1.0) {
                return Err(CliError::usage(format!("g = {g}: |g| must be below 1")));
            }
            let delta = g.acos();
            let points: Vec<(f64, f64)> = sweep
                .angles_deg()
                .into_iter()
                .filter_map(|deg| {
                    amplification_factor(deg.to_radians(), 1.0, delta)
                        .ok()
                        .map(|a| (deg, a))
                })
                .collect();
            let sampled_peak =
                points
                    .iter()
                    .copied()
                    .fold((f64::NAN, f64::NEG_INFINITY), |best, p| {
                        if p.1 > best.1 {
                            p
                        } else {
                            best
                        }
                    });
            Ok(AmaxCurve {
                g,
                points,
                sampled_peak,
                closed_form: max_amplification(1.0, delta)?,
            })
        })
        .collect()
}

fn amax_curve(args: &AmaxCurveArgs, out: &Path) -> Outputs {
    let sweep = BetaSweep::new(args.beta_min, args.beta_max, args.step)?;
    let curves = amax_curves(&args.g, &sweep)?;
    let mut csv = Csv::new("beta_deg,g,a");
    for c in &curves {
        for &(deg, a) in &c.points {
            csv.row(&[deg, c.g, a]);
        }
    }
    for c in &curves {
        csv.comment(&format!(
            "peak g={} beta_deg={} a={} beta_star_deg={} a_max={}",
            sig(c.g),
            sig(c.sampled_peak.0),
            sig(c.sampled_peak.1),
            sig(c.closed_form.beta_star.to_degrees()),
            sig(c.closed_form.a_max)
        ));
    }
    Ok(vec![csv.save(out, "amax_curve.csv")?])
}

#[derive(Debug, Clone)]
pub struct TheoryLine {
    pub a: f64,
    pub slope_nm_per_c: f64,
    /// (dt in °C, shift in nm).
    pub points: Vec<(f64, f64)>,
}

/// Ideal shift lines with no static grating mismatch.
pub fn theory_lines(a_list: &[f64], kappa: f64, dts: &[f64]) -> Vec<TheoryLine> {
    a_list
        .iter()
        .map(|&a| TheoryLine {
            a,
            slope_nm_per_c: centroid_shift_model(1.0, kappa, a, 0.0),
            points: dts
                .iter()
                .map(|&dt| (dt, centroid_shift_model(dt, kappa, a, 0.0)))
                .collect(),
        })
        .collect()
}

pub fn dt_range(min: f64, max: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0) || !(min <= max) || !min.is_finite() || !max.is_finite() {
        return Err(CliError::usage(format!(
            "temperature range {min}..{max} step {step} must be ordered with a positive step"
        )));
    }
    let n = ((max - min) / step + 1e-9).floor() as usize + 1;
    Ok((0..n).map(|k| min + k as f64 * step).collect())
}

fn theory_lines_cmd(args: &TheoryLinesArgs, cfg: Option<&ScenarioConfig>, out: &Path) -> Outputs {
    let kappa = args
        .kappa
        .or(cfg.map(|c| c.fbg1.kappa_nm_per_c))
        .unwrap_or(0.009);
    let mut a_list = args.a.clone();
    if let Some(g) = args.g {
        if !(g.abs() < 1.0) {
            return Err(CliError::usage(format!("g = {g}: |g| must be below 1")));
        }
        for &deg in &args.beta {
            a_list.push(amplification_factor(deg.to_radians(), 1.0, g.acos())?);
        }
    }
    let dts = dt_range(args.dt_min, args.dt_max, args.dt_step)?;
    let lines = theory_lines(&a_list, kappa, &dts);
    let mut csv = Csv::new("dt_c,a,shift_nm");
    for line in &lines {
        for &(dt, shift) in &line.points {
            csv.row(&[dt, line.a, shift]);
        }
    }
    for line in &lines {
        csv.comment(&format!(
            "slope a={} slope_nm_per_c={}",
            sig(line.a),
            sig(line.slope_nm_per_c)
        ));
    }
    Ok(vec![csv.save(out, "theory_lines.csv")?])
}

/// Parses `dt_c,shift_nm` rows. A header row (first non-comment line whose
/// first field is not a number) and `#` comment lines are skipped.
pub fn read_calibration_points<R: Read>(input: R) -> Result<Vec<(f64, f64)>, Error> {
    let mut points = Vec::new();
    let mut seen_data = false;
    for (idx, line) in BufReader::new(input).lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if !seen_data && fields[0].parse::<f64>().is_err() {
            seen_data = true;
            continue;
        }
        seen_data = true;
        let err = |message: String| Error::Parse {
            line: line_no,
            message,
        };
        if fields.len() != 2 {
            return Err(err(format!("expected 2 fields, found {}", fields.len())));
        }
        let parse = |s: &str| {
            s.parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| err(format!("`{s}` is not a finite number")))
        };
        points.push((parse(fields[0])?, parse(fields[1])?));
    }
    Ok(points)
}

fn calibrate(args: &CalibrateArgs, out: &Path) -> Outputs {
    let file = File::open(&args.input).map_err(|e| CliError::Input {
        path: args.input.clone(),
        source: e.into(),
    })?;
    let points = read_calibration_points(file).map_err(|source| CliError::Input {
        path: args.input.clone(),
        source,
    })?;
    let fit = fit_sensitivity(&points)?;
    Ok(vec![write_calibration(&fit, out)?])
}

fn dump_spectrum(args: &DumpSpectrumArgs, cfg: &ScenarioConfig, out: &Path) -> Outputs {
    let sc = cfg.build()?;
    let beta = beta_for(cfg, args.beta)?;
    let t1 = t1_for(&sc, args.dt);
    let it = Interrogator::new(sc)?;
    let rec = it.evaluate(beta, t1, 0)?;
    let mut outputs = Vec::new();
    for (name, s) in [
        ("spectrum_raw.csv", &rec.raw),
        ("spectrum_filtered.csv", &rec.filtered),
    ] {
        let mut buf = Vec::new();
        write_spectrum(s, &mut buf)?;
        outputs.push(write_file(out, name, &buf)?);
    }
    Ok(outputs)
}

fn max_usable(args: &MaxUsableArgs, cfg: &ScenarioConfig, out: &Path) -> Outputs {
    let sc = cfg.build()?;
    if sc.osa.is_none() {
        return Err(CliError::usage(
            "max-usable needs an `osa` section in the config",
        ));
    }
    let sweep = sweep_from(&args.sweep, cfg)?;
    let best = max_usable_amplification(&sc, args.snr_min_db, &sweep)?;
    let mut csv = Csv::new("beta_deg,a,snr_db");
    csv.row(&[best.beta.to_degrees(), best.a, best.snr_db]);
    Ok(vec![csv.save(out, "max_usable.csv")?])
}
