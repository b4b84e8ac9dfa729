//! Acceptance criteria, run as a plain binary so every PASS/FAIL line is
//! printed. Exits non-zero if any criterion fails.

use std::f64::consts::FRAC_PI_2;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::Parser;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use wva_core::config::ScenarioConfig;
use wva_core::optics::{
    amplification_factor, analytic_centroid, jones_field, max_amplification,
    output_spectrum_analytic, power_fwhm, pulse_bandwidth,
};
use wva_core::osa::{max_usable_amplification, BetaSweep};
use wva_core::sensor::{fit_sensitivity, Interrogator};
use wva_core::spectral::{centroid, total_power, UnitContext};
use wva_core::{CalibrationResult, Error, FrequencyGrid, SetupParams};
use wva_sense::commands::{amax_curves, theory_lines};
use wva_sense::{run, Cli, MANIFEST_FILE};

type Check<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn load(name: &str) -> Value {
    let text = fs::read_to_string(configs_dir().join(name)).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn build(v: &Value) -> wva_core::Scenario {
    ScenarioConfig::from_json_str(&v.to_string())
        .unwrap()
        .build()
        .unwrap()
}

fn slope_at(v: &Value, beta_deg: f64) -> f64 {
    let sc = build(v);
    let t1s: Vec<f64> = serde_json::from_value(v["temperatures"]["t1_c"].clone()).unwrap();
    let it = Interrogator::new(sc).unwrap();
    let pts = it.sweep_temperature(beta_deg.to_radians(), &t1s).unwrap();
    fit_sensitivity(&pts).unwrap().slope_nm_per_c
}

fn cli(args: &[&str]) -> wva_sense::RunManifest {
    let mut full = vec!["wva-sense"];
    full.extend_from_slice(args);
    run(Cli::parse_from(full)).unwrap_or_else(|e| panic!("{args:?}: {e}"))
}

/// Analytic spectrum against the projected Jones field.
fn c1_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let b = 0.15;
    let grid = FrequencyGrid::new(193.29, 12.0 * b, 4001).unwrap();
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let nu_minus = rng.random_range(0.0..=0.5) * b;
        let nu_plus = rng.random_range(-0.5..=0.5) * b;
        let p = SetupParams {
            nu0: 193.29,
            bandwidth: b,
            tau_ps: rng.random_range(0.0..=0.1) / b,
            phi: rng.random_range(0.0..=std::f64::consts::PI),
            gamma_lcvr: 0.0,
            beta: -rng.random_range(0.0..=FRAC_PI_2),
            nu1: nu_plus + nu_minus,
            nu2: nu_plus - nu_minus,
            amplitude: 1.0,
        };
        let field = jones_field(&p, &grid).unwrap();
        let oracle = field.post_select(p.beta);
        let local = field.total_intensity();
        let analytic = output_spectrum_analytic(&p, &grid).unwrap();
        for ((x, y), s) in analytic
            .samples()
            .iter()
            .zip(oracle.samples())
            .zip(local.samples())
        {
            let scale = y.max(*s);
            if scale > 0.0 {
                worst = worst.max((x - y).abs() / scale);
            }
        }
    }
    outcome(
        worst <= 1e-12,
        format!("200 sets, worst relative error {worst:.2e}"),
    )
}

fn weak_grid_error(tau_over_b: f64) -> f64 {
    let b = 0.15;
    let grid = FrequencyGrid::new(193.29, 16.0 * b, 8001).unwrap();
    let mut worst = 0.0f64;
    for i in 0..20 {
        let beta = (-89.0 + 88.0 * i as f64 / 19.0).to_radians();
        for k in 1..=20 {
            let nu_minus = 0.05 * b * k as f64 / 20.0;
            let p = SetupParams {
                nu0: 193.29,
                bandwidth: b,
                tau_ps: tau_over_b / b,
                phi: 0.6,
                gamma_lcvr: 0.0,
                beta,
                nu1: nu_minus,
                nu2: -nu_minus,
                amplitude: 1.0,
            };
            let numeric = centroid(&jones_field(&p, &grid).unwrap().post_select(beta)).unwrap();
            let analytic = analytic_centroid(&p).unwrap();
            let err = (numeric - analytic.nu).abs() / (analytic.amplification * nu_minus).abs();
            worst = worst.max(err);
        }
    }
    worst
}

fn c2_weak_centroid() -> Outcome {
    let worst = weak_grid_error(0.0);
    let with_delay = weak_grid_error(0.01);
    outcome(
        worst <= 0.01,
        format!(
            "20x20 grid at tau=0: worst error {:.2e} of |A nu-| (info: at tau=0.01/B the worst is {with_delay:.2})",
            worst
        ),
    )
}

fn c3_amax_curves() -> Outcome {
    let sweep = BetaSweep::new(-90.0, 0.0, 0.001).unwrap();
    let curves = amax_curves(&[0.99, 0.999, 0.9999], &sweep).unwrap();
    let targets = [(7.09, 0.01), (22.37, 0.05), (70.7, 0.2)];
    let mut pass = true;
    let mut detail = Vec::new();
    for (c, (peak, tol)) in curves.iter().zip(targets) {
        let beta_expected = -0.5 * c.g.asin().to_degrees();
        let (beta, a) = c.sampled_peak;
        let ok = (a - peak).abs() <= tol
            && (c.closed_form.a_max - peak).abs() <= tol
            && (beta - beta_expected).abs() <= 0.05
            && (c.closed_form.beta_star.to_degrees() - beta_expected).abs() <= 0.05
            && (a - c.closed_form.a_max).abs() <= 1e-3 * c.closed_form.a_max;
        pass &= ok;
        detail.push(format!("g={}: A={a:.4} at {beta:.3} deg", c.g));
    }
    outcome(pass, detail.join("; "))
}

fn c4_theory_lines() -> Outcome {
    let kappa = 0.009;
    let dts: Vec<f64> = (0..=12).map(f64::from).collect();
    let lines = theory_lines(&[1.0, 25.0, 50.0], kappa, &dts);
    let expected = [kappa, 13.0 * kappa, 25.5 * kappa];
    let mut worst = 0.0f64;
    for (line, want) in lines.iter().zip(expected) {
        let fit = fit_sensitivity(&line.points).unwrap();
        worst = worst
            .max((fit.slope_nm_per_c - want).abs() / want)
            .max((line.slope_nm_per_c - want).abs() / want);
    }
    // caption angles mapped through g = 0.9999
    let delta = 0.9999f64.acos();
    let a25 = amplification_factor((-42.8f64).to_radians(), 1.0, delta).unwrap();
    let a50 = amplification_factor((-44.02f64).to_radians(), 1.0, delta).unwrap();
    let captions = (a25 / 25.0 - 1.0).abs() <= 0.15 && (a50 / 50.0 - 1.0).abs() <= 0.15;
    outcome(
        worst <= 8.0 * f64::EPSILON && captions,
        format!("worst slope error {worst:.1e} relative; A(-42.8)={a25:.2}, A(-44.02)={a50:.2}"),
    )
}

fn read_fit(dir: &Path) -> CalibrationResult {
    serde_json::from_str(&fs::read_to_string(dir.join("calibration.json")).unwrap()).unwrap()
}

fn c5_fig4(tmp: &Path) -> Outcome {
    let config = configs_dir().join("ideal.json");
    let config = config.to_str().unwrap();
    let mut slopes = Vec::new();
    for beta in ["0", "-40"] {
        let out = tmp.join(format!("c5_{beta}"));
        cli(&[
            "sweep-temp",
            "--config",
            config,
            "--beta",
            beta,
            "--out",
            out.to_str().unwrap(),
        ]);
        slopes.push(read_fit(&out).slope_nm_per_c);
    }
    let (s0, s40) = (slopes[0], slopes[1]);
    let pass = (s0 - 0.009).abs() <= 1e-4 && (s40 / 0.035 - 1.0).abs() <= 0.15;
    outcome(
        pass,
        format!(
            "slope {s0:.6} nm/C at 0 deg, {s40:.5} nm/C at -40 deg (x{:.2})",
            s40 / s0
        ),
    )
}

fn c6_dark_port() -> Outcome {
    let mut v = load("ideal.json");
    v["interferometer"] = json!({"tau_ps": 0.0, "phi_rad": 0.0, "lcvr_rad": 0.0});
    let sc = build(&v);
    let t2 = sc.t2;
    let it = Interrogator::new(sc).unwrap();
    let dark = total_power(&it.postselected(-std::f64::consts::FRAC_PI_4, t2).unwrap());
    let bright = total_power(&it.postselected(0.0, t2).unwrap());
    let ratio = dark / bright;
    outcome(ratio <= 1e-10, format!("P(-45)/P(0) = {ratio:.2e}"))
}

fn c7_pulse_bandwidth() -> Outcome {
    let fwhm_thz = power_fwhm(pulse_bandwidth(0.32).unwrap());
    let fwhm_nm = UnitContext::new(1549.0).unwrap().width_thz_to_nm(fwhm_thz);
    outcome(
        (fwhm_nm - 11.0).abs() <= 0.2,
        format!("320 fs -> {fwhm_nm:.3} nm at 1549 nm"),
    )
}

fn c8_filter() -> Outcome {
    let lobed = load("side_lobes.json");
    let beta = lobed["postselect"]["beta_deg"].as_f64().unwrap();
    let mut clean = lobed.clone();
    for f in ["fbg1", "fbg2"] {
        clean[f].as_object_mut().unwrap().remove("side_lobe");
    }
    let mut unfiltered = lobed.clone();
    unfiltered["filter"]["enabled"] = false.into();
    let reference = slope_at(&clean, beta);
    let filtered_err = slope_at(&lobed, beta) / reference - 1.0;
    let raw_err = slope_at(&unfiltered, beta) / reference - 1.0;
    outcome(
        filtered_err.abs() < 0.05 && raw_err.abs() > 0.05,
        format!(
            "beta={beta} deg: slope error {:+.2}% filtered, {:+.2}% unfiltered",
            100.0 * filtered_err,
            100.0 * raw_err
        ),
    )
}

fn c9_determinism(tmp: &Path) -> Outcome {
    let cfg = configs_dir().join("lab_setup.json");
    let cfg = cfg.to_str().unwrap();
    let cal_input = tmp.join("c9_sweep_temp").join("sweep_temp.csv");
    let runs: Vec<(&str, Vec<String>)> = vec![
        (
            "c9_sweep_beta",
            vec![
                "sweep-beta",
                "--config",
                cfg,
                "--dt",
                "11",
                "--seed",
                "99",
                "--dump-spectra",
                "-40,-10",
            ],
        ),
        ("c9_sweep_temp", vec!["sweep-temp", "--config", cfg]),
        ("c9_amax", vec!["amax-curve"]),
        (
            "c9_theory",
            vec!["theory-lines", "--beta", "-42.8,-44.02", "--g", "0.9999"],
        ),
        (
            "c9_dump",
            vec![
                "dump-spectrum",
                "--config",
                cfg,
                "--beta",
                "-30",
                "--dt",
                "11",
            ],
        ),
        (
            "c9_max_usable",
            vec![
                "max-usable",
                "--config",
                cfg,
                "--snr-min-db",
                "20",
                "--step",
                "0.25",
            ],
        ),
        (
            "c9_calibrate",
            vec!["calibrate", "--input", cal_input.to_str().unwrap()],
        ),
    ]
    .into_iter()
    .map(|(dir, args)| (dir, args.into_iter().map(String::from).collect()))
    .collect();

    let mut compared = 0;
    let mut mismatched = Vec::new();
    for (dir, mut args) in runs {
        let out = tmp.join(dir);
        args.extend(["--out".to_string(), out.to_str().unwrap().to_string()]);
        let refs: Vec<&str> = args.iter().map(String::as_str).collect();
        let first = cli(&refs);
        let replay = tmp.join(format!("{dir}_replay"));
        cli(&[
            "replay",
            "--manifest",
            out.join(MANIFEST_FILE).to_str().unwrap(),
            "--out",
            replay.to_str().unwrap(),
        ]);
        for name in &first.outputs {
            compared += 1;
            if fs::read(out.join(name)).unwrap() != fs::read(replay.join(name)).unwrap() {
                mismatched.push(name.clone());
            }
        }
    }
    outcome(
        mismatched.is_empty() && compared >= 9,
        format!("{compared} output files replayed, mismatches: {mismatched:?}"),
    )
}

fn c10_snr_tradeoff() -> Outcome {
    let floors = [1e-6, 1e-5, 3e-5, 1e-4, 3e-4];
    let thresholds = [0.0, 10.0, 15.0, 20.0, 25.0];
    let sweep = BetaSweep::new(-89.0, 0.0, 0.1).unwrap();
    let mut table = [[0.0f64; 5]; 5];
    for (i, &nf) in floors.iter().enumerate() {
        let mut v = load("ideal.json");
        v["osa"] = json!({"rbw_nm": 0.01, "noise_floor_au": nf, "rel_noise_frac": 0.0, "seed": 3});
        let sc = build(&v);
        for (j, &snr) in thresholds.iter().enumerate() {
            table[i][j] = match max_usable_amplification(&sc, snr, &sweep) {
                Ok(r) => r.a.abs(),
                Err(Error::DetectionLimited { .. }) => 0.0,
                Err(e) => panic!("{e}"),
            };
        }
    }
    let mut monotone = true;
    for i in 0..5 {
        for j in 0..5 {
            if i + 1 < 5 {
                monotone &= table[i + 1][j] <= table[i][j];
            }
            if j + 1 < 5 {
                monotone &= table[i][j + 1] <= table[i][j];
            }
        }
    }

    let mut v = load("ideal.json");
    v["osa"] = json!({"rbw_nm": 0.0});
    let sc = build(&v);
    let fine = BetaSweep::default();
    let best = max_usable_amplification(&sc, 30.0, &fine).unwrap();
    let exact = max_amplification(1.0, sc.delta()).unwrap();
    let step = fine.step_deg.to_radians();
    let a_floor = amplification_factor(exact.beta_star + step, 1.0, sc.delta())
        .unwrap()
        .min(amplification_factor(exact.beta_star - step, 1.0, sc.delta()).unwrap());
    let optimum =
        (best.beta - exact.beta_star).abs() <= step && best.a >= a_floor && best.a <= exact.a_max;
    outcome(
        monotone && optimum,
        format!(
            "|A| from {:.2} down to {:.2} across the 5x5 grid; noiseless A={:.4} at {:.2} deg vs {:.4} at {:.2} deg",
            table[0][0],
            table[4][4],
            best.a,
            best.beta.to_degrees(),
            exact.a_max,
            exact.beta_star.to_degrees()
        ),
    )
}

fn main() {
    let tmp = tempfile::tempdir().unwrap();
    let criteria: Vec<(&str, Duration, Check)> = vec![
        (
            "1 equivalence oracle",
            Duration::from_secs(10),
            Box::new(c1_equivalence),
        ),
        (
            "2 weak-regime centroid",
            Duration::from_secs(30),
            Box::new(c2_weak_centroid),
        ),
        (
            "3 amplification curves",
            Duration::MAX,
            Box::new(c3_amax_curves),
        ),
        ("4 theory lines", Duration::MAX, Box::new(c4_theory_lines)),
        (
            "5 temperature sweep slopes",
            Duration::from_secs(60),
            Box::new(|| c5_fig4(tmp.path())),
        ),
        ("6 dark port", Duration::MAX, Box::new(c6_dark_port)),
        (
            "7 pulse bandwidth",
            Duration::MAX,
            Box::new(c7_pulse_bandwidth),
        ),
        ("8 filter efficacy", Duration::MAX, Box::new(c8_filter)),
        (
            "9 manifest replay",
            Duration::MAX,
            Box::new(|| c9_determinism(tmp.path())),
        ),
        (
            "10 SNR trade-off",
            Duration::MAX,
            Box::new(c10_snr_tradeoff),
        ),
    ];
    let mut failures = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let mut result = check();
        let elapsed = start.elapsed();
        if elapsed > limit {
            result.pass = false;
            result
                .detail
                .push_str(&format!(" (over the {}s budget)", limit.as_secs()));
        }
        if !result.pass {
            failures += 1;
        }
        println!(
            "{} criterion {name}: {} [{:.2}s]",
            if result.pass { "PASS" } else { "FAIL" },
            result.detail,
            elapsed.as_secs_f64()
        );
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
