mod common;

use approx::assert_relative_eq;
use common::{build, matched};
use wva_core::optics::max_amplification;
use wva_core::osa::{max_usable_amplification, osa_trace, snr_estimate, BetaSweep};
use wva_core::sensor::Interrogator;
use wva_core::spectral::total_power;
use wva_core::{Error, OsaParams};

fn noisy(g: f64, noise_floor: f64) -> wva_core::Scenario {
    let mut v = matched(g);
    v["osa"] = serde_json::json!({"rbw_nm": 0.01, "noise_floor_au": noise_floor, "rel_noise_frac": 0.0, "seed": 11});
    build(&v)
}

fn coarse() -> BetaSweep {
    BetaSweep::new(-89.0, 0.0, 0.25).unwrap()
}

#[test]
fn resolution_conserves_power() {
    let sc = build(&matched(0.99));
    let s = Interrogator::new(sc.clone())
        .unwrap()
        .postselected(-0.3, 30.0)
        .unwrap();
    for rbw in [0.01, 0.1, 0.5] {
        let p = OsaParams {
            rbw_nm: rbw,
            ..Default::default()
        };
        let t = osa_trace(&s, &p, &sc.units);
        assert_relative_eq!(total_power(&t), total_power(&s), max_relative = 1e-9);
    }
}

#[test]
fn snr_drop_follows_attenuation() {
    let sc = noisy(0.99, 1e-4);
    let osa = sc.osa.unwrap();
    let it = Interrogator::new(sc.clone()).unwrap();
    let bright = it.postselected(0.0, sc.t2).unwrap();
    let dim = it.postselected((-44f64).to_radians(), sc.t2).unwrap();
    let drop_snr = snr_estimate(&bright, &osa).snr_db - snr_estimate(&dim, &osa).snr_db;
    let drop_power = 10.0 * (total_power(&bright) / total_power(&dim)).log10();
    assert!(
        (drop_snr - drop_power).abs() < 0.1,
        "{drop_snr} {drop_power}"
    );
}

#[test]
fn noiseless_search_finds_closed_form_optimum() {
    let mut v = matched(0.99);
    v["osa"] = serde_json::json!({"rbw_nm": 0.0});
    let sc = build(&v);
    let sweep = BetaSweep::default();
    let best = max_usable_amplification(&sc, 30.0, &sweep).unwrap();
    let exact = max_amplification(1.0, sc.delta()).unwrap();
    assert!(best.snr_db.is_infinite());
    assert!((best.beta - exact.beta_star).abs() <= sweep.step_deg.to_radians());
    assert!(best.a > 0.0);
    assert_relative_eq!(best.a, exact.a_max, max_relative = 1e-4);
}

#[test]
fn usable_amplification_is_monotone() {
    let floors = [1e-6, 1e-5, 3e-5, 1e-4, 3e-4];
    let thresholds = [0.0, 10.0, 15.0, 20.0, 25.0];
    let mut table = vec![[f64::NAN; 5]; 5];
    for (i, &nf) in floors.iter().enumerate() {
        let sc = noisy(0.99, nf);
        for (j, &snr) in thresholds.iter().enumerate() {
            table[i][j] = match max_usable_amplification(&sc, snr, &coarse()) {
                Ok(r) => r.a.abs(),
                Err(Error::DetectionLimited { .. }) => 0.0,
                Err(e) => panic!("{e}"),
            };
        }
    }
    for i in 0..5 {
        for j in 0..5 {
            if i + 1 < 5 {
                assert!(table[i + 1][j] <= table[i][j], "{table:?}");
            }
            if j + 1 < 5 {
                assert!(table[i][j + 1] <= table[i][j], "{table:?}");
            }
        }
    }
    // the grid spans both ends of the trade-off
    assert!(table[0][0] > 7.0 && table[4][4] < table[0][0], "{table:?}");
}

#[test]
fn unreachable_floor_is_detection_limited() {
    let sc = noisy(0.99, 1.0);
    assert!(matches!(
        max_usable_amplification(&sc, 40.0, &coarse()),
        Err(Error::DetectionLimited { .. })
    ));
}

#[test]
fn search_requires_osa() {
    let sc = build(&matched(0.99));
    assert!(max_usable_amplification(&sc, 10.0, &coarse()).is_err());
}
