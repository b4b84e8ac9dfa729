#![allow(dead_code)]

use serde_json::{json, Value};
use wva_core::config::ScenarioConfig;
use wva_core::Scenario;

/// Matched 2 nm gratings at 1551 nm, 320 fs source at 1549 nm, δ chosen so
/// that γ·cosδ = g when the gratings coincide.
pub fn matched(g: f64) -> Value {
    json!({
        "source": {"center_wavelength_nm": 1549.0, "pulse_duration_ps": 0.32},
        "fbg1": {"center_wavelength_nm": 1551.0, "kappa_nm_per_c": 0.009, "fwhm_nm": 2.0, "efficiency_frac": 0.14},
        "fbg2": {"center_wavelength_nm": 1551.0, "kappa_nm_per_c": 0.009, "fwhm_nm": 2.0, "efficiency_frac": 0.14},
        "interferometer": {"tau_ps": 0.0, "phi_rad": g.acos(), "lcvr_rad": 0.0},
        "temperatures": {"t2_ref_c": 25.0, "t1_c": (0..=12).map(|d| 25.0 + d as f64).collect::<Vec<_>>()},
    })
}

pub fn with_side_lobes(mut v: Value) -> Value {
    let lobe = json!({"offset_nm": 3.0, "rel_amplitude_frac": 0.2, "fwhm_nm": 2.0});
    v["fbg1"]["side_lobe"] = lobe.clone();
    v["fbg2"]["side_lobe"] = lobe;
    v
}

pub fn build(v: &Value) -> Scenario {
    ScenarioConfig::from_json_str(&v.to_string())
        .unwrap()
        .build()
        .unwrap()
}

pub fn t1_list(v: &Value) -> Vec<f64> {
    v["temperatures"]["t1_c"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect()
}
