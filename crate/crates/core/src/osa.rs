//! Optical spectrum analyzer model and the SNR-limited amplification search.
//!
//! A trace is the input spectrum convolved with a Gaussian resolution
//! response, plus per-sample Gaussian noise of variance
//! `noise_floor² + (rel_noise · sample)²`, clamped at zero.
//!
//! Noise comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`; independent realizations within one run use
//! ChaCha stream numbers. Normal deviates are drawn with
//! `rand_distr::StandardNormal`. Both are value-stable across platforms, so
//! a given (seed, stream) always yields the same trace.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::sensor::{Interrogator, Scenario};
use crate::spectral::{Spectrum, UnitContext};
use crate::{Error, Result};

/// Noise stream reserved for the β = -90° reference measurement.
pub const REFERENCE_STREAM: u64 = u64::MAX;

const FWHM_PER_SIGMA: f64 = 2.354_820_045_030_949_3; // 2√(2 ln 2)

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OsaParams {
    /// Resolution bandwidth, FWHM of the Gaussian response (nm).
    pub rbw_nm: f64,
    /// Additive noise standard deviation (spectrum power units).
    pub noise_floor: f64,
    /// Signal-proportional noise fraction.
    pub rel_noise: f64,
    pub seed: u64,
}

impl Default for OsaParams {
    fn default() -> Self {
        OsaParams {
            rbw_nm: 0.01,
            noise_floor: 0.0,
            rel_noise: 0.0,
            seed: 0,
        }
    }
}

impl OsaParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.rbw_nm >= 0.0) || !self.rbw_nm.is_finite() {
            return Err(Error::param(
                "rbw_nm",
                format!("{} must be >= 0", self.rbw_nm),
            ));
        }
        if !(self.noise_floor >= 0.0) || !self.noise_floor.is_finite() {
            return Err(Error::param(
                "noise_floor",
                format!("{} must be >= 0", self.noise_floor),
            ));
        }
        if !(0.0..1.0).contains(&self.rel_noise) {
            return Err(Error::param(
                "rel_noise",
                format!("{} must lie in [0, 1)", self.rel_noise),
            ));
        }
        Ok(())
    }
}

fn convolve_gaussian(s: &Spectrum, sigma: f64) -> Vec<f64> {
    let dx = s.grid().spacing();
    let n = s.samples().len();
    let half = ((8.0 * sigma / dx).ceil() as usize).min(n - 1);
    let mut kernel: Vec<f64> = (0..=2 * half)
        .map(|k| {
            let x = (k as f64 - half as f64) * dx;
            (-0.5 * (x / sigma).powi(2)).exp()
        })
        .collect();
    let norm: f64 = kernel.iter().sum();
    kernel.iter_mut().for_each(|k| *k /= norm);

    let input = s.samples();
    (0..n)
        .map(|i| {
            let lo = i.saturating_sub(half);
            let hi = (i + half).min(n - 1);
            (lo..=hi).map(|j| input[j] * kernel[j + half - i]).sum()
        })
        .collect()
}

/// OSA trace using noise stream 0.
pub fn osa_trace(s: &Spectrum, p: &OsaParams, units: &UnitContext) -> Spectrum {
    osa_trace_stream(s, p, units, 0)
}

pub fn osa_trace_stream(s: &Spectrum, p: &OsaParams, units: &UnitContext, stream: u64) -> Spectrum {
    let sigma = units.width_nm_to_thz(p.rbw_nm) / FWHM_PER_SIGMA;
    let mut samples = if sigma > 1e-3 * s.grid().spacing() {
        convolve_gaussian(s, sigma)
    } else {
        s.samples().to_vec()
    };
    if p.noise_floor > 0.0 || p.rel_noise > 0.0 {
        let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
        rng.set_stream(stream);
        for v in &mut samples {
            let z: f64 = StandardNormal.sample(&mut rng);
            let sd = (p.noise_floor.powi(2) + (p.rel_noise * *v).powi(2)).sqrt();
            *v = (*v + sd * z).max(0.0);
        }
    }
    Spectrum::from_nonneg(*s.grid(), samples)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnrReport {
    pub peak_signal: f64,
    pub noise_sigma: f64,
    /// `10·log10(peak/noise)`; `+inf` when the noise model is switched off.
    pub snr_db: f64,
}

impl SnrReport {
    pub fn is_noise_free(&self) -> bool {
        self.noise_sigma == 0.0
    }
}

pub fn snr_estimate(trace: &Spectrum, p: &OsaParams) -> SnrReport {
    let peak_signal = trace.peak().max(0.0);
    let noise_sigma = (p.noise_floor.powi(2) + (p.rel_noise * peak_signal).powi(2)).sqrt();
    let snr_db = if noise_sigma > 0.0 {
        10.0 * (peak_signal / noise_sigma).log10()
    } else {
        f64::INFINITY
    };
    SnrReport {
        peak_signal,
        noise_sigma,
        snr_db,
    }
}

/// Evenly spaced post-selection angles, in degrees, both ends included.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BetaSweep {
    pub min_deg: f64,
    pub max_deg: f64,
    pub step_deg: f64,
}

impl Default for BetaSweep {
    fn default() -> Self {
        BetaSweep {
            min_deg: -89.0,
            max_deg: 0.0,
            step_deg: 0.05,
        }
    }
}

impl BetaSweep {
    pub fn new(min_deg: f64, max_deg: f64, step_deg: f64) -> Result<Self> {
        if !(step_deg > 0.0) || !step_deg.is_finite() {
            return Err(Error::param(
                "step_deg",
                format!("{step_deg} must be positive"),
            ));
        }
        if !(min_deg <= max_deg) || min_deg < -90.0 || max_deg > 90.0 {
            return Err(Error::param(
                "beta range",
                format!("[{min_deg}, {max_deg}] must be ordered and within [-90, 90] degrees"),
            ));
        }
        Ok(BetaSweep {
            min_deg,
            max_deg,
            step_deg,
        })
    }

    pub fn angles_deg(&self) -> Vec<f64> {
        let count = ((self.max_deg - self.min_deg) / self.step_deg + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|k| self.min_deg + k as f64 * self.step_deg)
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UsableAmplification {
    pub beta: f64,
    pub a: f64,
    pub snr_db: f64,
}

/// Largest |A| over `sweep` among angles whose expected SNR reaches
/// `snr_min_db`.
///
/// SNR is judged on the noise-free trace (resolution applied, filtered) so
/// the feasible set depends only on the noise parameters, not on one noise
/// draw. Ties go to the angle closest to 0°.
pub fn max_usable_amplification(
    sc: &Scenario,
    snr_min_db: f64,
    sweep: &BetaSweep,
) -> Result<UsableAmplification> {
    let osa = sc
        .osa
        .ok_or_else(|| Error::param("osa", "scenario has no OSA parameters"))?;
    if !snr_min_db.is_finite() {
        return Err(Error::param("snr_min_db", "must be finite"));
    }
    let interrogator = Interrogator::new(sc.clone())?;
    let candidates: Vec<Option<UsableAmplification>> = sweep
        .angles_deg()
        .par_iter()
        .map(|&deg| {
            let beta = deg.to_radians();
            let a = interrogator.amplification(beta, sc.t1).ok()?;
            let trace = interrogator.expected_trace(beta, sc.t1).ok()?;
            let snr = snr_estimate(&trace, &osa);
            Some(UsableAmplification {
                beta,
                a,
                snr_db: snr.snr_db,
            })
        })
        .collect();

    let mut best: Option<UsableAmplification> = None;
    let mut best_snr = f64::NEG_INFINITY;
    for c in candidates.iter().rev().flatten() {
        best_snr = best_snr.max(c.snr_db);
        if c.snr_db < snr_min_db {
            continue;
        }
        match best {
            Some(b) if c.a.abs() <= b.a.abs() * (1.0 + 1e-12) => {}
            _ => best = Some(*c),
        }
    }
    best.ok_or(Error::DetectionLimited {
        snr_min_db,
        best_snr_db: best_snr,
    })
}
