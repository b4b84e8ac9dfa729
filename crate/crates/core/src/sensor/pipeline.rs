use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use super::{reflect_lobes, ReflectedLobes, Scenario};
use crate::optics::{amplification_factor, overlap_gamma, PolarizedFieldSpectrum};
use crate::osa::{osa_trace_stream, REFERENCE_STREAM};
use crate::spectral::{centroid, peak_center, total_power, Spectrum};
use crate::Result;

/// Output of one simulated measurement.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InterrogationRecord {
    pub beta: f64,
    pub t1: f64,
    /// Post-selected spectrum as measured (after the OSA model, if any).
    pub raw: Spectrum,
    /// `raw` after the super-Gaussian filter (equal to `raw` when disabled).
    pub filtered: Spectrum,
    pub centroid_thz: f64,
    /// Centroid shift from the β = -90° reference, in nm (positive = red).
    pub centroid_nm_shift: f64,
    /// Reference centroid expressed as a wavelength.
    pub reference_nm: f64,
    pub a_effective: f64,
    /// Noise-free transmitted power after post-selection.
    pub transmitted_power: f64,
}

/// Evaluates a scenario at arbitrary (β, T1) points against one cached
/// β = -90° reference measurement.
///
/// The reference is taken on the reference grating alone, which sits at the
/// fixed temperature T2, so it is shared by every sweep point.
#[derive(Debug, Clone)]
pub struct Interrogator {
    scenario: Scenario,
    reference_lobes: ReflectedLobes,
    reference_thz: f64,
}

impl Interrogator {
    pub fn new(scenario: Scenario) -> Result<Self> {
        scenario.validate()?;
        let src = scenario.source;
        let reference_lobes = reflect_lobes(
            &scenario.fbg2,
            src.bandwidth,
            src.nu0,
            scenario.nu2(),
            &scenario.grid,
        )?;
        let mut it = Interrogator {
            scenario,
            reference_lobes,
            reference_thz: 0.0,
        };
        let t2 = it.scenario.t2;
        let clean = it.postselected(-FRAC_PI_2, t2)?;
        let measured = it.measure(&clean, REFERENCE_STREAM);
        it.reference_thz = centroid(&it.filtered(&measured)?)?;
        Ok(it)
    }

    pub fn scenario(&self) -> &Scenario {
        &self.scenario
    }

    pub fn reference_thz(&self) -> f64 {
        self.reference_thz
    }

    /// Noise-free post-selected power spectrum.
    ///
    /// Main lobes interfere as the two polarization components of the
    /// recombined field. Side lobes are added in power, weighted by the
    /// polarizer's projection of each arm, and take no part in the
    /// interference.
    pub fn postselected(&self, beta: f64, t1: f64) -> Result<Spectrum> {
        let sc = &self.scenario;
        let src = sc.source;
        let lobes1 = reflect_lobes(&sc.fbg1, src.bandwidth, src.nu0, sc.nu1(t1), &sc.grid)?;
        let lobes2 = &self.reference_lobes;
        let params = sc.setup_params(beta, t1);
        let scale = src.amplitude * FRAC_1_SQRT_2;

        let (ex, ey): (Vec<_>, Vec<_>) = sc
            .grid
            .nodes()
            .zip(lobes1.main.samples().iter().zip(lobes2.main.samples()))
            .map(|(nu, (p1, p2))| {
                (
                    Complex64::new(scale * p1.sqrt(), 0.0),
                    Complex64::from_polar(scale * p2.sqrt(), params.relative_phase(nu)),
                )
            })
            .unzip();
        let field = PolarizedFieldSpectrum::new(sc.grid, ex, ey)?;
        let mut out = field.post_select(beta);

        let (s, c) = beta.sin_cos();
        let power_scale = scale * scale;
        for (side, weight) in [(&lobes1.side, c * c), (&lobes2.side, s * s)] {
            if let Some(side) = side {
                out = out.sum(&side.scaled(power_scale * weight)?)?;
            }
        }
        Ok(out)
    }

    fn measure(&self, clean: &Spectrum, stream: u64) -> Spectrum {
        match &self.scenario.osa {
            Some(osa) => osa_trace_stream(clean, osa, &self.scenario.units, stream),
            None => clean.clone(),
        }
    }

    /// Applies the configured super-Gaussian filter, centred on the peak.
    pub fn filtered(&self, trace: &Spectrum) -> Result<Spectrum> {
        let settings = self.scenario.filter;
        if !settings.enabled {
            return Ok(trace.clone());
        }
        let filter = settings.build(peak_center(trace), self.scenario.bandwidth())?;
        Ok(filter.apply(trace))
    }

    pub fn amplification(&self, beta: f64, t1: f64) -> Result<f64> {
        let params = self.scenario.setup_params(beta, t1);
        let gamma = overlap_gamma(params.nu_minus(), params.bandwidth)?;
        amplification_factor(beta, gamma, params.delta())
    }

    /// Noise-free trace (OSA resolution applied, noise off), filtered.
    pub fn expected_trace(&self, beta: f64, t1: f64) -> Result<Spectrum> {
        let clean = self.postselected(beta, t1)?;
        let trace = match &self.scenario.osa {
            Some(osa) => {
                let quiet = crate::osa::OsaParams {
                    noise_floor: 0.0,
                    rel_noise: 0.0,
                    ..*osa
                };
                osa_trace_stream(&clean, &quiet, &self.scenario.units, 0)
            }
            None => clean,
        };
        self.filtered(&trace)
    }

    /// Simulates one measurement. `stream` selects the noise realization.
    pub fn evaluate(&self, beta: f64, t1: f64, stream: u64) -> Result<InterrogationRecord> {
        let a_effective = self.amplification(beta, t1)?;
        let clean = self.postselected(beta, t1)?;
        let raw = self.measure(&clean, stream);
        let filtered = self.filtered(&raw)?;
        let centroid_thz = centroid(&filtered)?;
        let units = &self.scenario.units;
        Ok(InterrogationRecord {
            beta,
            t1,
            centroid_nm_shift: units.shift_thz_to_nm(centroid_thz - self.reference_thz),
            reference_nm: units.speed_of_light() / self.reference_thz,
            transmitted_power: total_power(&clean),
            a_effective,
            centroid_thz,
            raw,
            filtered,
        })
    }

    /// Evaluates every angle at fixed `t1`; point `i` uses noise stream `i`.
    pub fn sweep_beta(&self, betas: &[f64], t1: f64) -> Vec<Result<InterrogationRecord>> {
        betas
            .par_iter()
            .enumerate()
            .map(|(i, &beta)| self.evaluate(beta, t1, i as u64))
            .collect()
    }

    /// Referenced centroid shift (nm) for each sensing-grating temperature at
    /// a fixed angle, paired with `t1 - t2`.
    pub fn sweep_temperature(&self, beta: f64, t1s: &[f64]) -> Result<Vec<(f64, f64)>> {
        t1s.par_iter()
            .enumerate()
            .map(|(i, &t1)| {
                self.evaluate(beta, t1, i as u64)
                    .map(|r| (t1 - self.scenario.t2, r.centroid_nm_shift))
            })
            .collect()
    }
}

/// Runs the full pipeline for the scenario's own β and T1.
pub fn simulate_interrogation(sc: &Scenario) -> Result<InterrogationRecord> {
    let it = Interrogator::new(sc.clone())?;
    it.evaluate(sc.beta, sc.t1, 0)
}
