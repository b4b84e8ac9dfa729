use serde::Serialize;

use super::{bragg_center, FbgParams};
use crate::optics::SetupParams;
use crate::osa::OsaParams;
use crate::spectral::{FrequencyGrid, SuperGaussianFilter, UnitContext};
use crate::{Error, Result};

/// Broadband pulsed source illuminating both gratings.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Source {
    /// Carrier frequency (THz).
    pub nu0: f64,
    /// Spectral width B (THz), see [`crate::optics::pulse_bandwidth`].
    pub bandwidth: f64,
    /// Field scale E0.
    pub amplitude: f64,
}

/// Numerical super-Gaussian filter applied to each measured spectrum before
/// its centroid is taken. The pass band is centred on the spectrum's peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FilterSettings {
    pub enabled: bool,
    pub order: u32,
    /// Half-width in units of the grating bandwidth B.
    pub half_width_over_b: f64,
}

impl Default for FilterSettings {
    fn default() -> Self {
        FilterSettings {
            enabled: true,
            order: 4,
            half_width_over_b: 1.5,
        }
    }
}

impl FilterSettings {
    pub fn disabled() -> Self {
        FilterSettings {
            enabled: false,
            ..Default::default()
        }
    }

    pub fn build(&self, center: f64, bandwidth: f64) -> Result<SuperGaussianFilter> {
        SuperGaussianFilter::new(center, self.half_width_over_b * bandwidth, self.order)
    }
}

/// One operating point of the interrogator: source, gratings, temperatures,
/// interferometer phases, post-selection angle and detection chain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Scenario {
    pub source: Source,
    pub fbg1: FbgParams,
    pub fbg2: FbgParams,
    /// Temperature of the sensing grating (°C).
    pub t1: f64,
    /// Temperature of the reference grating (°C).
    pub t2: f64,
    pub tau_ps: f64,
    pub phi: f64,
    pub gamma_lcvr: f64,
    pub beta: f64,
    pub filter: FilterSettings,
    pub osa: Option<OsaParams>,
    pub grid: FrequencyGrid,
    pub units: UnitContext,
}

impl Scenario {
    pub fn validate(&self) -> Result<()> {
        self.fbg1.validate()?;
        self.fbg2.validate()?;
        if !(self.source.bandwidth > 0.0) || !(self.source.nu0 > 0.0) {
            return Err(Error::param(
                "source",
                "carrier and bandwidth must be positive",
            ));
        }
        for (name, fbg) in [("fbg1", &self.fbg1), ("fbg2", &self.fbg2)] {
            if fbg.bandwidth >= self.source.bandwidth {
                return Err(Error::param(
                    if name == "fbg1" { "fbg1.bandwidth" } else { "fbg2.bandwidth" },
                    format!(
                        "grating bandwidth {} THz must be narrower than the source bandwidth {} THz",
                        fbg.bandwidth, self.source.bandwidth
                    ),
                ));
            }
        }
        if self.filter.enabled {
            self.filter.build(self.grid.center(), self.bandwidth())?;
        }
        if let Some(osa) = &self.osa {
            osa.validate()?;
        }
        if !self.t1.is_finite() || !self.t2.is_finite() {
            return Err(Error::param("temperature", "must be finite"));
        }
        self.setup_params(self.beta, self.t1).validate()
    }

    /// Bandwidth B shared by the two reflections (their mean).
    pub fn bandwidth(&self) -> f64 {
        0.5 * (self.fbg1.bandwidth + self.fbg2.bandwidth)
    }

    pub fn delta(&self) -> f64 {
        self.phi - self.gamma_lcvr
    }

    pub fn dt(&self) -> f64 {
        self.t1 - self.t2
    }

    pub fn nu1(&self, t1: f64) -> f64 {
        bragg_center(&self.fbg1, t1, self.t2, &self.units)
    }

    pub fn nu2(&self) -> f64 {
        self.fbg2.center_ref
    }

    /// Interferometer parameters at angle `beta` with the sensing grating at `t1`.
    pub fn setup_params(&self, beta: f64, t1: f64) -> SetupParams {
        SetupParams {
            nu0: self.source.nu0,
            bandwidth: self.bandwidth(),
            tau_ps: self.tau_ps,
            phi: self.phi,
            gamma_lcvr: self.gamma_lcvr,
            beta,
            nu1: self.nu1(t1) - self.source.nu0,
            nu2: self.nu2() - self.source.nu0,
            amplitude: self.source.amplitude,
        }
    }

    /// Default grid: centred between the two gratings, ten main-lobe FWHMs
    /// wide, 4001 nodes.
    pub fn default_grid(fbg1: &FbgParams, fbg2: &FbgParams) -> Result<FrequencyGrid> {
        let center = 0.5 * (fbg1.center_ref + fbg2.center_ref);
        let fwhm = crate::optics::power_fwhm(fbg1.bandwidth.max(fbg2.bandwidth));
        FrequencyGrid::new(center, 10.0 * fwhm, 4001)
    }
}
