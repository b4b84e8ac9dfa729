use serde::Serialize;

use crate::spectral::{FrequencyGrid, Spectrum, UnitContext};
use crate::{Error, Result};

/// Satellite reflection lobe, positioned relative to the main lobe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SideLobe {
    /// Frequency offset from the main lobe centre (THz).
    pub offset: f64,
    /// Peak power relative to the main lobe.
    pub rel_amplitude: f64,
    /// Power 1/e half-width (THz).
    pub width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FbgParams {
    /// Bragg frequency at the reference temperature (THz).
    pub center_ref: f64,
    /// Thermal sensitivity in nm/°C; positive means red-shifting with heat.
    pub kappa_nm_per_c: f64,
    /// Power 1/e half-width of the main reflection lobe (THz).
    pub bandwidth: f64,
    pub reflect_efficiency: f64,
    pub side_lobe: Option<SideLobe>,
}

impl FbgParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.center_ref > 0.0) || !self.center_ref.is_finite() {
            return Err(Error::param(
                "center_ref",
                format!("{} THz must be positive", self.center_ref),
            ));
        }
        if !self.kappa_nm_per_c.is_finite() {
            return Err(Error::param("kappa", "must be finite"));
        }
        if !(self.bandwidth > 0.0) || !self.bandwidth.is_finite() {
            return Err(Error::param(
                "bandwidth",
                format!("{} THz must be positive", self.bandwidth),
            ));
        }
        if !(self.reflect_efficiency > 0.0 && self.reflect_efficiency <= 1.0) {
            return Err(Error::param(
                "reflect_efficiency",
                format!("{} must lie in (0, 1]", self.reflect_efficiency),
            ));
        }
        if let Some(lobe) = self.side_lobe {
            if !(0.0..1.0).contains(&lobe.rel_amplitude) {
                return Err(Error::param(
                    "side_lobe.rel_amplitude",
                    format!("{} must lie in [0, 1)", lobe.rel_amplitude),
                ));
            }
            if !(lobe.width > 0.0) || !lobe.offset.is_finite() {
                return Err(Error::param(
                    "side_lobe",
                    "width must be positive and offset finite",
                ));
            }
        }
        Ok(())
    }

    pub fn kappa_thz_per_c(&self, units: &UnitContext) -> f64 {
        units.shift_nm_to_thz(self.kappa_nm_per_c)
    }
}

/// Bragg frequency at temperature `t` for a grating referenced at `t_ref`.
pub fn bragg_center(f: &FbgParams, t: f64, t_ref: f64, units: &UnitContext) -> f64 {
    f.center_ref + f.kappa_thz_per_c(units) * (t - t_ref)
}

/// Main and side lobes of one reflection, kept apart because they combine
/// differently at the output polarizer.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectedLobes {
    pub main: Spectrum,
    pub side: Option<Spectrum>,
}

impl ReflectedLobes {
    pub fn total(&self) -> Spectrum {
        match &self.side {
            Some(side) => self.main.sum(side).expect("lobes share a grid"),
            None => self.main.clone(),
        }
    }
}

pub fn reflect_lobes(
    f: &FbgParams,
    source_bandwidth: f64,
    source_nu0: f64,
    center: f64,
    grid: &FrequencyGrid,
) -> Result<ReflectedLobes> {
    f.validate()?;
    if !(source_bandwidth > 0.0) {
        return Err(Error::param("source_bandwidth", "must be positive"));
    }
    if !grid.contains(center) {
        return Err(Error::param(
            "center",
            format!(
                "{center} THz lies outside the grid [{}, {}]",
                grid.start(),
                grid.end()
            ),
        ));
    }
    let weight = f.reflect_efficiency * (-((center - source_nu0) / source_bandwidth).powi(2)).exp();
    let main = Spectrum::from_fn(*grid, |nu| {
        weight * (-((nu - center) / f.bandwidth).powi(2)).exp()
    });
    let side = f.side_lobe.map(|lobe| {
        let at = center + lobe.offset;
        let peak = weight * lobe.rel_amplitude;
        Spectrum::from_fn(*grid, |nu| peak * (-((nu - at) / lobe.width).powi(2)).exp())
    });
    Ok(ReflectedLobes { main, side })
}

/// Reflected power spectrum of a grating centred at `center`, illuminated by a
/// Gaussian source of width `source_bandwidth` around `source_nu0`.
pub fn reflect(
    f: &FbgParams,
    source_bandwidth: f64,
    source_nu0: f64,
    center: f64,
    grid: &FrequencyGrid,
) -> Result<Spectrum> {
    Ok(reflect_lobes(f, source_bandwidth, source_nu0, center, grid)?.total())
}
