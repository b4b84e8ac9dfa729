use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Speed of light in nm·THz, so that `ν [THz] = c / λ [nm]`.
pub const SPEED_OF_LIGHT_NM_THZ: f64 = 299_792.458;

pub const DEFAULT_REFERENCE_WAVELENGTH_NM: f64 = 1551.0;

pub fn wavelength_to_frequency(lambda_nm: f64) -> Result<f64> {
    if !(lambda_nm > 0.0) || !lambda_nm.is_finite() {
        return Err(Error::param(
            "wavelength",
            format!("{lambda_nm} nm must be positive"),
        ));
    }
    Ok(SPEED_OF_LIGHT_NM_THZ / lambda_nm)
}

pub fn frequency_to_wavelength(nu_thz: f64) -> Result<f64> {
    if !(nu_thz > 0.0) || !nu_thz.is_finite() {
        return Err(Error::param(
            "frequency",
            format!("{nu_thz} THz must be positive"),
        ));
    }
    Ok(SPEED_OF_LIGHT_NM_THZ / nu_thz)
}

/// Linearized wavelength/frequency conversions about a reference wavelength.
///
/// Widths convert by magnitude (`Δν = cΔλ/λ²`). Shifts carry the sign flip
/// of `ν = c/λ`: a positive wavelength shift (towards the red) is a negative
/// frequency shift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnitContext {
    reference_wavelength_nm: f64,
}

impl Default for UnitContext {
    fn default() -> Self {
        UnitContext {
            reference_wavelength_nm: DEFAULT_REFERENCE_WAVELENGTH_NM,
        }
    }
}

impl UnitContext {
    pub fn new(reference_wavelength_nm: f64) -> Result<Self> {
        if !(reference_wavelength_nm > 0.0) || !reference_wavelength_nm.is_finite() {
            return Err(Error::param(
                "reference_wavelength",
                format!("{reference_wavelength_nm} nm must be positive"),
            ));
        }
        Ok(UnitContext {
            reference_wavelength_nm,
        })
    }

    pub fn speed_of_light(&self) -> f64 {
        SPEED_OF_LIGHT_NM_THZ
    }

    pub fn reference_wavelength_nm(&self) -> f64 {
        self.reference_wavelength_nm
    }

    pub fn reference_frequency_thz(&self) -> f64 {
        SPEED_OF_LIGHT_NM_THZ / self.reference_wavelength_nm
    }

    fn thz_per_nm(&self) -> f64 {
        SPEED_OF_LIGHT_NM_THZ / (self.reference_wavelength_nm * self.reference_wavelength_nm)
    }

    pub fn width_nm_to_thz(&self, width_nm: f64) -> f64 {
        width_nm * self.thz_per_nm()
    }

    pub fn width_thz_to_nm(&self, width_thz: f64) -> f64 {
        width_thz / self.thz_per_nm()
    }

    pub fn shift_nm_to_thz(&self, shift_nm: f64) -> f64 {
        -shift_nm * self.thz_per_nm()
    }

    pub fn shift_thz_to_nm(&self, shift_thz: f64) -> f64 {
        -shift_thz / self.thz_per_nm()
    }
}
