//! JSON scenario files.
//!
//! Physical inputs are given in the units an experimenter reads off a data
//! sheet (nm, ps, °C, degrees) and converted to the internal THz / radian
//! representation by [`ScenarioConfig::build`]. Unknown keys are rejected and
//! every error names the offending field path, e.g. `fbg1.fwhm_nm`.
//!
//! See `docs/formats.md` for the full schema.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::optics::{bandwidth_from_fwhm, pulse_bandwidth};
use crate::osa::{BetaSweep, OsaParams};
use crate::sensor::{FbgParams, FilterSettings, Scenario, SideLobe, Source};
use crate::spectral::{
    wavelength_to_frequency, FrequencyGrid, UnitContext, DEFAULT_REFERENCE_WAVELENGTH_NM,
};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    #[serde(default = "default_reference")]
    pub reference_wavelength_nm: f64,
    pub source: SourceConfig,
    pub fbg1: FbgConfig,
    pub fbg2: FbgConfig,
    #[serde(default)]
    pub interferometer: InterferometerConfig,
    #[serde(default)]
    pub postselect: PostselectConfig,
    pub temperatures: TemperatureConfig,
    #[serde(default)]
    pub filter: FilterConfig,
    #[serde(default)]
    pub osa: Option<OsaConfig>,
    #[serde(default)]
    pub grid: Option<GridConfig>,
}

fn default_reference() -> f64 {
    DEFAULT_REFERENCE_WAVELENGTH_NM
}

fn one() -> f64 {
    1.0
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SourceConfig {
    pub center_wavelength_nm: f64,
    /// Transform-limited pulse duration (intensity FWHM).
    pub pulse_duration_ps: f64,
    #[serde(default = "one")]
    pub amplitude_au: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FbgConfig {
    pub center_wavelength_nm: f64,
    pub kappa_nm_per_c: f64,
    /// Power FWHM of the main reflection lobe.
    pub fwhm_nm: f64,
    #[serde(default = "one")]
    pub efficiency_frac: f64,
    #[serde(default)]
    pub side_lobe: Option<SideLobeConfig>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SideLobeConfig {
    /// Offset from the main lobe; positive is toward longer wavelength.
    pub offset_nm: f64,
    pub rel_amplitude_frac: f64,
    pub fwhm_nm: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterferometerConfig {
    #[serde(default)]
    pub tau_ps: f64,
    #[serde(default)]
    pub phi_rad: f64,
    #[serde(default)]
    pub lcvr_rad: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PostselectConfig {
    #[serde(default)]
    pub beta_deg: Option<f64>,
    #[serde(default)]
    pub sweep: Option<BetaSweep>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TemperatureConfig {
    pub t2_ref_c: f64,
    pub t1_c: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FilterConfig {
    #[serde(default = "yes")]
    pub enabled: bool,
    #[serde(default = "default_order")]
    pub order: u32,
    #[serde(default = "default_half_width")]
    pub half_width_over_b: f64,
}

fn yes() -> bool {
    true
}

fn default_order() -> u32 {
    FilterSettings::default().order
}

fn default_half_width() -> f64 {
    FilterSettings::default().half_width_over_b
}

impl Default for FilterConfig {
    fn default() -> Self {
        let d = FilterSettings::default();
        FilterConfig {
            enabled: d.enabled,
            order: d.order,
            half_width_over_b: d.half_width_over_b,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OsaConfig {
    pub rbw_nm: f64,
    #[serde(default)]
    pub noise_floor_au: f64,
    #[serde(default)]
    pub rel_noise_frac: f64,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub center_thz: f64,
    pub span_thz: f64,
    pub n_points: usize,
}

fn at(path: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::InvalidParameter { reason, .. } => Error::config(path, reason),
        Error::InvalidGrid(m) => Error::config(path, m),
        Error::Config { .. } => e,
        other => Error::config(path, other.to_string()),
    }
}

fn require(ok: bool, path: &str, message: impl Into<String>) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::config(path, message))
    }
}

impl FbgConfig {
    fn build(&self, name: &str, units: &UnitContext) -> Result<FbgParams> {
        let p = |field: &str| format!("{name}.{field}");
        let center_ref = wavelength_to_frequency(self.center_wavelength_nm)
            .map_err(at(&p("center_wavelength_nm")))?;
        require(
            self.fwhm_nm > 0.0 && self.fwhm_nm.is_finite(),
            &p("fwhm_nm"),
            format!("{} must be positive", self.fwhm_nm),
        )?;
        require(
            self.efficiency_frac > 0.0 && self.efficiency_frac <= 1.0,
            &p("efficiency_frac"),
            format!("{} must lie in (0, 1]", self.efficiency_frac),
        )?;
        require(
            self.kappa_nm_per_c.is_finite(),
            &p("kappa_nm_per_c"),
            "must be finite",
        )?;
        let side_lobe = match &self.side_lobe {
            None => None,
            Some(s) => {
                require(
                    s.fwhm_nm > 0.0 && s.fwhm_nm.is_finite(),
                    &p("side_lobe.fwhm_nm"),
                    format!("{} must be positive", s.fwhm_nm),
                )?;
                require(
                    (0.0..1.0).contains(&s.rel_amplitude_frac),
                    &p("side_lobe.rel_amplitude_frac"),
                    format!("{} must lie in [0, 1)", s.rel_amplitude_frac),
                )?;
                require(
                    s.offset_nm.is_finite(),
                    &p("side_lobe.offset_nm"),
                    "must be finite",
                )?;
                Some(SideLobe {
                    offset: units.shift_nm_to_thz(s.offset_nm),
                    rel_amplitude: s.rel_amplitude_frac,
                    width: bandwidth_from_fwhm(units.width_nm_to_thz(s.fwhm_nm)),
                })
            }
        };
        Ok(FbgParams {
            center_ref,
            kappa_nm_per_c: self.kappa_nm_per_c,
            bandwidth: bandwidth_from_fwhm(units.width_nm_to_thz(self.fwhm_nm)),
            reflect_efficiency: self.efficiency_frac,
            side_lobe,
        })
    }
}

impl ScenarioConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: ScenarioConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::config(path, e.into_inner().to_string())
        })?;
        cfg.build()?;
        Ok(cfg)
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json_str(&fs::read_to_string(path)?)
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    pub fn units(&self) -> Result<UnitContext> {
        UnitContext::new(self.reference_wavelength_nm).map_err(at("reference_wavelength_nm"))
    }

    /// Sweep range from the file, or -89°..0° in 0.05° steps.
    pub fn sweep(&self) -> Result<BetaSweep> {
        match self.postselect.sweep {
            None => Ok(BetaSweep::default()),
            Some(s) => {
                BetaSweep::new(s.min_deg, s.max_deg, s.step_deg).map_err(at("postselect.sweep"))
            }
        }
    }

    pub fn osa_params(&self) -> Result<Option<OsaParams>> {
        let Some(o) = &self.osa else { return Ok(None) };
        let p = OsaParams {
            rbw_nm: o.rbw_nm,
            noise_floor: o.noise_floor_au,
            rel_noise: o.rel_noise_frac,
            seed: o.seed,
        };
        p.validate().map_err(at("osa"))?;
        Ok(Some(p))
    }

    /// Resolves the file into a validated [`Scenario`]. T1 is the first
    /// entry of `temperatures.t1_c` and β is `postselect.beta_deg` (0° when
    /// absent).
    pub fn build(&self) -> Result<Scenario> {
        let units = self.units()?;
        let nu0 = wavelength_to_frequency(self.source.center_wavelength_nm)
            .map_err(at("source.center_wavelength_nm"))?;
        let bandwidth = pulse_bandwidth(self.source.pulse_duration_ps)
            .map_err(at("source.pulse_duration_ps"))?;
        require(
            self.source.amplitude_au > 0.0 && self.source.amplitude_au.is_finite(),
            "source.amplitude_au",
            "must be positive",
        )?;
        let fbg1 = self.fbg1.build("fbg1", &units)?;
        let fbg2 = self.fbg2.build("fbg2", &units)?;
        for (path, f) in [("fbg1.fwhm_nm", &fbg1), ("fbg2.fwhm_nm", &fbg2)] {
            require(
                f.bandwidth < bandwidth,
                path,
                "grating must be narrower than the source spectrum",
            )?;
        }

        let t = &self.temperatures;
        require(
            !t.t1_c.is_empty(),
            "temperatures.t1_c",
            "needs at least one temperature",
        )?;
        require(
            t.t2_ref_c.is_finite(),
            "temperatures.t2_ref_c",
            "must be finite",
        )?;
        for (i, v) in t.t1_c.iter().enumerate() {
            require(
                v.is_finite(),
                &format!("temperatures.t1_c[{i}]"),
                "must be finite",
            )?;
        }

        let beta_deg = self.postselect.beta_deg.unwrap_or(0.0);
        require(
            beta_deg.is_finite() && beta_deg.abs() <= 90.0,
            "postselect.beta_deg",
            format!("{beta_deg} must lie in [-90, 90]"),
        )?;
        self.sweep()?;

        let filter = FilterSettings {
            enabled: self.filter.enabled,
            order: self.filter.order,
            half_width_over_b: self.filter.half_width_over_b,
        };
        let bw_mean = 0.5 * (fbg1.bandwidth + fbg2.bandwidth);
        filter
            .build(0.5 * (fbg1.center_ref + fbg2.center_ref), bw_mean)
            .map_err(at("filter"))?;

        let grid = match &self.grid {
            Some(g) => {
                FrequencyGrid::new(g.center_thz, g.span_thz, g.n_points).map_err(at("grid"))?
            }
            None => Scenario::default_grid(&fbg1, &fbg2).map_err(at("grid"))?,
        };

        let ifm = &self.interferometer;
        for (path, v) in [
            ("interferometer.tau_ps", ifm.tau_ps),
            ("interferometer.phi_rad", ifm.phi_rad),
            ("interferometer.lcvr_rad", ifm.lcvr_rad),
        ] {
            require(v.is_finite(), path, "must be finite")?;
        }

        let sc = Scenario {
            source: Source {
                nu0,
                bandwidth,
                amplitude: self.source.amplitude_au,
            },
            fbg1,
            fbg2,
            t1: t.t1_c[0],
            t2: t.t2_ref_c,
            tau_ps: ifm.tau_ps,
            phi: ifm.phi_rad,
            gamma_lcvr: ifm.lcvr_rad,
            beta: beta_deg.to_radians(),
            filter,
            osa: self.osa_params()?,
            grid,
            units,
        };
        sc.validate().map_err(at("scenario"))?;
        for (i, &t1) in t.t1_c.iter().enumerate() {
            let nu1 = sc.nu1(t1);
            require(
                sc.grid.contains(nu1),
                &format!("temperatures.t1_c[{i}]"),
                format!("Bragg frequency {nu1} THz falls outside the grid"),
            )?;
        }
        Ok(sc)
    }
}
