//! Polarization-interferometer model behind the weak-value amplification.
//!
//! The two FBG reflections leave the interferometer as orthogonally polarized
//! Gaussian envelopes centred at `ν0 + ν1` (x̂) and `ν0 + ν2` (ŷ), with a
//! relative phase `2π(ν - ν0)τ + δ` on the ŷ arm. Projecting onto
//! `cosβ x̂ + sinβ ŷ` moves the output centroid to `ν0 + ν+ + A ν-`.
//!
//! The delay phase is referenced to the carrier `ν0`, so `δ` is the total
//! relative phase at the carrier frequency.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::spectral::{FrequencyGrid, Spectrum};
use crate::{Error, Result};

/// Smallest `|1 + γ sin2β cosδ|` treated as non-singular.
pub const SINGULARITY_THRESHOLD: f64 = 1e-12;

/// Interferometer parameters. Frequencies in THz, delay in ps, angles in rad.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SetupParams {
    /// Carrier frequency ν0.
    pub nu0: f64,
    /// Spectral width B: power envelopes fall to 1/e at `|ν - centre| = B`.
    pub bandwidth: f64,
    pub tau_ps: f64,
    /// Birefringence phase φ.
    pub phi: f64,
    /// Compensating retarder phase Γ.
    pub gamma_lcvr: f64,
    /// Post-selection angle β.
    pub beta: f64,
    /// Offset of the x̂ envelope from ν0.
    pub nu1: f64,
    /// Offset of the ŷ envelope from ν0.
    pub nu2: f64,
    /// Field scale E0; the power scale is `S0 = E0²`.
    pub amplitude: f64,
}

impl SetupParams {
    pub fn validate(&self) -> Result<()> {
        let finite = [
            ("nu0", self.nu0),
            ("bandwidth", self.bandwidth),
            ("tau_ps", self.tau_ps),
            ("phi", self.phi),
            ("gamma_lcvr", self.gamma_lcvr),
            ("beta", self.beta),
            ("nu1", self.nu1),
            ("nu2", self.nu2),
            ("amplitude", self.amplitude),
        ];
        if let Some((name, v)) = finite.iter().find(|(_, v)| !v.is_finite()) {
            return Err(Error::param(name, format!("{v} is not finite")));
        }
        if self.nu0 <= 0.0 {
            return Err(Error::param("nu0", "carrier frequency must be positive"));
        }
        if self.bandwidth <= 0.0 {
            return Err(Error::param("bandwidth", "must be positive"));
        }
        if self.beta.abs() > FRAC_PI_2 + 1e-12 {
            return Err(Error::param(
                "beta",
                format!("{} rad is outside [-π/2, π/2]", self.beta),
            ));
        }
        Ok(())
    }

    /// Uncompensated phase δ = φ - Γ.
    pub fn delta(&self) -> f64 {
        self.phi - self.gamma_lcvr
    }

    pub fn nu_plus(&self) -> f64 {
        0.5 * (self.nu1 + self.nu2)
    }

    pub fn nu_minus(&self) -> f64 {
        0.5 * (self.nu1 - self.nu2)
    }

    pub fn gamma(&self) -> f64 {
        (-(self.nu_minus() / self.bandwidth).powi(2)).exp()
    }

    /// γ cos δ, the quantity that bounds the achievable amplification.
    pub fn g(&self) -> f64 {
        self.gamma() * self.delta().cos()
    }

    pub fn s0(&self) -> f64 {
        self.amplitude * self.amplitude
    }

    pub(crate) fn relative_phase(&self, nu: f64) -> f64 {
        2.0 * PI * (nu - self.nu0) * self.tau_ps + self.delta()
    }
}

/// x̂ and ŷ complex field envelopes sampled on a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PolarizedFieldSpectrum {
    grid: FrequencyGrid,
    ex: Vec<Complex64>,
    ey: Vec<Complex64>,
}

impl PolarizedFieldSpectrum {
    pub fn new(grid: FrequencyGrid, ex: Vec<Complex64>, ey: Vec<Complex64>) -> Result<Self> {
        if ex.len() != grid.len() || ey.len() != grid.len() {
            return Err(Error::InvalidSpectrum(format!(
                "field components of length {}/{} on a {}-point grid",
                ex.len(),
                ey.len(),
                grid.len()
            )));
        }
        if ex
            .iter()
            .chain(&ey)
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidSpectrum("non-finite field sample".into()));
        }
        Ok(PolarizedFieldSpectrum { grid, ex, ey })
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn ex(&self) -> &[Complex64] {
        &self.ex
    }

    pub fn ey(&self) -> &[Complex64] {
        &self.ey
    }

    /// Power spectrum after projection onto `cosβ x̂ + sinβ ŷ`.
    pub fn post_select(&self, beta: f64) -> Spectrum {
        let (s, c) = beta.sin_cos();
        let samples = self
            .ex
            .iter()
            .zip(&self.ey)
            .map(|(x, y)| (x * c + y * s).norm_sqr())
            .collect();
        Spectrum::from_nonneg(self.grid, samples)
    }

    /// Unprojected power `|ex|² + |ey|²`.
    pub fn total_intensity(&self) -> Spectrum {
        let samples = self
            .ex
            .iter()
            .zip(&self.ey)
            .map(|(x, y)| x.norm_sqr() + y.norm_sqr())
            .collect();
        Spectrum::from_nonneg(self.grid, samples)
    }
}

/// Field after the recombining beam splitter.
pub fn jones_field(p: &SetupParams, grid: &FrequencyGrid) -> Result<PolarizedFieldSpectrum> {
    p.validate()?;
    let scale = p.amplitude * FRAC_1_SQRT_2;
    let two_b2 = 2.0 * p.bandwidth * p.bandwidth;
    let (ex, ey) = grid
        .nodes()
        .map(|nu| {
            let x = scale * (-(nu - p.nu0 - p.nu1).powi(2) / two_b2).exp();
            let y = scale * (-(nu - p.nu0 - p.nu2).powi(2) / two_b2).exp();
            (
                Complex64::new(x, 0.0),
                Complex64::from_polar(y, p.relative_phase(nu)),
            )
        })
        .unzip();
    PolarizedFieldSpectrum::new(*grid, ex, ey)
}

pub fn post_select(field: &PolarizedFieldSpectrum, beta: f64) -> Spectrum {
    field.post_select(beta)
}

/// Closed-form post-selected spectrum, written as direct, cross-weighted and
/// interference terms.
pub fn output_spectrum_analytic(p: &SetupParams, grid: &FrequencyGrid) -> Result<Spectrum> {
    p.validate()?;
    let (s, c) = p.beta.sin_cos();
    let b2 = p.bandwidth * p.bandwidth;
    let gamma = p.gamma();
    let half_s0 = 0.5 * p.s0();
    let samples = grid
        .nodes()
        .map(|nu| {
            let x = nu - p.nu0;
            let direct1 = c * c * (-(x - p.nu1).powi(2) / b2).exp();
            let direct2 = s * s * (-(x - p.nu2).powi(2) / b2).exp();
            let cross = 2.0
                * c
                * s
                * gamma
                * (-(x - p.nu_plus()).powi(2) / b2).exp()
                * p.relative_phase(nu).cos();
            half_s0 * (direct1 + direct2 + cross)
        })
        .collect();
    Ok(Spectrum::from_nonneg(*grid, samples))
}

pub fn overlap_gamma(nu_minus: f64, bandwidth: f64) -> Result<f64> {
    if !(bandwidth > 0.0) {
        return Err(Error::param(
            "bandwidth",
            format!("{bandwidth} must be positive"),
        ));
    }
    Ok((-(nu_minus / bandwidth).powi(2)).exp())
}

/// `A = cos2β / (1 + γ sin2β cosδ)`.
pub fn amplification_factor(beta: f64, gamma: f64, delta: f64) -> Result<f64> {
    let (sin2b, cos2b) = (2.0 * beta).sin_cos();
    let denominator = 1.0 + gamma * sin2b * delta.cos();
    if denominator.abs() <= SINGULARITY_THRESHOLD {
        return Err(Error::SingularPostSelection { denominator });
    }
    Ok(cos2b / denominator)
}

/// Both stationary points of `A(β)` for fixed `g = γ cosδ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MaxAmplification {
    /// `1/√(1 - g²)`.
    pub a_max: f64,
    /// `-½ arcsin g`, where `A = +a_max`.
    pub beta_star: f64,
    /// Mirrored branch `-π/2 + ½ arcsin g`, where `A = -a_max`.
    pub beta_conjugate: f64,
    pub g: f64,
}

pub fn max_amplification(gamma: f64, delta: f64) -> Result<MaxAmplification> {
    let g = gamma * delta.cos();
    if !(g.abs() < 1.0) {
        return Err(Error::UnboundedAmplification { g });
    }
    let half_arcsin = 0.5 * g.asin();
    Ok(MaxAmplification {
        a_max: 1.0 / (1.0 - g * g).sqrt(),
        beta_star: -half_arcsin,
        beta_conjugate: -FRAC_PI_2 + half_arcsin,
        g,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AnalyticCentroid {
    /// `ν0 + ν+ + A ν-` in THz.
    pub nu: f64,
    pub amplification: f64,
    /// `false` when `|ν-| > 0.1 B` or `|τ| > 0.01 / B`; the value is still
    /// computed but the linearization behind it no longer holds.
    pub weak_regime: bool,
}

pub fn analytic_centroid(p: &SetupParams) -> Result<AnalyticCentroid> {
    p.validate()?;
    let a = amplification_factor(p.beta, p.gamma(), p.delta())?;
    let weak_regime =
        p.nu_minus().abs() <= 0.1 * p.bandwidth && p.tau_ps.abs() <= 0.01 / p.bandwidth;
    Ok(AnalyticCentroid {
        nu: p.nu0 + p.nu_plus() + a * p.nu_minus(),
        amplification: a,
        weak_regime,
    })
}

/// Spectral width B of a transform-limited Gaussian pulse with intensity
/// FWHM `t_fwhm_ps`: `B² = ln2 / (π² T²)`.
pub fn pulse_bandwidth(t_fwhm_ps: f64) -> Result<f64> {
    if !(t_fwhm_ps > 0.0) || !t_fwhm_ps.is_finite() {
        return Err(Error::param(
            "t_fwhm",
            format!("{t_fwhm_ps} ps must be positive"),
        ));
    }
    Ok(std::f64::consts::LN_2.sqrt() / (PI * t_fwhm_ps))
}

/// Power FWHM `2B√ln2` of an envelope with spectral width B.
pub fn power_fwhm(bandwidth: f64) -> f64 {
    2.0 * bandwidth * std::f64::consts::LN_2.sqrt()
}

/// Inverse of [`power_fwhm`].
pub fn bandwidth_from_fwhm(fwhm: f64) -> f64 {
    fwhm / (2.0 * std::f64::consts::LN_2.sqrt())
}
