use serde::Serialize;

use super::FrequencyGrid;
use crate::{Error, Result};

/// Real, non-negative power samples on a [`FrequencyGrid`] (arbitrary units).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    grid: FrequencyGrid,
    samples: Vec<f64>,
}

impl Spectrum {
    pub fn new(grid: FrequencyGrid, samples: Vec<f64>) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::InvalidSpectrum(format!(
                "{} samples for a {}-point grid",
                samples.len(),
                grid.len()
            )));
        }
        if let Some((i, v)) = samples
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_finite() || **v < 0.0)
        {
            return Err(Error::InvalidSpectrum(format!(
                "sample {i} = {v} is not a finite non-negative power"
            )));
        }
        Ok(Spectrum { grid, samples })
    }

    /// Samples `f` at every grid node. Panics if `f` returns a negative or
    /// non-finite value.
    pub fn from_fn(grid: FrequencyGrid, f: impl Fn(f64) -> f64) -> Self {
        let samples = grid.nodes().map(f).collect();
        Spectrum::new(grid, samples).expect("sampled function must be finite and non-negative")
    }

    pub fn zeros(grid: FrequencyGrid) -> Self {
        Spectrum {
            grid,
            samples: vec![0.0; grid.len()],
        }
    }

    /// Builds a spectrum from values known to satisfy the invariants, tidying
    /// `-0.0` and rounding-level negatives to zero.
    pub(crate) fn from_nonneg(grid: FrequencyGrid, mut samples: Vec<f64>) -> Self {
        debug_assert_eq!(samples.len(), grid.len());
        for s in &mut samples {
            debug_assert!(s.is_finite());
            if *s < 0.0 {
                *s = 0.0;
            }
        }
        Spectrum { grid, samples }
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor >= 0.0) || !factor.is_finite() {
            return Err(Error::param(
                "factor",
                format!("{factor} must be finite and >= 0"),
            ));
        }
        Ok(Spectrum {
            grid: self.grid,
            samples: self.samples.iter().map(|s| s * factor).collect(),
        })
    }

    /// Pointwise sum of two spectra on the same grid.
    pub fn sum(&self, other: &Spectrum) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::InvalidSpectrum(
                "spectra live on different grids".into(),
            ));
        }
        Ok(Spectrum {
            grid: self.grid,
            samples: self
                .samples
                .iter()
                .zip(&other.samples)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    /// Index and value of the largest sample (first one on ties).
    pub fn argmax(&self) -> (usize, f64) {
        self.samples
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (i, v)| {
                if v > best.1 {
                    (i, v)
                } else {
                    best
                }
            })
    }

    pub fn peak(&self) -> f64 {
        self.argmax().1
    }
}

/// Trapezoidal integral of `values` over the uniform grid.
pub(crate) fn trapezoid(grid: &FrequencyGrid, values: impl ExactSizeIterator<Item = f64>) -> f64 {
    let n = values.len();
    let mut acc = 0.0;
    for (i, v) in values.enumerate() {
        acc += if i == 0 || i + 1 == n { 0.5 * v } else { v };
    }
    acc * grid.spacing()
}

pub fn total_power(s: &Spectrum) -> f64 {
    trapezoid(&s.grid, s.samples.iter().copied())
}

/// Power-weighted mean frequency `∫ν S dν / ∫S dν` in THz.
pub fn centroid(s: &Spectrum) -> Result<f64> {
    let power = total_power(s);
    if !(power > 0.0) || !power.is_finite() {
        return Err(Error::NoSignal);
    }
    // Moments about the grid center keep the numerator well conditioned.
    let c = s.grid.center();
    let moment = trapezoid(
        &s.grid,
        s.grid.nodes().zip(&s.samples).map(|(nu, p)| (nu - c) * p),
    );
    Ok((c + moment / power).clamp(s.grid.start(), s.grid.end()))
}
