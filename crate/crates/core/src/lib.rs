//! Simulation and analysis of weak-value-amplified interrogation of fiber
//! Bragg grating (FBG) temperature sensors.
//!
//! Two FBGs held at slightly different temperatures reflect orthogonally
//! polarized copies of a broadband pulse. After recombination the field is
//! projected onto a near-orthogonal polarization state, which magnifies the
//! spectral centroid shift between the two reflections by an amplification
//! factor `A` at the cost of transmitted power.
//!
//! Module map:
//!
//! - [`spectral`]: frequency grids, spectra, centroids, super-Gaussian
//!   filtering, unit conversion and spectrum CSV I/O.
//! - [`optics`]: the polarization interferometer model (field synthesis,
//!   post-selection, analytic spectrum, amplification factor).
//! - [`sensor`]: FBG thermal response and reflection, the centroid-shift
//!   law, calibration fits and the end-to-end interrogation pipeline.
//! - [`osa`]: optical spectrum analyzer model and the SNR-limited search
//!   for the largest usable amplification.
//! - [`config`]: the JSON scenario file.

// `!(x > 0.0)` style checks are used on purpose: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod error;
pub mod format;
pub mod optics;
pub mod osa;
pub mod sensor;
pub mod spectral;

pub use error::{Error, Result};
pub use optics::{PolarizedFieldSpectrum, SetupParams};
pub use osa::{OsaParams, SnrReport};
pub use sensor::{CalibrationResult, FbgParams, Scenario, SideLobe, Source};
pub use spectral::{FrequencyGrid, Spectrum, SuperGaussianFilter, UnitContext};
