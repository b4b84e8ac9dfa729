//! FBG temperature response, reflection spectra, calibration fits and the
//! end-to-end interrogation pipeline.

mod calibration;
mod fbg;
mod pipeline;
mod scenario;

pub use calibration::{centroid_shift_model, fit_sensitivity, CalibrationResult};
pub use fbg::{bragg_center, reflect, reflect_lobes, FbgParams, ReflectedLobes, SideLobe};
pub use pipeline::{simulate_interrogation, InterrogationRecord, Interrogator};
pub use scenario::{FilterSettings, Scenario, Source};
