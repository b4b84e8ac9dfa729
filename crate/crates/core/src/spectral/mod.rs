//! Frequency grids, power spectra and the numerical tools applied to them.
//!
//! Everything here works in THz. Integrals use the trapezoidal rule on the
//! uniform grid.

mod csv;
mod filter;
mod grid;
mod spectrum;
mod units;

pub use self::csv::{read_spectrum, read_spectrum_csv, write_spectrum, write_spectrum_csv};
pub use filter::{peak_center, super_gaussian_filter, SuperGaussianFilter};
pub use grid::{make_grid, FrequencyGrid};
pub use spectrum::{centroid, total_power, Spectrum};
pub use units::{
    frequency_to_wavelength, wavelength_to_frequency, UnitContext, DEFAULT_REFERENCE_WAVELENGTH_NM,
    SPEED_OF_LIGHT_NM_THZ,
};
