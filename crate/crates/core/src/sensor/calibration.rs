use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Least-squares line through (temperature difference, centroid shift) data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CalibrationResult {
    pub slope_nm_per_c: f64,
    pub intercept_nm: f64,
    pub residual_rms_nm: f64,
    pub n_points: usize,
}

/// Referenced centroid shift in nm for a temperature difference `dt`:
/// `(κ/2)(A+1)·dt + (A+1)·static_offset/2`, where `static_offset` is the
/// reference-temperature Bragg mismatch between the gratings in nm.
pub fn centroid_shift_model(dt: f64, kappa_nm_per_c: f64, a: f64, static_offset_nm: f64) -> f64 {
    0.5 * (a + 1.0) * (kappa_nm_per_c * dt + static_offset_nm)
}

pub fn fit_sensitivity(points: &[(f64, f64)]) -> Result<CalibrationResult> {
    if points.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "need at least 2 points, got {}",
            points.len()
        )));
    }
    if let Some((dt, shift)) = points
        .iter()
        .find(|(x, y)| !x.is_finite() || !y.is_finite())
    {
        return Err(Error::DegenerateFit(format!(
            "non-finite point ({dt}, {shift})"
        )));
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let (sxx, sxy) = points.iter().fold((0.0, 0.0), |(sxx, sxy), &(x, y)| {
        let dx = x - mean_x;
        (sxx + dx * dx, sxy + dx * (y - mean_y))
    });
    let spread = points
        .iter()
        .map(|p| (p.0 - mean_x).abs())
        .fold(0.0, f64::max);
    if spread <= 1e-12 * mean_x.abs().max(1.0) {
        return Err(Error::DegenerateFit(
            "all temperature differences are equal".into(),
        ));
    }
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let ss_res: f64 = points
        .iter()
        .map(|&(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(CalibrationResult {
        slope_nm_per_c: slope,
        intercept_nm: intercept,
        residual_rms_nm: (ss_res / n).sqrt(),
        n_points: points.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn unamplified_law() {
        assert_relative_eq!(
            centroid_shift_model(11.0, 0.009, 1.0, 0.0),
            0.099,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            centroid_shift_model(11.0, 0.009, 1.0, 0.09),
            0.189,
            max_relative = 1e-14
        );
        assert_relative_eq!(
            centroid_shift_model(0.0, 0.009, 6.0, 0.09),
            7.0 * 0.09 / 2.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn exact_lines() {
        for &slope in &[0.009, 0.035] {
            let pts: Vec<_> = (0..13).map(|i| (i as f64, slope * i as f64)).collect();
            let fit = fit_sensitivity(&pts).unwrap();
            assert_relative_eq!(fit.slope_nm_per_c, slope, max_relative = 1e-12);
            assert!(fit.residual_rms_nm < 1e-15);
            assert_eq!(fit.n_points, 13);
        }
    }

    #[test]
    fn alternating_perturbation() {
        let pts: Vec<_> = (0..12)
            .map(|i| {
                let x = i as f64;
                (x, 0.009 * x + if i % 2 == 0 { 0.001 } else { -0.001 })
            })
            .collect();
        let fit = fit_sensitivity(&pts).unwrap();
        // Σ(x - x̄)e = -6e-3 and Sxx = 143 for this design.
        assert_relative_eq!(
            fit.slope_nm_per_c,
            0.009 - 6e-3 / 143.0,
            max_relative = 1e-10
        );
        assert!((fit.slope_nm_per_c - 0.009).abs() < 5e-4);
        let expected_rms = ((12e-6 - 36e-6 / 143.0) / 12.0f64).sqrt();
        assert_relative_eq!(fit.residual_rms_nm, expected_rms, max_relative = 1e-9);
        assert!((fit.residual_rms_nm - 0.001).abs() < 2e-5);
    }

    #[test]
    fn degenerate() {
        assert!(matches!(
            fit_sensitivity(&[(1.0, 0.1), (1.0, 0.2)]),
            Err(Error::DegenerateFit(_))
        ));
        assert!(matches!(
            fit_sensitivity(&[(1.0, 0.1)]),
            Err(Error::DegenerateFit(_))
        ));
        assert!(matches!(fit_sensitivity(&[]), Err(Error::DegenerateFit(_))));
    }

    /// Normal equations solved with Cramer's rule on raw sums.
    fn normal_equations(points: &[(f64, f64)]) -> (f64, f64) {
        let n = points.len() as f64;
        let sx: f64 = points.iter().map(|p| p.0).sum();
        let sy: f64 = points.iter().map(|p| p.1).sum();
        let sxx: f64 = points.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = points.iter().map(|p| p.0 * p.1).sum();
        let det = n * sxx - sx * sx;
        ((n * sxy - sx * sy) / det, (sxx * sy - sx * sxy) / det)
    }

    proptest! {
        #[test]
        fn matches_normal_equations(points in prop::collection::vec((-20.0f64..20.0, -1.0f64..1.0), 3..15)) {
            prop_assume!(points.iter().any(|p| (p.0 - points[0].0).abs() > 0.5));
            let fit = fit_sensitivity(&points).unwrap();
            let (slope, intercept) = normal_equations(&points);
            prop_assert!((fit.slope_nm_per_c - slope).abs() <= 1e-10 * slope.abs().max(1e-3));
            prop_assert!((fit.intercept_nm - intercept).abs() <= 1e-10 * intercept.abs().max(1e-3));
        }

        #[test]
        fn order_invariant(mut points in prop::collection::vec((-20.0f64..20.0, -1.0f64..1.0), 3..15)) {
            prop_assume!(points.iter().any(|p| (p.0 - points[0].0).abs() > 0.5));
            let a = fit_sensitivity(&points).unwrap();
            points.reverse();
            let b = fit_sensitivity(&points).unwrap();
            prop_assert!((a.slope_nm_per_c - b.slope_nm_per_c).abs() <= 1e-12 * a.slope_nm_per_c.abs().max(1e-6));
        }
    }
}
