use serde::Serialize;

use super::Spectrum;
use crate::{Error, Result};

/// Flat-top pass band `exp[-((ν - center)/half_width)^order]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SuperGaussianFilter {
    center: f64,
    half_width: f64,
    order: u32,
}

impl SuperGaussianFilter {
    /// `half_width` may be `f64::INFINITY`, which makes the filter the identity.
    pub fn new(center: f64, half_width: f64, order: u32) -> Result<Self> {
        if !center.is_finite() {
            return Err(Error::param("center", format!("{center} is not finite")));
        }
        if !(half_width > 0.0) {
            return Err(Error::param(
                "half_width",
                format!("{half_width} must be positive"),
            ));
        }
        if order == 0 || !order.is_multiple_of(2) {
            return Err(Error::param(
                "order",
                format!("{order} must be a positive even integer"),
            ));
        }
        Ok(SuperGaussianFilter {
            center,
            half_width,
            order,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn gain(&self, nu: f64) -> f64 {
        let x = (nu - self.center) / self.half_width;
        (-x.powi(self.order as i32)).exp()
    }

    pub fn apply(&self, s: &Spectrum) -> Spectrum {
        let samples = s
            .grid()
            .nodes()
            .zip(s.samples())
            .map(|(nu, p)| p * self.gain(nu))
            .collect();
        Spectrum::from_nonneg(*s.grid(), samples)
    }
}

pub fn super_gaussian_filter(
    s: &Spectrum,
    center: f64,
    half_width: f64,
    order: u32,
) -> Result<Spectrum> {
    Ok(SuperGaussianFilter::new(center, half_width, order)?.apply(s))
}

/// Location of the highest sample, refined to sub-node precision by a
/// parabola through the maximum and its two neighbours.
pub fn peak_center(s: &Spectrum) -> f64 {
    let (i, _) = s.argmax();
    let grid = s.grid();
    let y = s.samples();
    if i == 0 || i + 1 == y.len() {
        return grid.node(i);
    }
    let (y0, y1, y2) = (y[i - 1], y[i], y[i + 1]);
    let curvature = y0 - 2.0 * y1 + y2;
    let offset = if curvature < 0.0 {
        (0.5 * (y0 - y2) / curvature).clamp(-0.5, 0.5)
    } else {
        0.0
    };
    grid.node(i) + offset * grid.spacing()
}
