use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Uniform sampling of optical frequency, in THz.
///
/// Nodes run from `center - span/2` to `center + span/2` inclusive, and all
/// of them are strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    center: f64,
    span: f64,
    n_points: usize,
}

impl FrequencyGrid {
    pub fn new(center: f64, span: f64, n_points: usize) -> Result<Self> {
        if !center.is_finite() || !span.is_finite() {
            return Err(Error::InvalidGrid(format!(
                "center {center} and span {span} must be finite"
            )));
        }
        if span <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "span {span} THz must be positive"
            )));
        }
        if n_points < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 points, got {n_points}"
            )));
        }
        let lowest = center - span / 2.0;
        if lowest <= 0.0 {
            return Err(Error::InvalidGrid(format!(
                "lowest node {lowest} THz is not a positive frequency"
            )));
        }
        Ok(FrequencyGrid {
            center,
            span,
            n_points,
        })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn span(&self) -> f64 {
        self.span
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.span / (self.n_points - 1) as f64
    }

    pub fn start(&self) -> f64 {
        self.center - self.span / 2.0
    }

    pub fn end(&self) -> f64 {
        self.center + self.span / 2.0
    }

    /// Frequency of node `i`.
    pub fn node(&self, i: usize) -> f64 {
        debug_assert!(i < self.n_points);
        if i + 1 == self.n_points {
            self.end()
        } else {
            self.start() + i as f64 * self.spacing()
        }
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        (0..self.n_points).map(move |i| self.node(i))
    }

    pub fn contains(&self, nu: f64) -> bool {
        nu >= self.start() && nu <= self.end()
    }

    /// Same frequency window sampled with `n_points` nodes.
    pub fn resampled(&self, n_points: usize) -> Result<Self> {
        FrequencyGrid::new(self.center, self.span, n_points)
    }
}

pub fn make_grid(center: f64, span: f64, n_points: usize) -> Result<FrequencyGrid> {
    FrequencyGrid::new(center, span, n_points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn three_nodes() {
        let g = make_grid(193.29, 2.0, 3).unwrap();
        let nodes: Vec<f64> = g.nodes().collect();
        assert_relative_eq!(nodes[0], 192.29, epsilon = 1e-12);
        assert_relative_eq!(nodes[1], 193.29, epsilon = 1e-12);
        assert_relative_eq!(nodes[2], 194.29, epsilon = 1e-12);
    }

    #[test]
    fn spacing() {
        let g = make_grid(193.29, 2.0, 2001).unwrap();
        assert_relative_eq!(g.spacing(), 0.001, epsilon = 1e-15);
        assert_eq!(g.node(2000), g.end());
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(make_grid(1.0, 4.0, 5).is_err());
        assert!(make_grid(193.0, 0.0, 5).is_err());
        assert!(make_grid(193.0, -1.0, 5).is_err());
        assert!(make_grid(193.0, 1.0, 1).is_err());
        assert!(make_grid(f64::NAN, 1.0, 10).is_err());
    }
}
