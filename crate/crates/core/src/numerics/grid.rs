use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Uniform sample axis `x_k = x_min + k h`, `k = 0..n_points`.
///
/// The point count is always odd so composite Simpson covers the whole axis
/// without a remainder panel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Grid<T> {
    x_min: T,
    x_max: T,
    n_points: usize,
    step: T,
}

impl<T: Real> Grid<T> {
    pub fn new(x_min: T, x_max: T, n_points: usize) -> Result<Self> {
        if !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(Error::InvalidRange {
                x_min: x_min.as_f64(),
                x_max: x_max.as_f64(),
            });
        }
        if n_points < 3 || n_points.is_multiple_of(2) {
            return Err(Error::EvenPointCount(n_points));
        }
        let step = (x_max - x_min) / T::from_index(n_points - 1);
        Ok(Self {
            x_min,
            x_max,
            n_points,
            step,
        })
    }

    pub fn x_min(&self) -> T {
        self.x_min
    }

    pub fn x_max(&self) -> T {
        self.x_max
    }

    pub fn len(&self) -> usize {
        self.n_points
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn step(&self) -> T {
        self.step
    }

    /// Position of sample `k`, computed by multiplication so there is no drift.
    #[inline]
    pub fn point(&self, k: usize) -> T {
        self.x_min + T::from_index(k) * self.step
    }

    pub fn points(&self) -> impl Iterator<Item = T> + '_ {
        (0..self.n_points).map(move |k| self.point(k))
    }

    /// Number of samples excluded at each edge by an interior window that
    /// drops `fraction` of the axis on either side.
    pub fn edge_margin(&self, fraction: f64) -> usize {
        ((self.n_points as f64) * fraction).floor() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_step() {
        let g = Grid::new(-12.0_f64, 12.0, 4001).unwrap();
        assert!((g.step() - 0.006).abs() < 1e-15);
        assert_eq!(g.point(0), -12.0);
        assert!((g.point(4000) - 12.0).abs() < 1e-12);
        assert!((g.point(2000)).abs() < 1e-12);
    }

    #[test]
    fn three_point_unit_grid() {
        let g = Grid::new(0.0, 1.0, 3).unwrap();
        let xs: Vec<f64> = g.points().collect();
        assert_eq!(xs, vec![0.0, 0.5, 1.0]);
    }

    #[test]
    fn rejects_even_and_tiny_counts() {
        assert!(matches!(Grid::new(-12.0, 12.0, 4000), Err(Error::EvenPointCount(4000))));
        assert!(matches!(Grid::new(0.0, 1.0, 1), Err(Error::EvenPointCount(1))));
    }

    #[test]
    fn rejects_bad_range() {
        assert!(matches!(Grid::new(1.0, 1.0, 5), Err(Error::InvalidRange { .. })));
        assert!(matches!(Grid::new(2.0, -1.0, 5), Err(Error::InvalidRange { .. })));
        assert!(Grid::new(f64::NAN, 1.0, 5).is_err());
    }

    #[test]
    fn points_are_affine_not_accumulated() {
        let g = Grid::new(-12.0_f64, 12.0, 4001).unwrap();
        for k in [1, 17, 999, 3999] {
            assert_eq!(g.point(k), -12.0 + (k as f64) * g.step());
        }
    }
}
