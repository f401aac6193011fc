use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex;
use num_traits::Zero;

use super::Grid;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Values a sampled function may carry: the real scalar itself or its complex
/// extension.
pub trait Sample<T>:
    Copy + Debug + Send + Sync + Zero + Add<Output = Self> + Sub<Output = Self> + Mul<T, Output = Self>
{
}

impl<T, S> Sample<T> for S where
    S: Copy + Debug + Send + Sync + Zero + Add<Output = S> + Sub<Output = S> + Mul<T, Output = S>
{
}

/// A function tabulated on a [`Grid`]. The value count always equals the grid size.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction<T, S = T> {
    grid: Grid<T>,
    values: Vec<S>,
}

pub type ComplexFunction<T> = SampledFunction<T, Complex<T>>;

impl<T: Real, S: Sample<T>> SampledFunction<T, S> {
    pub fn new(grid: Grid<T>, values: Vec<S>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid<T>, f: impl Fn(T) -> S) -> Self {
        let values = grid.points().map(f).collect();
        Self { grid, values }
    }

    pub fn zeros(grid: Grid<T>) -> Self {
        Self {
            grid,
            values: vec![S::zero(); grid.len()],
        }
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn into_values(self) -> Vec<S> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map<R: Sample<T>>(&self, f: impl Fn(S) -> R) -> SampledFunction<T, R> {
        SampledFunction {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise map with access to the sample position.
    pub fn map_with_x<R: Sample<T>>(&self, f: impl Fn(T, S) -> R) -> SampledFunction<T, R> {
        SampledFunction {
            grid: self.grid,
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(k, &v)| f(self.grid.point(k), v))
                .collect(),
        }
    }

    pub fn zip_map<U: Sample<T>, R: Sample<T>>(
        &self,
        other: &SampledFunction<T, U>,
        f: impl Fn(S, U) -> R,
    ) -> Result<SampledFunction<T, R>> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok(SampledFunction {
            grid: self.grid,
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        })
    }

    pub fn scale(&self, c: T) -> Self {
        self.map(|v| v * c)
    }
}

impl<T: Real> SampledFunction<T> {
    /// `∫ f g dx` for real functions.
    pub fn inner(&self, other: &SampledFunction<T>) -> Result<T> {
        Ok(super::integrate(&self.zip_map(other, |a, b| a * b)?))
    }

    pub fn norm_sq(&self) -> T {
        super::integrate(&self.map(|v| v * v))
    }

    /// L² distance `‖f − g‖`.
    pub fn l2_distance(&self, other: &SampledFunction<T>) -> Result<T> {
        let d = self.zip_map(other, |a, b| (a - b) * (a - b))?;
        Ok(super::integrate(&d).max(T::zero()).sqrt())
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn to_complex(&self) -> ComplexFunction<T> {
        self.map(|v| Complex::new(v, T::zero()))
    }
}

impl<T: Real> ComplexFunction<T> {
    /// `∫ conj(f) g dx`.
    pub fn inner(&self, other: &ComplexFunction<T>) -> Result<Complex<T>> {
        Ok(super::integrate(&self.zip_map(other, |a, b| a.conj() * b)?))
    }

    pub fn norm_sq(&self) -> T {
        super::integrate(&self.map(|v| v.norm_sqr()))
    }
}
