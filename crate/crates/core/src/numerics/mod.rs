//! Grid, quadrature, finite differences, and the tridiagonal eigensolver.
//!
//! Everything here is a pure function of its inputs.

mod diff;
mod grid;
mod quadrature;
mod sampled;
mod tridiag;

pub use diff::{derivative, second_derivative};
pub use grid::Grid;
pub use quadrature::{cumulative_integral, integrate};
pub use sampled::{ComplexFunction, Sample, SampledFunction};
pub use tridiag::TridiagonalOperator;
