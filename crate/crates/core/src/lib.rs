//! Isospectral deformations of the harmonic oscillator and their coherent states.
//!
//! Everything is generic over a [`Real`] scalar; the `*64` aliases below fix it to `f64`.
//! Typical flow: build a [`BasisSet`](oscillator::BasisSet) on a [`Grid`](numerics::Grid),
//! deform it with [`Deformation`](deform::Deformation), then map states with
//! [`OverlapMatrix`](unitary::OverlapMatrix) or check the spectrum with [`verify::full_report`].

// `!(a <= b)` is used on purpose so NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod coherent;
pub mod deform;
pub mod error;
pub mod io;
pub mod numerics;
pub mod oscillator;
pub mod scalar;
pub mod unitary;
pub mod verify;

pub use error::{Error, Result};
pub use scalar::Real;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type Grid64 = numerics::Grid<f64>;
pub type SampledFunction64 = numerics::SampledFunction<f64>;
pub type ComplexFunction64 = numerics::ComplexFunction<f64>;
pub type BasisSet64 = oscillator::BasisSet<f64>;
pub type FockVector64 = oscillator::FockVector<f64>;
pub type Deformation64<'a> = deform::Deformation<'a, f64>;
pub type OverlapMatrix64 = unitary::OverlapMatrix<f64>;
pub type VerificationReport64 = verify::VerificationReport<f64>;
