//! The base system: harmonic-oscillator eigenfunctions on a grid and the
//! ladder algebra on truncated Fock coefficient vectors.

mod basis;
mod fock;

pub use basis::BasisSet;
pub use fock::{BasisTag, FockVector, QuadratureMoments};
