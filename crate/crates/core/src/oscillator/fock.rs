use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which eigenbasis a coefficient vector is expanded in.
///
/// The ladder matrices are identical in both: `A = U a U†` has the same
/// elements in `{|θ_n⟩}` as `a` has in `{|ψ_n⟩}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BasisTag {
    #[serde(rename = "psi-basis")]
    Psi,
    #[serde(rename = "theta-basis")]
    Theta,
}

/// Complex amplitudes `c_0 … c_{N−1}` over a truncated number basis.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector<T> {
    amplitudes: Vec<Complex<T>>,
    basis: BasisTag,
}

/// First and second moments of `X = (A† + A)/√2` and `P = i(A† − A)/√2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureMoments<T> {
    pub mean_x: T,
    pub mean_p: T,
    pub var_x: T,
    pub var_p: T,
}

impl<T: Real> QuadratureMoments<T> {
    pub fn delta_x(&self) -> T {
        self.var_x.max(T::zero()).sqrt()
    }

    pub fn delta_p(&self) -> T {
        self.var_p.max(T::zero()).sqrt()
    }

    pub fn uncertainty_product(&self) -> T {
        self.delta_x() * self.delta_p()
    }
}

impl<T: Real> FockVector<T> {
    pub fn new(amplitudes: Vec<Complex<T>>, basis: BasisTag) -> Self {
        Self { amplitudes, basis }
    }

    pub fn zeros(dim: usize, basis: BasisTag) -> Self {
        Self::new(vec![Complex::new(T::zero(), T::zero()); dim], basis)
    }

    /// Number state `|n⟩` in a `dim`-dimensional truncation.
    pub fn number_state(n: usize, dim: usize, basis: BasisTag) -> Self {
        let mut v = Self::zeros(dim, basis);
        v.amplitudes[n] = Complex::new(T::one(), T::zero());
        v
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn basis(&self) -> BasisTag {
        self.basis
    }

    pub fn with_basis(mut self, basis: BasisTag) -> Self {
        self.basis = basis;
        self
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm_sq(&self) -> T {
        self.amplitudes.iter().fold(T::zero(), |acc, c| acc + c.norm_sqr())
    }

    pub fn norm(&self) -> T {
        self.norm_sq().sqrt()
    }

    /// `⟨self|other⟩`, summed over the common leading components.
    pub fn inner(&self, other: &FockVector<T>) -> Complex<T> {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(Complex::new(T::zero(), T::zero()), |acc, (a, b)| acc + a.conj() * b)
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.amplitudes.iter().map(|&c| c * s).collect(), self.basis)
    }

    /// `self + s · other`, componentwise over the common length.
    pub fn add_scaled(&self, s: Complex<T>, other: &FockVector<T>) -> Self {
        Self::new(
            self.amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(&a, &b)| a + b * s)
                .collect(),
            self.basis,
        )
    }

    /// Euclidean distance to `other`.
    pub fn distance(&self, other: &FockVector<T>) -> T {
        self.add_scaled(Complex::new(-T::one(), T::zero()), other).norm()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        self.scale(Complex::new(T::one() / n, T::zero()))
    }

    /// `(a c)_n = √(n+1) c_{n+1}`; the top component becomes zero.
    pub fn apply_lowering(&self) -> Self {
        let n = self.dim();
        let mut out = Self::zeros(n, self.basis);
        for k in 0..n.saturating_sub(1) {
            out.amplitudes[k] = self.amplitudes[k + 1] * T::from_index(k + 1).sqrt();
        }
        out
    }

    /// `(a† c)_n = √n c_{n−1}`. The amplitude that would land in level `N`
    /// is dropped; its squared magnitude is returned as the truncation loss.
    pub fn apply_raising(&self) -> (Self, T) {
        let n = self.dim();
        let mut out = Self::zeros(n, self.basis);
        for k in 1..n {
            out.amplitudes[k] = self.amplitudes[k - 1] * T::from_index(k).sqrt();
        }
        let loss = match self.amplitudes.last() {
            Some(top) => top.norm_sqr() * T::from_index(n),
            None => T::zero(),
        };
        (out, loss)
    }

    /// Moments of `X` and `P` from ladder expectations `⟨a⟩`, `⟨a²⟩`,
    /// `⟨a†a⟩`, treating the vector as a state of the untruncated space
    /// (zero beyond `N`). In the theta basis these are the deformed
    /// quadratures `X̂`, `P̂`; in the psi basis the ordinary `x̂`, `p̂`.
    pub fn quadrature_moments(&self) -> Result<QuadratureMoments<T>> {
        let norm = self.norm_sq();
        let tol = T::lit(1e-8).max(T::epsilon().sqrt());
        if !((norm - T::one()).abs() <= tol) {
            return Err(Error::NotNormalized(norm.as_f64()));
        }
        let lowered = self.apply_lowering();
        let mean_a = self.inner(&lowered);
        let mean_aa = self.inner(&lowered.apply_lowering());
        let number = lowered.norm_sq();
        let two = T::lit(2.0);
        let half = T::lit(0.5);
        let sqrt2 = two.sqrt();
        let mean_x = sqrt2 * mean_a.re;
        let mean_p = sqrt2 * mean_a.im;
        let second_x = mean_aa.re + number + half;
        let second_p = -mean_aa.re + number + half;
        Ok(QuadratureMoments {
            mean_x,
            mean_p,
            var_x: second_x - mean_x * mean_x,
            var_p: second_p - mean_p * mean_p,
        })
    }
}
