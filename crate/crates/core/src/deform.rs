//! One-parameter strictly isospectral family built from the base ground state.
//!
//! With `I(x) = ∫_{x_min}^x ψ₀²`, the deformation is
//! `φ_λ = ψ₀² / (λ + I)`, `Ŵ = W + φ_λ`, and `H_λ = b†b + E₀` with
//! `b = (d/dx + Ŵ)/√2`. `λ` must lie outside `[−1, 0]` so `λ + I` never
//! vanishes.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerics::{cumulative_integral, derivative, SampledFunction};
use crate::oscillator::BasisSet;
use crate::scalar::Real;

/// Fraction of the axis dropped at each edge when forming residual norms.
pub const EDGE_FRACTION: f64 = 0.05;

#[derive(Debug, Clone)]
pub struct Deformation<'a, T> {
    lambda: T,
    basis: &'a BasisSet<T>,
    cumulative: SampledFunction<T>,
    phi: SampledFunction<T>,
    w_hat: SampledFunction<T>,
    potential: SampledFunction<T>,
    theta: Vec<SampledFunction<T>>,
}

/// Rejects `λ ∈ [−1, 0]` and non-finite values.
pub fn check_lambda<T: Real>(lambda: T) -> Result<()> {
    if !lambda.is_finite() || (lambda >= -T::one() && lambda <= T::zero()) {
        return Err(Error::LambdaForbidden(lambda.as_f64()));
    }
    Ok(())
}

impl<'a, T: Real> Deformation<'a, T> {
    pub fn new(basis: &'a BasisSet<T>, lambda: T) -> Result<Self> {
        check_lambda(lambda)?;
        let psi0 = basis.eigenfunction(0);
        let density = psi0.map(|p| p * p);
        let cumulative = cumulative_integral(&density);
        let phi = density.zip_map(&cumulative, |d, i| d / (lambda + i))?;
        let w_hat = basis.superpotential().zip_map(&phi, |w, p| w + p)?;
        let half = T::lit(0.5);
        let e0 = basis.ground_energy();
        let potential = w_hat.zip_map(&derivative(&w_hat), |w, dw| half * (w * w - dw) + e0)?;

        let mut d = Self {
            lambda,
            basis,
            cumulative,
            phi,
            w_hat,
            potential,
            theta: Vec::new(),
        };
        let ground = d.ground_state()?;
        let excited = (1..basis.len())
            .into_par_iter()
            .map(|n| d.explicit_state(n))
            .collect::<Result<Vec<_>>>()?;
        d.theta = std::iter::once(ground).chain(excited).collect();
        Ok(d)
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn basis(&self) -> &'a BasisSet<T> {
        self.basis
    }

    /// `I(x) = ∫_{x_min}^x ψ₀²`.
    pub fn cumulative(&self) -> &SampledFunction<T> {
        &self.cumulative
    }

    /// `φ_λ(x)`.
    pub fn phi(&self) -> &SampledFunction<T> {
        &self.phi
    }

    /// Deformed superpotential `Ŵ = W + φ_λ`.
    pub fn w_hat(&self) -> &SampledFunction<T> {
        &self.w_hat
    }

    /// `V_λ = ½(Ŵ² − Ŵ′) + E₀`, the coordinate form of `b†b + E₀`.
    pub fn potential(&self) -> &SampledFunction<T> {
        &self.potential
    }

    /// Deformed eigenfunctions `θ₀ … θ_{n_max}` (explicit route, normalised,
    /// `⟨ψ_n|θ_n⟩ > 0`).
    pub fn states(&self) -> &[SampledFunction<T>] {
        &self.theta
    }

    pub fn state(&self, n: usize) -> &SampledFunction<T> {
        &self.theta[n]
    }

    fn check_level(&self, n: usize) -> Result<()> {
        if n == 0 || n > self.basis.n_max() {
            return Err(Error::LevelOutOfRange {
                n,
                min: 1,
                max: self.basis.n_max(),
            });
        }
        Ok(())
    }

    /// `θ₀ = √(λ(λ+1)) ψ₀ / (λ + I)`, the zero mode of `b`.
    pub fn ground_state(&self) -> Result<SampledFunction<T>> {
        let amp = (self.lambda * (self.lambda + T::one())).sqrt();
        let psi0 = self.basis.eigenfunction(0);
        let raw = psi0.zip_map(&self.cumulative, |p, i| amp * p / (self.lambda + i))?;
        Ok(normalize(fix_sign(raw, psi0)?))
    }

    /// `θ_n = ψ_n + φ_λ (ψ_n′ + W ψ_n) / (2(E_n − E₀))`, `n ≥ 1`.
    pub fn explicit_state(&self, n: usize) -> Result<SampledFunction<T>> {
        self.check_level(n)?;
        let psi = self.basis.eigenfunction(n);
        let gap = self.basis.energy(n) - self.basis.ground_energy();
        let scale = T::one() / (T::lit(2.0) * gap);
        let lowered = self.basis.lower_unscaled(psi)?;
        let correction = self.phi.zip_map(&lowered, |p, l| p * l * scale)?;
        let raw = psi.zip_map(&correction, |a, b| a + b)?;
        Ok(normalize(fix_sign(raw, psi)?))
    }

    /// `θ_n = b† a ψ_n / (E_n − E₀)`, with `a = (d/dx + W)/√2` and
    /// `b† = (−d/dx + Ŵ)/√2` applied on the grid.
    ///
    /// Not renormalised, so its norm measures how well the intertwining
    /// relation holds numerically.
    pub fn operator_state(&self, n: usize) -> Result<SampledFunction<T>> {
        self.check_level(n)?;
        let psi = self.basis.eigenfunction(n);
        let inv_sqrt2 = T::one() / T::lit(2.0).sqrt();
        let a_psi = self.basis.lower_unscaled(psi)?.scale(inv_sqrt2);
        let d_a_psi = derivative(&a_psi);
        let gap = self.basis.energy(n) - self.basis.ground_energy();
        let k = inv_sqrt2 / gap;
        let b_dag = self
            .w_hat
            .zip_map(&a_psi, |w, f| w * f)?
            .zip_map(&d_a_psi, |wf, df| (wf - df) * k)?;
        fix_sign(b_dag, psi)
    }

    /// Sup-norm of `Ŵ² + Ŵ′ − W² − W′` over the interior window: the
    /// pointwise content of `bb† = aa†`.
    pub fn riccati_residual(&self) -> T {
        let w = self.basis.superpotential();
        let dw = derivative(w);
        let dwh = derivative(&self.w_hat);
        let n = w.len();
        let margin = w.grid().edge_margin(EDGE_FRACTION);
        (margin..n - margin).fold(T::zero(), |acc, k| {
            let wh = self.w_hat.values()[k];
            let w0 = w.values()[k];
            let r = wh * wh + dwh.values()[k] - w0 * w0 - dw.values()[k];
            acc.max(r.abs())
        })
    }

    /// Largest entrywise deviation of the Gram matrix of `θ₀ … θ_{count−1}`
    /// from identity.
    pub fn gram_defect(&self, count: usize) -> Result<T> {
        if count == 0 || count > self.theta.len() {
            return Err(Error::TruncationExceedsBasis {
                truncation: count,
                available: self.theta.len(),
            });
        }
        let rows = (0..count)
            .into_par_iter()
            .map(|n| {
                let mut worst = T::zero();
                for m in n..count {
                    let g = self.theta[n].inner(&self.theta[m])?;
                    let target = if n == m { T::one() } else { T::zero() };
                    worst = worst.max((g - target).abs());
                }
                Ok(worst)
            })
            .collect::<Result<Vec<T>>>()?;
        Ok(rows.into_iter().fold(T::zero(), T::max))
    }

    /// `min_x |λ + I(x)|`, the distance of the deformation from its pole.
    pub fn pole_margin(&self) -> T {
        self.cumulative
            .values()
            .iter()
            .fold(T::infinity(), |acc, &i| acc.min((self.lambda + i).abs()))
    }
}

fn fix_sign<T: Real>(f: SampledFunction<T>, reference: &SampledFunction<T>) -> Result<SampledFunction<T>> {
    if reference.inner(&f)? < T::zero() {
        Ok(f.scale(-T::one()))
    } else {
        Ok(f)
    }
}

fn normalize<T: Real>(f: SampledFunction<T>) -> SampledFunction<T> {
    let n = f.norm_sq().sqrt();
    f.scale(T::one() / n)
}
