//! Truncated matrix of the unitary `U = Σ U_{nm} |ψ_n⟩⟨ψ_m|`, `U_{nm} = ⟨ψ_n|θ_m⟩`.

use rayon::prelude::*;
use serde::Serialize;

use crate::deform::Deformation;
use crate::error::{Error, Result};
use crate::numerics::SampledFunction;
use crate::oscillator::BasisSet;
use crate::scalar::Real;

/// How the matrix entries were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OverlapRoute {
    /// Direct quadrature of `ψ_n θ_m` against the constructed `θ_m`.
    QuadratureOverlap,
    /// Closed-form matrix elements written in terms of `ψ_n`, `ψ_m` and `φ_λ`
    /// only, never touching the constructed `θ_m`.
    ClosedForm,
    Identity,
}

/// Dense `N × N` block of `U`, row-major.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OverlapMatrix<T> {
    size: usize,
    lambda: T,
    route: OverlapRoute,
    entries: Vec<T>,
}

fn check_truncation(size: usize, available: usize) -> Result<()> {
    if size == 0 || size > available {
        return Err(Error::TruncationExceedsBasis {
            truncation: size,
            available,
        });
    }
    Ok(())
}

impl<T: Real> OverlapMatrix<T> {
    pub fn identity(size: usize) -> Self {
        let mut entries = vec![T::zero(); size * size];
        for n in 0..size {
            entries[n * size + n] = T::one();
        }
        Self {
            size,
            lambda: T::infinity(),
            route: OverlapRoute::Identity,
            entries,
        }
    }

    /// `U_{nm} = ∫ ψ_n θ_m` for `0 ≤ n, m < size`.
    pub fn from_quadrature(basis: &BasisSet<T>, d: &Deformation<'_, T>, size: usize) -> Result<Self> {
        check_truncation(size, basis.len().min(d.states().len()))?;
        let entries = assemble(size, |n, m| basis.eigenfunction(n).inner(d.state(m)))?;
        Ok(Self {
            size,
            lambda: d.lambda(),
            route: OverlapRoute::QuadratureOverlap,
            entries,
        })
    }

    /// Closed-form matrix elements:
    ///
    /// * `U_{n0} = sgn(λ) √(λ(λ+1)) ∫ ψ_n ψ₀ / (λ + I)`
    /// * `U_{nm} = δ_{nm} + ∫ ψ_n φ_λ (ψ_m′ + W ψ_m) / (2(E_m − E₀))`, `m ≥ 1`
    ///
    /// The `sgn(λ)` applies the positive-diagonal phase convention on the
    /// `λ < −1` branch.
    pub fn from_closed_form(basis: &BasisSet<T>, d: &Deformation<'_, T>, size: usize) -> Result<Self> {
        check_truncation(size, basis.len())?;
        let lambda = d.lambda();
        let amp = lambda.signum() * (lambda * (lambda + T::one())).sqrt();
        let psi0 = basis.eigenfunction(0);
        let ground_weight = psi0.zip_map(d.cumulative(), |p, i| amp * p / (lambda + i))?;
        let e0 = basis.ground_energy();
        let excited: Vec<SampledFunction<T>> = (1..size)
            .into_par_iter()
            .map(|m| {
                let scale = T::one() / (T::lit(2.0) * (basis.energy(m) - e0));
                let lowered = basis.lower_unscaled(basis.eigenfunction(m))?;
                d.phi().zip_map(&lowered, |p, l| p * l * scale)
            })
            .collect::<Result<_>>()?;
        let entries = assemble(size, |n, m| {
            let psi = basis.eigenfunction(n);
            if m == 0 {
                psi.inner(&ground_weight)
            } else {
                let delta = if n == m { T::one() } else { T::zero() };
                Ok(delta + psi.inner(&excited[m - 1])?)
            }
        })?;
        Ok(Self {
            size,
            lambda,
            route: OverlapRoute::ClosedForm,
            entries,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    pub fn route(&self) -> OverlapRoute {
        self.route
    }

    #[inline]
    pub fn get(&self, n: usize, m: usize) -> T {
        self.entries[n * self.size + m]
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.entries.chunks(self.size).map(<[T]>::to_vec).collect()
    }

    pub fn max_abs_difference(&self, other: &OverlapMatrix<T>) -> T {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }

    /// Largest deviation of `U` from identity over the leading `block × block`.
    pub fn identity_deviation(&self, block: usize) -> Result<T> {
        self.check_block(block)?;
        let mut worst = T::zero();
        for n in 0..block {
            for m in 0..block {
                let target = if n == m { T::one() } else { T::zero() };
                worst = worst.max((self.get(n, m) - target).abs());
            }
        }
        Ok(worst)
    }

    fn check_block(&self, block: usize) -> Result<()> {
        if block == 0 || block > self.size {
            return Err(Error::BlockOutOfRange { block, size: self.size });
        }
        Ok(())
    }

    /// Entrywise sup of `(U†U − I)` and `(UU† − I)` on the leading block.
    ///
    /// The products sum over all `N` rows (columns) held, so the block must
    /// sit well inside the truncation for the result to mean anything.
    pub fn unitarity_defect(&self, block: usize) -> Result<(T, T)> {
        self.check_block(block)?;
        let size = self.size;
        let mut left = T::zero();
        let mut right = T::zero();
        for i in 0..block {
            for j in 0..block {
                let target = if i == j { T::one() } else { T::zero() };
                let mut utu = T::zero();
                let mut uut = T::zero();
                for k in 0..size {
                    utu = utu + self.get(k, i) * self.get(k, j);
                    uut = uut + self.get(i, k) * self.get(j, k);
                }
                left = left.max((utu - target).abs());
                right = right.max((uut - target).abs());
            }
        }
        Ok((left, right))
    }

    /// `Σ_n U_{nm} ψ_n`, the column `m` resynthesised in coordinates.
    pub fn synthesize_column(&self, basis: &BasisSet<T>, m: usize) -> Result<SampledFunction<T>> {
        check_truncation(m + 1, self.size)?;
        let grid = *basis.grid();
        let mut values = vec![T::zero(); grid.len()];
        for n in 0..self.size {
            let c = self.get(n, m);
            for (v, &p) in values.iter_mut().zip(basis.eigenfunction(n).values()) {
                *v = *v + c * p;
            }
        }
        SampledFunction::new(grid, values)
    }
}

fn assemble<T: Real>(size: usize, entry: impl Fn(usize, usize) -> Result<T> + Sync) -> Result<Vec<T>> {
    let rows = (0..size)
        .into_par_iter()
        .map(|n| (0..size).map(|m| entry(n, m)).collect::<Result<Vec<T>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(rows.into_iter().flatten().collect())
}

/// `√(λ(λ+1)) ln((λ+1)/λ)`, the closed form of `U₀₀` (same value on both
/// branches once the phase convention is applied).
pub fn ground_overlap_exact(lambda: f64) -> f64 {
    (lambda * (lambda + 1.0)).sqrt() * ((lambda + 1.0) / lambda).ln()
}
