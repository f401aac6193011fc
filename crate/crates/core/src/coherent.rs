//! Coherent and squeezed coherent states of the isospectral family.
//!
//! States are built in coefficient space, where the deformed ladder
//! operators act exactly like the base ones, and mapped to coordinates
//! through `θ_n` (i.e. `|z;λ⟩ = U|z⟩`).

use num_complex::Complex;
use serde::Serialize;

use crate::deform::Deformation;
use crate::error::{Error, Result};
use crate::numerics::{derivative, integrate, ComplexFunction, Grid, SampledFunction};
use crate::oscillator::{BasisTag, FockVector};
use crate::scalar::Real;

/// Largest Poisson tail `Σ_{n≥N} |c_n|²` accepted for a truncated coherent state.
pub const TAIL_TOLERANCE: f64 = 1e-8;
/// Series terms below this norm end the squeeze-operator expansion.
pub const SERIES_TOLERANCE: f64 = 1e-14;
const MAX_SERIES_TERMS: usize = 200;

/// Phase-space label `z` of `D(z) = exp(z a† − z* a)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DisplacementParameter<T> {
    pub z: Complex<T>,
}

impl<T: Real> DisplacementParameter<T> {
    pub fn new(re: T, im: T) -> Self {
        Self {
            z: Complex::new(re, im),
        }
    }

    /// `|z|² + 3|z| + 3 ≤ N`.
    pub fn fits(&self, truncation: usize) -> bool {
        let m = self.z.norm();
        m * m + T::lit(3.0) * m + T::lit(3.0) <= T::from_index(truncation)
    }
}

impl<T: Real> From<Complex<T>> for DisplacementParameter<T> {
    fn from(z: Complex<T>) -> Self {
        Self { z }
    }
}

/// `ξ = r e^{iφ}` of `S(ξ) = exp(½ξ a†² − ½ξ* a²)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SqueezeParameter<T> {
    pub r: T,
    pub phase: T,
}

impl<T: Real> SqueezeParameter<T> {
    pub fn new(r: T, phase: T) -> Self {
        Self { r, phase }
    }

    pub fn xi(&self) -> Complex<T> {
        Complex::from_polar(self.r, self.phase)
    }
}

/// Glauber amplitudes `c_n = e^{−|z|²/2} zⁿ/√(n!)` via `c_{n+1} = c_n z/√(n+1)`.
pub fn coherent_coefficients<T: Real>(z: DisplacementParameter<T>, truncation: usize) -> Result<FockVector<T>> {
    let zv = z.z;
    if truncation == 0 || !z.fits(truncation) {
        return Err(Error::TruncationTooSmall {
            truncation,
            reason: format!("|z|^2 + 3|z| + 3 exceeds N for |z| = {}", zv.norm()),
        });
    }
    let mut amps = Vec::with_capacity(truncation);
    let mut c = Complex::new((-zv.norm_sqr() / T::lit(2.0)).exp(), T::zero());
    for n in 0..truncation {
        amps.push(c);
        c = c * zv / T::from_index(n + 1).sqrt();
    }
    let v = FockVector::new(amps, BasisTag::Psi);
    let tail = T::one() - v.norm_sq();
    if tail > T::lit(TAIL_TOLERANCE) {
        return Err(Error::TruncationTooSmall {
            truncation,
            reason: format!("Poisson tail {} above {TAIL_TOLERANCE}", tail.as_f64()),
        });
    }
    Ok(v)
}

/// `Σ_n c_n f_n(x)` for coefficient vector `c` over the given eigenfunctions.
pub fn synthesize<T: Real>(c: &FockVector<T>, functions: &[SampledFunction<T>]) -> Result<ComplexFunction<T>> {
    if c.dim() > functions.len() || functions.is_empty() {
        return Err(Error::TruncationExceedsBasis {
            truncation: c.dim(),
            available: functions.len(),
        });
    }
    let grid = *functions[0].grid();
    let mut values = vec![Complex::new(T::zero(), T::zero()); grid.len()];
    for (amp, f) in c.amplitudes().iter().zip(functions) {
        if *f.grid() != grid {
            return Err(Error::GridMismatch);
        }
        for (v, &p) in values.iter_mut().zip(f.values()) {
            *v = *v + *amp * p;
        }
    }
    SampledFunction::new(grid, values)
}

/// Coordinate wavefunction of `|z;λ⟩ = Σ_n c_n(z) θ_n`.
pub fn deformed_coherent_wavefunction<T: Real>(
    z: DisplacementParameter<T>,
    d: &Deformation<'_, T>,
    truncation: usize,
) -> Result<ComplexFunction<T>> {
    let c = coherent_coefficients(z, truncation)?.with_basis(BasisTag::Theta);
    synthesize(&c, d.states())
}

/// `‖A c − z c‖` for the theta-basis coherent vector: the eigenvalue
/// equation `A|z;λ⟩ = z|z;λ⟩` with `z` independent of `λ`.
pub fn annihilation_residual<T: Real>(z: DisplacementParameter<T>, truncation: usize) -> Result<T> {
    let c = coherent_coefficients(z, truncation)?.with_basis(BasisTag::Theta);
    let lowered = c.apply_lowering();
    Ok(lowered.distance(&c.scale(z.z)))
}

/// `S(ξ) D(z)|0⟩` in a `truncation`-dimensional number basis.
///
/// The exponential is applied as a Taylor series of ladder actions, split
/// into enough equal sub-steps that each sub-step's generator has norm at
/// most one; every series runs until the appended term falls below
/// [`SERIES_TOLERANCE`]. The result is renormalised.
pub fn squeezed_coefficients<T: Real>(
    xi: SqueezeParameter<T>,
    z: DisplacementParameter<T>,
    truncation: usize,
    basis: BasisTag,
) -> Result<FockVector<T>> {
    if !(xi.r >= T::zero()) || xi.r > T::one() {
        return Err(Error::SqueezeOutOfRange(xi.r.as_f64()));
    }
    let start = coherent_coefficients(z, truncation)?.with_basis(basis);
    if xi.r == T::zero() {
        return Ok(start);
    }
    let xi_c = xi.xi();
    // ‖½ξ a†² − ½ξ* a²‖ ≤ |ξ| (N − 1)
    let bound = xi.r * T::from_index(truncation.max(2) - 1);
    let steps = bound.ceil().to_usize().unwrap_or(1).max(1);
    let half = T::lit(0.5) / T::from_index(steps);
    let up = xi_c * half;
    let down = -xi_c.conj() * half;
    let generator = |v: &FockVector<T>| {
        let (r1, _) = v.apply_raising();
        let (r2, _) = r1.apply_raising();
        let l2 = v.apply_lowering().apply_lowering();
        r2.scale(up).add_scaled(down, &l2)
    };
    let mut state = start;
    for _ in 0..steps {
        let mut term = state.clone();
        let mut sum = state.clone();
        let mut converged = false;
        for k in 1..=MAX_SERIES_TERMS {
            term = generator(&term).scale(Complex::new(T::one() / T::from_index(k), T::zero()));
            let norm = term.norm();
            if !norm.is_finite() {
                return Err(Error::SeriesNonconvergent(k));
            }
            sum = sum.add_scaled(Complex::new(T::one(), T::zero()), &term);
            if norm < T::lit(SERIES_TOLERANCE) {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::SeriesNonconvergent(MAX_SERIES_TERMS));
        }
        state = sum;
    }
    let amps = state.amplitudes();
    let edge = amps[truncation - 1].norm_sqr() + amps[truncation.saturating_sub(2)].norm_sqr();
    if edge > T::lit(TAIL_TOLERANCE) {
        return Err(Error::TruncationTooSmall {
            truncation,
            reason: format!(
                "squeezed state reaches the truncation edge (edge mass {})",
                edge.as_f64()
            ),
        });
    }
    Ok(state.normalized())
}

/// Position and momentum spreads of a coordinate wavefunction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhysicalUncertainties<T> {
    pub dx: T,
    pub dp: T,
    pub product: T,
}

/// `Δx` and `Δp` by quadrature, with `p = −i d/dx`.
pub fn physical_uncertainties<T: Real>(psi: &ComplexFunction<T>) -> Result<PhysicalUncertainties<T>> {
    let norm = psi.norm_sq();
    if !((norm - T::one()).abs() <= T::lit(1e-6)) {
        return Err(Error::NotNormalized(norm.as_f64()));
    }
    let density = psi.map(|v| v.norm_sqr());
    let mean_x = integrate(&density.map_with_x(|x, rho| x * rho)) / norm;
    let second_x = integrate(&density.map_with_x(|x, rho| x * x * rho)) / norm;
    let dpsi = derivative(psi);
    let minus_i = Complex::new(T::zero(), -T::one());
    let mean_p = psi.zip_map(&dpsi, |a, b| a.conj() * b * minus_i)?;
    let mean_p = integrate(&mean_p).re / norm;
    let second_p = integrate(&dpsi.map(|v| v.norm_sqr())) / norm;
    let dx = (second_x - mean_x * mean_x).max(T::zero()).sqrt();
    let dp = (second_p - mean_p * mean_p).max(T::zero()).sqrt();
    Ok(PhysicalUncertainties {
        dx,
        dp,
        product: dx * dp,
    })
}

/// `⟨z₁|z₂⟩ = exp(−(|z₁|² + |z₂|²)/2 + z₁* z₂)`.
pub fn coherent_overlap_exact<T: Real>(z1: Complex<T>, z2: Complex<T>) -> Complex<T> {
    let half = T::lit(0.5);
    (Complex::new(-(z1.norm_sqr() + z2.norm_sqr()) * half, T::zero()) + z1.conj() * z2).exp()
}

/// `(1/π) ∫_{|z| ≤ radius} d²z |z⟩⟨z|` restricted to the leading `block × block`
/// entries, by Simpson in `|z|` (`radial_points`, odd) and the periodic
/// rectangle rule in `arg z` (`angular_points`).
pub fn disk_projector<T: Real>(
    radius: T,
    radial_points: usize,
    angular_points: usize,
    truncation: usize,
    block: usize,
) -> Result<Vec<Vec<Complex<T>>>> {
    if block == 0 || block > truncation {
        return Err(Error::BlockOutOfRange {
            block,
            size: truncation,
        });
    }
    let radial = Grid::new(T::zero(), radius, radial_points)?;
    let zero = Complex::new(T::zero(), T::zero());
    let dtheta = T::lit(2.0) * T::PI() / T::from_index(angular_points);
    // ring[k][n][m] = ∫ dθ c_n c_m* at radius r_k
    let mut rings = Vec::with_capacity(radial.len());
    for r in radial.points() {
        let mut acc = vec![vec![zero; block]; block];
        for j in 0..angular_points {
            let z = Complex::from_polar(r, dtheta * T::from_index(j));
            let c = coherent_coefficients(DisplacementParameter::from(z), truncation)?;
            let a = c.amplitudes();
            for n in 0..block {
                for m in 0..block {
                    acc[n][m] = acc[n][m] + a[n] * a[m].conj() * dtheta;
                }
            }
        }
        rings.push(acc);
    }
    let mut out = vec![vec![zero; block]; block];
    for n in 0..block {
        for m in 0..block {
            let integrand: Vec<Complex<T>> = radial.points().zip(&rings).map(|(r, ring)| ring[n][m] * r).collect();
            out[n][m] = integrate(&SampledFunction::new(radial, integrand)?) / T::PI();
        }
    }
    Ok(out)
}
