//! Independent checks that `H` and `H_λ` are strictly isospectral and that
//! the constructed `θ_n` are their eigenfunctions.
//!
//! Nothing here reuses the construction's own claims: spectra come from a
//! finite-difference diagonalisation of the two potentials, residuals from
//! applying that same discretised operator.

use serde::Serialize;

use crate::deform::{Deformation, EDGE_FRACTION};
use crate::error::{Error, Result};
use crate::numerics::{derivative, integrate, SampledFunction, TridiagonalOperator};
use crate::oscillator::BasisSet;
use crate::scalar::Real;
use crate::unitary::OverlapMatrix;

/// `−½ d²/dx² + V` with the three-point stencil and Dirichlet edges, on the
/// interior samples `1..n−1`.
pub fn assemble_hamiltonian<T: Real>(v: &SampledFunction<T>) -> Result<TridiagonalOperator<T>> {
    let h = v.grid().step();
    let kinetic = T::one() / (h * h);
    let n = v.len();
    let diagonal = v.values()[1..n - 1].iter().map(|&vk| kinetic + vk).collect();
    let off = vec![-kinetic / T::lit(2.0); n.saturating_sub(3)];
    TridiagonalOperator::new(diagonal, off)
}

/// Relative residual `‖(H − E) f‖ / ‖f‖`, with `H` applied by the
/// [`assemble_hamiltonian`] stencil and the norm taken over the interior
/// window.
pub fn relative_residual<T: Real>(potential: &SampledFunction<T>, f: &SampledFunction<T>, energy: T) -> Result<T> {
    if potential.grid() != f.grid() {
        return Err(Error::GridMismatch);
    }
    let grid = *f.grid();
    let n = grid.len();
    let margin = grid.edge_margin(EDGE_FRACTION).max(1);
    let h2 = grid.step() * grid.step();
    let half = T::lit(0.5);
    let v = f.values();
    let mut r = vec![T::zero(); n];
    for k in margin..n - margin {
        let lap = (v[k - 1] + v[k + 1] - T::lit(2.0) * v[k]) / h2;
        let val = -half * lap + (potential.values()[k] - energy) * v[k];
        r[k] = val * val;
    }
    let num = integrate(&SampledFunction::new(grid, r)?).sqrt();
    Ok(num / f.norm_sq().sqrt())
}

/// Residual of `θ_n` as an eigenfunction of `H_λ` at energy `E_n`.
pub fn eigen_residual<T: Real>(d: &Deformation<'_, T>, n: usize) -> Result<T> {
    let basis = d.basis();
    if n > basis.n_max() {
        return Err(Error::LevelOutOfRange {
            n,
            min: 0,
            max: basis.n_max(),
        });
    }
    relative_residual(d.potential(), d.state(n), basis.energy(n))
}

/// Same residual for the base pair `(ψ_n, V)`.
pub fn base_eigen_residual<T: Real>(basis: &BasisSet<T>, n: usize) -> Result<T> {
    if n > basis.n_max() {
        return Err(Error::LevelOutOfRange {
            n,
            min: 0,
            max: basis.n_max(),
        });
    }
    relative_residual(&basis.potential(), basis.eigenfunction(n), basis.energy(n))
}

/// `⟨θ_n|H_λ|θ_n⟩ = ∫ ½ θ_n′² + V_λ θ_n²` by quadrature.
pub fn energy_expectation<T: Real>(d: &Deformation<'_, T>, n: usize) -> Result<T> {
    let theta = d.state(n);
    let dtheta = derivative(theta);
    let half = T::lit(0.5);
    let kinetic = integrate(&dtheta.map(|v| half * v * v));
    let potential = integrate(&theta.zip_map(d.potential(), |t, v| v * t * t)?);
    Ok((kinetic + potential) / theta.norm_sq())
}

/// Bounds applied by [`full_report`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerances {
    /// Finite-difference eigenvalues (second-order stencil at h = 0.006).
    pub spectral: f64,
    pub gram: f64,
    pub riccati: f64,
    pub unitarity: f64,
    /// Allowed ratio of `θ_n` residual to `ψ_n` residual.
    pub residual_ratio: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            spectral: 5e-3,
            gram: 1e-6,
            riccati: 1e-5,
            unitarity: 1e-4,
            residual_ratio: 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport<T> {
    pub lambda: T,
    pub levels: usize,
    pub truncation: usize,
    pub block: usize,
    pub analytic_energies: Vec<T>,
    pub base_eigenvalues: Vec<T>,
    pub deformed_eigenvalues: Vec<T>,
    pub eigen_residuals: Vec<T>,
    pub base_residuals: Vec<T>,
    pub gram_defect: T,
    pub riccati_residual: T,
    pub unitarity_defect: (T, T),
    pub tolerances: Tolerances,
    pub violations: Vec<String>,
}

impl<T: Real> VerificationReport<T> {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Largest `|E_n(H_λ) − E_n(H)|` over the checked levels.
    pub fn max_spectral_gap(&self) -> T {
        self.base_eigenvalues
            .iter()
            .zip(&self.deformed_eigenvalues)
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }
}

/// Runs every check for one `λ`: both spectra (`levels` lowest), eigen
/// residuals, Gram defect of `θ₀ … θ_{N−1}`, Riccati residual, and the
/// unitarity defect of `U` on the leading `N/4` block.
pub fn full_report<T: Real>(
    basis: &BasisSet<T>,
    lambda: T,
    levels: usize,
    truncation: usize,
    tolerances: Tolerances,
) -> Result<VerificationReport<T>> {
    if levels == 0 || levels > basis.n_max() {
        return Err(Error::LevelOutOfRange {
            n: levels,
            min: 1,
            max: basis.n_max(),
        });
    }
    let d = Deformation::new(basis, lambda)?;
    let base_eigenvalues = assemble_hamiltonian(&basis.potential())?.lowest_eigenvalues(levels)?;
    let deformed_eigenvalues = assemble_hamiltonian(d.potential())?.lowest_eigenvalues(levels)?;
    let analytic_energies = basis.energies()[..levels].to_vec();
    let eigen_residuals = (0..levels).map(|n| eigen_residual(&d, n)).collect::<Result<Vec<_>>>()?;
    let base_residuals = (0..levels)
        .map(|n| base_eigen_residual(basis, n))
        .collect::<Result<Vec<_>>>()?;
    let gram_defect = d.gram_defect(truncation)?;
    let riccati_residual = d.riccati_residual();
    let block = (truncation / 4).max(1);
    let unitarity_defect = OverlapMatrix::from_quadrature(basis, &d, truncation)?.unitarity_defect(block)?;

    let mut violations = Vec::new();
    let tol = |x: f64| T::lit(x);
    for n in 0..levels {
        let (e, b, a) = (deformed_eigenvalues[n], base_eigenvalues[n], analytic_energies[n]);
        if (e - b).abs() > tol(tolerances.spectral) {
            violations.push(format!("level {n}: deformed {e} vs base {b}"));
        }
        if (b - a).abs() > tol(tolerances.spectral) || (e - a).abs() > tol(tolerances.spectral) {
            violations.push(format!("level {n}: spectra {b}, {e} vs analytic {a}"));
        }
        if eigen_residuals[n] > tol(tolerances.residual_ratio) * base_residuals[n] {
            violations.push(format!(
                "level {n}: residual {} exceeds {}x base residual {}",
                eigen_residuals[n], tolerances.residual_ratio, base_residuals[n]
            ));
        }
    }
    if gram_defect > tol(tolerances.gram) {
        violations.push(format!("gram defect {gram_defect}"));
    }
    if riccati_residual > tol(tolerances.riccati) {
        violations.push(format!("riccati residual {riccati_residual}"));
    }
    if unitarity_defect.0.max(unitarity_defect.1) > tol(tolerances.unitarity) {
        violations.push(format!("unitarity defect {:?}", unitarity_defect));
    }
    Ok(VerificationReport {
        lambda,
        levels,
        truncation,
        block,
        analytic_energies,
        base_eigenvalues,
        deformed_eigenvalues,
        eigen_residuals,
        base_residuals,
        gram_defect,
        riccati_residual,
        unitarity_defect,
        tolerances,
        violations,
    })
}
