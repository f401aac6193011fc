use crate::error::{Error, Result};
use crate::numerics::{derivative, Grid, SampledFunction};
use crate::scalar::Real;

/// Eigenfunctions `ψ_n`, energies `E_n` and superpotential `W` of a base
/// Hamiltonian `H = a†a + E₀` with `a = (d/dx + W)/√2`.
///
/// Plain data: the oscillator constructor fills it analytically, and
/// [`crate::io::read_basis`] loads arbitrary tabulated bases.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet<T> {
    grid: Grid<T>,
    superpotential: SampledFunction<T>,
    eigenfunctions: Vec<SampledFunction<T>>,
    energies: Vec<T>,
}

impl<T: Real> BasisSet<T> {
    pub fn from_parts(
        superpotential: SampledFunction<T>,
        eigenfunctions: Vec<SampledFunction<T>>,
        energies: Vec<T>,
    ) -> Result<Self> {
        let grid = *superpotential.grid();
        if eigenfunctions.is_empty() {
            return Err(Error::InvalidBasis("no eigenfunctions".into()));
        }
        if eigenfunctions.len() != energies.len() {
            return Err(Error::InvalidBasis(format!(
                "{} eigenfunctions but {} energies",
                eigenfunctions.len(),
                energies.len()
            )));
        }
        if eigenfunctions.iter().any(|f| *f.grid() != grid) {
            return Err(Error::GridMismatch);
        }
        if energies.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidBasis("energies must be strictly increasing".into()));
        }
        Ok(Self {
            grid,
            superpotential,
            eigenfunctions,
            energies,
        })
    }

    /// Harmonic oscillator `H = a†a + ½`, `W(x) = x`, with `ψ₀ … ψ_{n_max}`.
    ///
    /// Uses the normalised three-term recurrence
    /// `ψ_{n+1} = √(2/(n+1)) x ψ_n − √(n/(n+1)) ψ_{n−1}`, whose factors stay
    /// O(1) for any `n`. Both grid edges must lie at least two units beyond
    /// the classical turning point `√(2 n_max + 1)`.
    pub fn oscillator(grid: Grid<T>, n_max: usize) -> Result<Self> {
        let required = (2.0 * n_max as f64 + 1.0).sqrt() + 2.0;
        let reach = grid.x_max().min(-grid.x_min()).as_f64();
        if reach < required {
            return Err(Error::GridTooNarrow {
                n_max,
                required,
                x_max: grid.x_max().as_f64(),
            });
        }
        let two = T::lit(2.0);
        let norm = T::PI().powf(T::lit(-0.25));
        let ground = SampledFunction::from_fn(grid, |x| norm * (-x * x / two).exp());
        let mut psi = Vec::with_capacity(n_max + 1);
        psi.push(ground);
        for n in 0..n_max {
            let n1 = T::from_index(n + 1);
            let up = (two / n1).sqrt();
            let down = (T::from_index(n) / n1).sqrt();
            let next = if n == 0 {
                psi[0].map_with_x(|x, p| up * x * p)
            } else {
                let (prev, cur) = (&psi[n - 1], &psi[n]);
                let values = grid
                    .points()
                    .zip(cur.values().iter().zip(prev.values()))
                    .map(|(x, (&c, &p))| up * x * c - down * p)
                    .collect();
                SampledFunction::new(grid, values)?
            };
            psi.push(next);
        }
        let energies = (0..=n_max).map(|n| T::from_index(n) + T::lit(0.5)).collect();
        let w = SampledFunction::from_fn(grid, |x| x);
        Self::from_parts(w, psi, energies)
    }

    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }

    /// Highest retained quantum number.
    pub fn n_max(&self) -> usize {
        self.eigenfunctions.len() - 1
    }

    /// Number of retained eigenfunctions, `n_max + 1`.
    pub fn len(&self) -> usize {
        self.eigenfunctions.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn eigenfunction(&self, n: usize) -> &SampledFunction<T> {
        &self.eigenfunctions[n]
    }

    pub fn eigenfunctions(&self) -> &[SampledFunction<T>] {
        &self.eigenfunctions
    }

    pub fn energies(&self) -> &[T] {
        &self.energies
    }

    pub fn energy(&self, n: usize) -> T {
        self.energies[n]
    }

    pub fn ground_energy(&self) -> T {
        self.energies[0]
    }

    pub fn superpotential(&self) -> &SampledFunction<T> {
        &self.superpotential
    }

    /// Coordinate form of `H = a†a + E₀`: `V = ½(W² − W′) + E₀`.
    pub fn potential(&self) -> SampledFunction<T> {
        let half = T::lit(0.5);
        let e0 = self.ground_energy();
        self.superpotential
            .zip_map(&derivative(&self.superpotential), |w, dw| half * (w * w - dw) + e0)
            .expect("same grid")
    }

    /// `(d/dx + W) f`, i.e. `√2 · a f`.
    pub fn lower_unscaled(&self, f: &SampledFunction<T>) -> Result<SampledFunction<T>> {
        let df = derivative(f);
        let wf = f.zip_map(&self.superpotential, |a, w| a * w)?;
        df.zip_map(&wf, |a, b| a + b)
    }

    /// Largest entrywise deviation of the Gram matrix `⟨ψ_n|ψ_m⟩` from identity.
    pub fn orthonormality_defect(&self) -> T {
        let mut worst = T::zero();
        for (n, a) in self.eigenfunctions.iter().enumerate() {
            for (m, b) in self.eigenfunctions.iter().enumerate().skip(n) {
                let g = a.inner(b).expect("same grid");
                let target = if n == m { T::one() } else { T::zero() };
                worst = worst.max((g - target).abs());
            }
        }
        worst
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::second_derivative;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn default_grid() -> Grid<f64> {
        Grid::new(-12.0, 12.0, 4001).unwrap()
    }

    /// Normalised Hermite function from the physicists' polynomial recurrence.
    fn hermite_function(n: usize, x: f64) -> f64 {
        let (mut h0, mut h1) = (1.0, 2.0 * x);
        let hn = match n {
            0 => h0,
            _ => {
                for k in 1..n {
                    let h2 = 2.0 * x * h1 - 2.0 * k as f64 * h0;
                    h0 = h1;
                    h1 = h2;
                }
                h1
            }
        };
        let log_norm = -0.5 * ((n as f64) * 2f64.ln() + ln_factorial(n) + 0.5 * PI.ln());
        hn * log_norm.exp() * (-x * x / 2.0).exp()
    }

    fn ln_factorial(n: usize) -> f64 {
        (1..=n).map(|k| (k as f64).ln()).sum()
    }

    #[test]
    fn ground_state_peak_and_parity() {
        let b = BasisSet::oscillator(default_grid(), 10).unwrap();
        assert_abs_diff_eq!(b.eigenfunction(0).values()[2000], PI.powf(-0.25), epsilon = 1e-15);
        assert_abs_diff_eq!(b.eigenfunction(0).values()[2000], 0.751_125_5, epsilon = 1e-7);
        assert_abs_diff_eq!(b.eigenfunction(1).values()[2000], 0.0, epsilon = 1e-15);
    }

    #[test]
    fn energies_and_superpotential_exact() {
        let b = BasisSet::oscillator(default_grid(), 6).unwrap();
        for (n, &e) in b.energies().iter().enumerate() {
            assert_eq!(e, n as f64 + 0.5);
        }
        assert_eq!(b.ground_energy(), 0.5);
        for (k, x) in default_grid().points().enumerate() {
            assert_eq!(b.superpotential().values()[k], x);
        }
    }

    #[test]
    fn orthonormal_up_to_default_n_max() {
        let b = BasisSet::oscillator(default_grid(), 48).unwrap();
        assert!(b.orthonormality_defect() < 1e-8);
        let overlap = b.eigenfunction(3).inner(b.eigenfunction(5)).unwrap();
        assert!(overlap.abs() < 1e-10);
    }

    #[test]
    fn turning_point_check() {
        assert!(matches!(
            BasisSet::oscillator(default_grid(), 60),
            Err(Error::GridTooNarrow { n_max: 60, .. })
        ));
        assert!(BasisSet::oscillator(default_grid(), 49).is_ok());
        let narrow = Grid::new(-3.0, 3.0, 301).unwrap();
        assert!(BasisSet::oscillator(narrow, 1).is_err());
        assert!(BasisSet::oscillator(narrow, 0).is_ok());
    }

    #[test]
    fn recurrence_matches_direct_hermite() {
        let b = BasisSet::oscillator(default_grid(), 20).unwrap();
        for n in 0..=20 {
            let direct_max = default_grid()
                .points()
                .map(|x| hermite_function(n, x).abs())
                .fold(0.0, f64::max);
            assert_abs_diff_eq!(b.eigenfunction(n).sup_norm(), direct_max, epsilon = 1e-8);
            for k in (0..4001).step_by(97) {
                let x = default_grid().point(k);
                assert_abs_diff_eq!(b.eigenfunction(n).values()[k], hermite_function(n, x), epsilon = 1e-8);
            }
        }
    }

    #[test]
    fn eigenfunction_residual() {
        let b = BasisSet::oscillator(default_grid(), 20).unwrap();
        for n in 0..=20 {
            let psi = b.eigenfunction(n);
            let d2 = second_derivative(psi);
            let e = b.energy(n);
            let values = default_grid()
                .points()
                .zip(d2.values().iter().zip(psi.values()))
                .map(|(x, (&dd, &p))| 0.5 * (-dd + x * x * p) - e * p)
                .collect();
            let r = SampledFunction::new(default_grid(), values).unwrap();
            let rel = r.norm_sq().sqrt() / psi.norm_sq().sqrt();
            assert!(rel <= 1e-5, "n = {n}: residual {rel}");
        }
    }

    #[test]
    fn lowering_annihilates_ground_state() {
        let b = BasisSet::oscillator(default_grid(), 3).unwrap();
        let a0 = b.lower_unscaled(b.eigenfunction(0)).unwrap();
        assert!(a0.sup_norm() < 1e-8);
        // (d/dx + x) ψ₃ = √6 ψ₂
        let a3 = b.lower_unscaled(b.eigenfunction(3)).unwrap();
        let expected = b.eigenfunction(2).scale(6f64.sqrt());
        assert!(a3.l2_distance(&expected).unwrap() < 1e-7);
    }

    #[test]
    fn from_parts_validation() {
        let g = default_grid();
        let w = SampledFunction::from_fn(g, |x| x);
        let f = SampledFunction::from_fn(g, |x: f64| (-x * x).exp());
        assert!(BasisSet::from_parts(w.clone(), vec![], vec![]).is_err());
        assert!(BasisSet::from_parts(w.clone(), vec![f.clone(), f.clone()], vec![1.0, 1.0]).is_err());
        assert!(BasisSet::from_parts(w.clone(), vec![f.clone()], vec![1.0, 2.0]).is_err());
        let other = SampledFunction::from_fn(Grid::new(-1.0, 1.0, 5).unwrap(), |x| x);
        assert!(matches!(
            BasisSet::from_parts(w, vec![other], vec![0.5]),
            Err(Error::GridMismatch)
        ));
    }

    #[test]
    fn single_precision_basis_builds() {
        let g = Grid::new(-8.0_f32, 8.0, 801).unwrap();
        let b = BasisSet::oscillator(g, 4).unwrap();
        assert!(b.orthonormality_defect() < 1e-4);
    }
}
