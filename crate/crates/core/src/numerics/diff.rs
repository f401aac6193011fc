use super::{Sample, SampledFunction};
use crate::scalar::Real;

/// First derivative by fourth-order central differences, with fourth-order
/// one-sided stencils on the two outermost samples at each edge.
///
/// Grids with fewer than five samples fall back to second order.
pub fn derivative<T: Real, S: Sample<T>>(f: &SampledFunction<T, S>) -> SampledFunction<T, S> {
    let v = f.values();
    let n = v.len();
    let h = f.grid().step();
    let mut out = vec![S::zero(); n];
    if n < 5 {
        let half = T::lit(0.5) / h;
        out[0] = (v[1] * T::lit(4.0) - v[0] * T::lit(3.0) - v[2]) * half;
        for k in 1..n - 1 {
            out[k] = (v[k + 1] - v[k - 1]) * half;
        }
        out[n - 1] = (v[n - 1] * T::lit(3.0) - v[n - 2] * T::lit(4.0) + v[n - 3]) * half;
    } else {
        let w = T::one() / (T::lit(12.0) * h);
        let c = |x: f64| T::lit(x);
        for k in 2..n - 2 {
            out[k] = (v[k - 2] - v[k - 1] * c(8.0) + v[k + 1] * c(8.0) - v[k + 2]) * w;
        }
        out[0] = (v[1] * c(48.0) + v[3] * c(16.0) - v[0] * c(25.0) - v[2] * c(36.0) - v[4] * c(3.0)) * w;
        out[1] = (v[2] * c(18.0) + v[4] - v[0] * c(3.0) - v[1] * c(10.0) - v[3] * c(6.0)) * w;
        let m = n - 1;
        out[m] =
            (v[m] * c(25.0) + v[m - 2] * c(36.0) + v[m - 4] * c(3.0) - v[m - 1] * c(48.0) - v[m - 3] * c(16.0)) * w;
        out[m - 1] = (v[m - 1] * c(10.0) + v[m - 3] * c(6.0) + v[m] * c(3.0) - v[m - 2] * c(18.0) - v[m - 4]) * w;
    }
    SampledFunction::new(*f.grid(), out).expect("length preserved")
}

/// Second derivative by fourth-order central differences (six-point one-sided
/// stencils at the edges). Grids with fewer than seven samples use the
/// three-point stencil.
pub fn second_derivative<T: Real, S: Sample<T>>(f: &SampledFunction<T, S>) -> SampledFunction<T, S> {
    let v = f.values();
    let n = v.len();
    let h = f.grid().step();
    let mut out = vec![S::zero(); n];
    let c = |x: f64| T::lit(x);
    if n < 7 {
        let w = T::one() / (h * h);
        for k in 1..n - 1 {
            out[k] = (v[k - 1] + v[k + 1] - v[k] * c(2.0)) * w;
        }
        out[0] = out[1];
        out[n - 1] = out[n - 2];
    } else {
        let w = T::one() / (c(12.0) * h * h);
        for k in 2..n - 2 {
            out[k] = (v[k - 1] * c(16.0) + v[k + 1] * c(16.0) - v[k - 2] - v[k + 2] - v[k] * c(30.0)) * w;
        }
        let edge = |a: [S; 6]| {
            [
                (a[0] * c(45.0) + a[2] * c(214.0) + a[4] * c(61.0)
                    - a[1] * c(154.0)
                    - a[3] * c(156.0)
                    - a[5] * c(10.0))
                    * w,
                (a[0] * c(10.0) + a[3] * c(14.0) + a[5] - a[1] * c(15.0) - a[2] * c(4.0) - a[4] * c(6.0)) * w,
            ]
        };
        let [e0, e1] = edge([v[0], v[1], v[2], v[3], v[4], v[5]]);
        out[0] = e0;
        out[1] = e1;
        let m = n - 1;
        let [e0, e1] = edge([v[m], v[m - 1], v[m - 2], v[m - 3], v[m - 4], v[m - 5]]);
        out[m] = e0;
        out[m - 1] = e1;
    }
    SampledFunction::new(*f.grid(), out).expect("length preserved")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{integrate, Grid};
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn default_grid() -> Grid<f64> {
        Grid::new(-12.0, 12.0, 4001).unwrap()
    }

    #[test]
    fn derivative_of_identity_is_one() {
        let f = SampledFunction::from_fn(default_grid(), |x: f64| x);
        for &d in derivative(&f).values() {
            assert_abs_diff_eq!(d, 1.0, epsilon = 1e-10);
        }
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let f = SampledFunction::from_fn(default_grid(), |_| 3.5_f64);
        assert!(derivative(&f).values().iter().all(|d| d.abs() < 1e-10));
        assert!(second_derivative(&f).values().iter().all(|d| d.abs() < 1e-6));
    }

    #[test]
    fn derivative_of_ground_state() {
        let norm = PI.powf(-0.25);
        let f = SampledFunction::from_fn(default_grid(), |x: f64| norm * (-x * x / 2.0).exp());
        let d = derivative(&f);
        let err = d
            .values()
            .iter()
            .zip(f.values())
            .zip(default_grid().points())
            .map(|((&dv, &fv), x)| (dv + x * fv).abs())
            .fold(0.0, f64::max);
        assert!(err < 1e-4, "sup error {err}");
    }

    #[test]
    fn edge_stencils_exact_for_quartics() {
        let g = Grid::new(0.0, 1.0, 9).unwrap();
        let f = SampledFunction::from_fn(g, |x: f64| x.powi(4) - 2.0 * x.powi(3) + x);
        let d = derivative(&f);
        for (k, x) in g.points().enumerate() {
            assert_abs_diff_eq!(d.values()[k], 4.0 * x.powi(3) - 6.0 * x * x + 1.0, epsilon = 1e-11);
        }
        let d2 = second_derivative(&f);
        for (k, x) in g.points().enumerate() {
            assert_abs_diff_eq!(d2.values()[k], 12.0 * x * x - 12.0 * x, epsilon = 1e-9);
        }
    }

    #[test]
    fn small_grid_falls_back_to_second_order() {
        let g = Grid::new(0.0, 1.0, 3).unwrap();
        let f = SampledFunction::from_fn(g, |x: f64| x * x);
        let d = derivative(&f);
        assert_abs_diff_eq!(d.values()[0], 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.values()[1], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(d.values()[2], 2.0, epsilon = 1e-14);
    }

    #[test]
    fn integral_of_derivative_matches_endpoints() {
        let g = Grid::new(-6.0, 6.0, 1201).unwrap();
        for shift in [-1.0, 0.0, 0.7] {
            let f = SampledFunction::from_fn(g, |x: f64| (-(x - shift) * (x - shift)).exp() * (1.0 + x));
            let lhs = integrate(&derivative(&f));
            let rhs = f.values()[1200] - f.values()[0];
            assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-6);
        }
    }
}
