use crate::error::{Error, Result};
use crate::scalar::Real;

/// Real symmetric tridiagonal matrix, stored as its diagonal and a single
/// off-diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalOperator<T> {
    diagonal: Vec<T>,
    off_diagonal: Vec<T>,
}

impl<T: Real> TridiagonalOperator<T> {
    pub fn new(diagonal: Vec<T>, off_diagonal: Vec<T>) -> Result<Self> {
        if diagonal.is_empty() || off_diagonal.len() + 1 != diagonal.len() {
            return Err(Error::MalformedTridiagonal {
                diag: diagonal.len(),
                off: off_diagonal.len(),
            });
        }
        Ok(Self { diagonal, off_diagonal })
    }

    pub fn dim(&self) -> usize {
        self.diagonal.len()
    }

    pub fn diagonal(&self) -> &[T] {
        &self.diagonal
    }

    pub fn off_diagonal(&self) -> &[T] {
        &self.off_diagonal
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[T]) -> Result<Vec<T>> {
        let m = self.dim();
        if v.len() != m {
            return Err(Error::LengthMismatch {
                expected: m,
                got: v.len(),
            });
        }
        let mut out: Vec<T> = self.diagonal.iter().zip(v).map(|(&d, &x)| d * x).collect();
        for (i, &e) in self.off_diagonal.iter().enumerate() {
            out[i] = out[i] + e * v[i + 1];
            out[i + 1] = out[i + 1] + e * v[i];
        }
        Ok(out)
    }

    /// Number of eigenvalues strictly below `shift` (Sturm count from the
    /// pivots of the LDLᵀ factorisation of `T − shift·I`).
    pub fn count_below(&self, shift: T) -> usize {
        let pivmin = self.pivot_floor();
        let mut count = 0;
        let mut q = self.diagonal[0] - shift;
        for i in 0..self.dim() {
            if i > 0 {
                let e = self.off_diagonal[i - 1];
                q = self.diagonal[i] - shift - e * e / q;
            }
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    fn pivot_floor(&self) -> T {
        let emax = self.off_diagonal.iter().fold(T::one(), |acc, &e| acc.max(e * e));
        T::min_positive_value() * emax
    }

    /// Gershgorin interval containing the whole spectrum.
    fn gershgorin(&self) -> (T, T) {
        let m = self.dim();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..m {
            let left = if i > 0 {
                self.off_diagonal[i - 1].abs()
            } else {
                T::zero()
            };
            let right = if i + 1 < m {
                self.off_diagonal[i].abs()
            } else {
                T::zero()
            };
            lo = lo.min(self.diagonal[i] - left - right);
            hi = hi.max(self.diagonal[i] + left + right);
        }
        let pad = (hi - lo).abs().max(T::one()) * T::epsilon() * T::lit(4.0);
        (lo - pad, hi + pad)
    }

    /// The `k` smallest eigenvalues in ascending order, by Sturm-sequence
    /// bisection. Each is resolved to the scalar's working precision.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<T>> {
        let m = self.dim();
        if k == 0 || k > m {
            return Err(Error::KOutOfRange { requested: k, size: m });
        }
        let (lo, hi) = self.gershgorin();
        let two = T::lit(2.0);
        let mut out = Vec::with_capacity(k);
        let mut lower = lo;
        for j in 0..k {
            // invariant: count_below(a) <= j < count_below(b)
            let mut a = lower;
            let mut b = hi;
            loop {
                let mid = (a + b) / two;
                if mid <= a || mid >= b {
                    break;
                }
                let tol = T::epsilon() * two * (a.abs().max(b.abs()));
                if b - a <= tol {
                    break;
                }
                if self.count_below(mid) > j {
                    b = mid;
                } else {
                    a = mid;
                }
            }
            let value = (a + b) / two;
            out.push(value);
            lower = a;
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn diagonal_matrix() {
        let t = TridiagonalOperator::new(vec![3.0, 1.0, 2.0], vec![0.0, 0.0]).unwrap();
        let ev = t.lowest_eigenvalues(3).unwrap();
        assert_relative_eq!(ev[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(ev[1], 2.0, max_relative = 1e-12);
        assert_relative_eq!(ev[2], 3.0, max_relative = 1e-12);
    }

    #[test]
    fn two_by_two_symmetric_pair() {
        let t = TridiagonalOperator::new(vec![0.0, 0.0], vec![1.0]).unwrap();
        let ev = t.lowest_eigenvalues(2).unwrap();
        assert_relative_eq!(ev[0], -1.0, max_relative = 1e-12);
        assert_relative_eq!(ev[1], 1.0, max_relative = 1e-12);
    }

    #[test]
    fn k_out_of_range() {
        let t = TridiagonalOperator::new(vec![0.0, 0.0], vec![1.0]).unwrap();
        assert!(matches!(t.lowest_eigenvalues(0), Err(Error::KOutOfRange { .. })));
        assert!(matches!(t.lowest_eigenvalues(3), Err(Error::KOutOfRange { .. })));
    }

    #[test]
    fn malformed_lengths() {
        assert!(TridiagonalOperator::new(vec![1.0, 2.0], vec![]).is_err());
        assert!(TridiagonalOperator::<f64>::new(vec![], vec![]).is_err());
    }

    #[test]
    fn discrete_laplacian_closed_form() {
        // tridiag(-1, 2, -1) of size m has eigenvalues 2 - 2 cos(jπ/(m+1))
        let m = 50;
        let t = TridiagonalOperator::new(vec![2.0; m], vec![-1.0; m - 1]).unwrap();
        let ev = t.lowest_eigenvalues(m).unwrap();
        for (j, &e) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((j + 1) as f64 * std::f64::consts::PI / (m + 1) as f64).cos();
            assert_relative_eq!(e, exact, max_relative = 1e-10, epsilon = 1e-14);
        }
    }

    #[test]
    fn repeated_eigenvalues_are_all_returned() {
        let t = TridiagonalOperator::new(vec![1.0, 1.0, 5.0, 1.0], vec![0.0, 0.0, 0.0]).unwrap();
        let ev = t.lowest_eigenvalues(4).unwrap();
        assert_relative_eq!(ev[0], 1.0, max_relative = 1e-12);
        assert_relative_eq!(ev[2], 1.0, max_relative = 1e-12);
        assert_relative_eq!(ev[3], 5.0, max_relative = 1e-12);
    }

    #[test]
    fn apply_matches_dense_product() {
        let t = TridiagonalOperator::new(vec![1.0, 2.0, 3.0], vec![0.5, -1.0]).unwrap();
        let y = t.apply(&[1.0, 1.0, 2.0]).unwrap();
        assert_eq!(y, vec![1.5, 2.0 + 0.5 - 2.0, -1.0 + 6.0]);
    }
}
