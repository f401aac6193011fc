use super::{Sample, SampledFunction};
use crate::scalar::Real;

/// Composite Simpson integral over the whole grid. Exact for cubics.
pub fn integrate<T: Real, S: Sample<T>>(f: &SampledFunction<T, S>) -> S {
    let v = f.values();
    let n = v.len();
    let h = f.grid().step();
    let mut odd = S::zero();
    let mut even = S::zero();
    for (k, &fk) in v.iter().enumerate().take(n - 1).skip(1) {
        if k % 2 == 1 {
            odd = odd + fk;
        } else {
            even = even + fk;
        }
    }
    (v[0] + v[n - 1] + odd * T::lit(4.0) + even * T::lit(2.0)) * (h / T::lit(3.0))
}

/// Running integral `I(x_k) = ∫_{x_min}^{x_k} f`.
///
/// Even prefixes are plain composite Simpson. Odd prefixes extend the
/// preceding even prefix by one panel using the quadratic through the last
/// three samples, so the result carries no even/odd sawtooth.
///
/// Monotone non-decreasing for non-negative `f` that is resolved by the grid;
/// a single spike narrower than `h` can make the end-panel weight go negative.
pub fn cumulative_integral<T: Real, S: Sample<T>>(f: &SampledFunction<T, S>) -> SampledFunction<T, S> {
    let v = f.values();
    let n = v.len();
    let h = f.grid().step();
    let third = h / T::lit(3.0);
    let twelfth = h / T::lit(12.0);
    let mut out = vec![S::zero(); n];
    out[1] = (v[0] * T::lit(5.0) + v[1] * T::lit(8.0) - v[2]) * twelfth;
    for k in 2..n {
        out[k] = if k % 2 == 0 {
            out[k - 2] + (v[k - 2] + v[k - 1] * T::lit(4.0) + v[k]) * third
        } else {
            out[k - 1] + (v[k - 1] * T::lit(8.0) + v[k] * T::lit(5.0) - v[k - 2]) * twelfth
        };
    }
    SampledFunction::new(*f.grid(), out).expect("length preserved")
}
