//! Bisection on a bracketed root.
//!
//! Every root solved in the model (the next contact angle) lives on a
//! monotone function with a guaranteed bracket, so plain bisection is
//! robust and fast enough; no derivative-based method is needed.

use crate::error::ModelError;
use crate::scalar::{cast, Scalar};

/// Iteration cap for bisection; at ~1 bit per iteration this exhausts f64
/// long before it is reached.
pub const MAX_ITER: usize = 200;

/// Finds `x` in `[lo, hi]` with `|f(x)| <= residual_tol`.
///
/// Requires a sign change across the bracket (an endpoint already inside
/// tolerance is returned directly). Fails if the bracket does not straddle
/// a root or the residual tolerance is unreachable in `max_iter` halvings.
pub fn bisect<T: Scalar>(
    f: impl Fn(T) -> T,
    lo: T,
    hi: T,
    residual_tol: T,
    max_iter: usize,
) -> Result<T, ModelError> {
    if !(lo <= hi) {
        return Err(ModelError::RootSearch(format!(
            "invalid bracket [{lo}, {hi}]"
        )));
    }
    let f_lo = f(lo);
    if f_lo.abs() <= residual_tol {
        return Ok(lo);
    }
    let f_hi = f(hi);
    if f_hi.abs() <= residual_tol {
        return Ok(hi);
    }
    if (f_lo > T::zero()) == (f_hi > T::zero()) {
        return Err(ModelError::RootSearch(format!(
            "no sign change on [{lo}, {hi}]"
        )));
    }
    let mut lo = lo;
    let mut hi = hi;
    let mut lo_positive = f_lo > T::zero();
    let two = cast::<T>(2.0);
    for _ in 0..max_iter {
        let mid = (lo + hi) / two;
        if mid <= lo || mid >= hi {
            // interval exhausted in this precision without meeting tolerance
            break;
        }
        let f_mid = f(mid);
        if f_mid.abs() <= residual_tol {
            return Ok(mid);
        }
        if (f_mid > T::zero()) == lo_positive {
            lo = mid;
            lo_positive = f_mid > T::zero();
        } else {
            hi = mid;
        }
    }
    Err(ModelError::RootSearch(format!(
        "residual tolerance {residual_tol} not reached on [{lo}, {hi}]"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn finds_sqrt_two() {
        let x = bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-12, MAX_ITER).unwrap();
        assert_abs_diff_eq!(x, 2.0f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn endpoint_root_returns_endpoint() {
        let x = bisect(|x: f64| x - 1.0, 1.0, 3.0, 1e-9, MAX_ITER).unwrap();
        assert_eq!(x, 1.0);
    }

    #[test]
    fn rejects_unbracketed_root() {
        let err = bisect(|x: f64| x * x + 1.0, -1.0, 1.0, 1e-9, MAX_ITER).unwrap_err();
        assert!(matches!(err, ModelError::RootSearch(_)));
    }

    #[test]
    fn rejects_reversed_bracket() {
        assert!(bisect(|x: f64| x, 1.0, -1.0, 1e-9, MAX_ITER).is_err());
    }

    #[test]
    fn decreasing_function() {
        let x = bisect(|x: f64| 1.0 - x * x, 0.0, 5.0, 1e-12, MAX_ITER).unwrap();
        assert_abs_diff_eq!(x, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn iteration_cap_reports_failure() {
        // cap of 3 cannot localize sqrt(2) to 1e-12
        assert!(bisect(|x: f64| x * x - 2.0, 0.0, 2.0, 1e-12, 3).is_err());
    }
}
