//! Adaptive Simpson quadrature.
//!
//! The model's integrands (arc length, compliance coefficients, strain
//! energy) are smooth on their integration intervals but steepen near the
//! jaw base, so a fixed rule is wasteful and an adaptive one converges
//! quickly.

use crate::scalar::{cast, Scalar};

/// Relative tolerance used for every integral in the model.
pub const DEFAULT_REL_TOL: f64 = 1e-10;

const MAX_DEPTH: u32 = 60;

/// Integrates `f` over `[a, b]` to the given relative tolerance.
///
/// The tolerance is taken relative to the magnitude of the whole integral;
/// recursion stops early on subintervals the error estimate shows are
/// already converged. Reversed bounds negate the result.
pub fn integrate<T: Scalar>(f: impl Fn(T) -> T, a: T, b: T, rel_tol: T) -> T {
    if a == b {
        return T::zero();
    }
    if b < a {
        return -integrate(f, b, a, rel_tol);
    }
    let two = cast::<T>(2.0);
    let m = (a + b) / two;
    let fa = f(a);
    let fm = f(m);
    let fb = f(b);
    let whole = (b - a) / cast::<T>(6.0) * (fa + cast::<T>(4.0) * fm + fb);
    let scale = whole.abs().max(T::min_positive_value());
    refine(&f, a, fa, m, fm, b, fb, whole, rel_tol * scale, MAX_DEPTH)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Scalar, F: Fn(T) -> T>(
    f: &F,
    a: T,
    fa: T,
    m: T,
    fm: T,
    b: T,
    fb: T,
    whole: T,
    eps: T,
    depth: u32,
) -> T {
    let two = cast::<T>(2.0);
    let four = cast::<T>(4.0);
    let lm = (a + m) / two;
    let rm = (m + b) / two;
    let flm = f(lm);
    let frm = f(rm);
    let h12 = (b - a) / cast::<T>(12.0);
    let left = h12 * (fa + four * flm + fm);
    let right = h12 * (fm + four * frm + fb);
    let sum = left + right;
    let err = sum - whole;
    // lm == a / rm == b means the interval no longer splits in this precision
    if depth == 0 || err.abs() <= cast::<T>(15.0) * eps || lm <= a || rm >= b {
        return sum + err / cast::<T>(15.0);
    }
    let half_eps = eps / two;
    refine(f, a, fa, lm, flm, m, fm, left, half_eps, depth - 1)
        + refine(f, m, fm, rm, frm, b, fb, right, half_eps, depth - 1)
}
