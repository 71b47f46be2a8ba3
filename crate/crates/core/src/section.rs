//! Cross-section properties of the slotted jaw wall.
//!
//! At polar angle theta the jaw is cut by a horizontal plane into a thin
//! circular-arc strip of midline radius R = r(theta) sin(theta) and
//! thickness t. The slots between adjacent jaws remove a chord of width c
//! from each side, leaving a centered arc of central angle alpha. Bending
//! happens about the arc's own centroidal axis, so the centroidal moment
//! I_c is what the compliance integrals consume.

use crate::error::{domain, ModelError};
use crate::geometry::{radius_unchecked, ColletGeometry, EllipseState};
use crate::scalar::{cast, Scalar};

/// Arc-strip section at one polar angle. Lengths in mm, moments in mm^4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SectionProperties<T> {
    /// Polar angle the section was cut at.
    pub theta: T,
    /// Midline radius of the arc strip.
    pub r_bar: T,
    /// Central angle left after the slots are removed.
    pub alpha: T,
    /// Centroid offset from the arc's center of curvature.
    pub y_bar: T,
    /// Second moment about the center of curvature.
    pub i_zz: T,
    /// Second moment about the centroid.
    pub i_c: T,
}

/// Central angle of the arc left once two slots of width `c` are cut from a
/// full 1/leaves sector of the ring with midline radius `r_bar`.
pub fn central_angle<T: Scalar>(c: T, r_bar: T, leaves: u32) -> Result<T, ModelError> {
    if !(c >= T::zero()) {
        return Err(domain(format!("slot width c = {c} must be >= 0")));
    }
    if !(r_bar > T::zero()) {
        return Err(domain(format!("section radius {r_bar} must be > 0")));
    }
    if leaves < 2 {
        return Err(domain(format!("leaves = {leaves} must be >= 2")));
    }
    let half_chord = c / (cast::<T>(2.0) * r_bar);
    if half_chord >= T::one() {
        return Err(domain(format!(
            "slot width c = {c} spans the whole section at radius {r_bar}"
        )));
    }
    let sector = cast::<T>(2.0) * T::PI() / cast::<T>(leaves as f64);
    let alpha = sector - cast::<T>(2.0) * half_chord.asin();
    if alpha <= T::zero() {
        return Err(ModelError::SectionVanished {
            alpha: alpha.to_f64().unwrap_or(f64::NAN),
            r_bar: r_bar.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(alpha)
}

/// Second moment of a thin arc of midline radius `r_bar`, thickness `t` and
/// central angle `alpha` about its center of curvature.
pub fn arc_i_zz<T: Scalar>(r_bar: T, t: T, alpha: T) -> T {
    r_bar.powi(3) * t * (alpha + alpha.sin()) / cast::<T>(2.0)
}

/// Centroid distance of the same arc from its center of curvature.
pub fn arc_y_bar<T: Scalar>(r_bar: T, alpha: T) -> T {
    cast::<T>(2.0) * r_bar * (alpha / cast::<T>(2.0)).sin() / alpha
}

/// Second moment of the same arc about its own centroid.
///
/// Below alpha ~ 1e-2 the closed form loses all significant digits to
/// cancellation, so a series accurate to O(alpha^4) relative takes over;
/// the result stays strictly positive for every alpha > 0.
pub fn arc_i_c<T: Scalar>(r_bar: T, t: T, alpha: T) -> T {
    let two = cast::<T>(2.0);
    if alpha < cast::<T>(1e-2) {
        let a2 = alpha * alpha;
        let factor = alpha * a2 * a2 / cast::<T>(720.0) * (T::one() - a2 / cast::<T>(28.0));
        return r_bar.powi(3) * t * factor;
    }
    let half = alpha / two;
    let factor = (alpha + alpha.sin()) / two - cast::<T>(4.0) * half.sin().powi(2) / alpha;
    r_bar.powi(3) * t * factor
}

/// Exact second moment of the annular sector between radii `r_bar - t/2`
/// and `r_bar + t/2` about the center of curvature. Kept as a verification
/// route for the thin-wall form.
pub fn annular_i_zz<T: Scalar>(r_bar: T, t: T, alpha: T) -> T {
    let half = t / cast::<T>(2.0);
    let ro = r_bar + half;
    let ri = r_bar - half;
    (ro.powi(4) - ri.powi(4)) * (alpha + alpha.sin()) / cast::<T>(8.0)
}

/// Full section at polar angle `theta` of the jaw in its current deformed
/// state. `theta` must lie in the loaded span `[gamma, pi/2]`.
pub fn section_at<T: Scalar>(
    geom: &ColletGeometry<T>,
    state: &EllipseState<T>,
    theta: T,
) -> Result<SectionProperties<T>, ModelError> {
    if !(theta >= geom.gamma && theta <= T::FRAC_PI_2()) {
        return Err(domain(format!(
            "theta = {theta} outside the jaw span [{}, pi/2]",
            geom.gamma
        )));
    }
    let r_bar = radius_unchecked(state.a, state.b, theta) * theta.sin();
    let alpha = central_angle(geom.c, r_bar, geom.leaves)?;
    Ok(SectionProperties {
        theta,
        r_bar,
        alpha,
        y_bar: arc_y_bar(r_bar, alpha),
        i_zz: arc_i_zz(r_bar, geom.t, alpha),
        i_c: arc_i_c(r_bar, geom.t, alpha),
    })
}
