//! Elliptical jaw geometry and adaptor contact kinematics.
//!
//! The jaw midline is the first-quadrant arc of an ellipse in polar form.
//! The jaw root is clamped at theta = gamma near the major axis; the free
//! gripping tip sits at the apex theta = pi/2. Screwing the adaptor on by
//! an axial increment slides the contact point along the arc toward the
//! apex and squeezes the ellipse to a smaller minor axis; the functions
//! here express one such increment.
//!
//! Units: lengths in mm, angles in radians.

use crate::error::{domain, invalid_geometry, ModelError};
use crate::quad;
use crate::rootfind;
use crate::scalar::{cast, Scalar};
use crate::section;

/// Residual tolerance, in mm of arc length, for the contact-angle solve.
pub const ARC_RESIDUAL_TOL: f64 = 1e-9;

/// Design parameters of one jaw plus the adaptor and thread driving it.
///
/// Lengths in mm, angles in radians, modulus in MPa. The struct is plain
/// data; call [`ColletGeometry::validate`] before feeding it to the solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColletGeometry<T> {
    /// Ellipse semi-major axis.
    pub a: T,
    /// Semi-minor axis of the undeformed jaw.
    pub b0: T,
    /// Slot width cut between adjacent jaws.
    pub c: T,
    /// Adaptor bore diameter.
    pub d: T,
    /// Jaw wall thickness.
    pub t: T,
    /// Angle where the jaw arc meets the clamped base.
    pub gamma: T,
    /// Elastic modulus of the jaw material.
    pub elastic_modulus: T,
    /// Number of jaws around the circumference.
    pub leaves: u32,
    /// Gripper opening diameter at rest.
    pub rest_opening: T,
    /// Thread pitch: axial advance per adaptor revolution.
    pub pitch: T,
}

impl<T: Scalar> ColletGeometry<T> {
    /// Checks every structural constraint the solver relies on.
    pub fn validate(&self) -> Result<(), ModelError> {
        let two = cast::<T>(2.0);
        if !(self.a > T::zero()) || !self.a.is_finite() {
            return Err(invalid_geometry(format!("a = {} must be > 0", self.a)));
        }
        if !(self.b0 > T::zero()) || !self.b0.is_finite() {
            return Err(invalid_geometry(format!("b0 = {} must be > 0", self.b0)));
        }
        if !(self.c >= T::zero()) || !self.c.is_finite() {
            return Err(invalid_geometry(format!("c = {} must be >= 0", self.c)));
        }
        if !(self.d > T::zero()) || !self.d.is_finite() {
            return Err(invalid_geometry(format!("d = {} must be > 0", self.d)));
        }
        if self.d > two * self.b0 {
            return Err(invalid_geometry(format!(
                "adaptor bore d = {} exceeds the jaw opening 2*b0 = {}",
                self.d,
                two * self.b0
            )));
        }
        if !(self.t > T::zero()) || !self.t.is_finite() {
            return Err(invalid_geometry(format!("t = {} must be > 0", self.t)));
        }
        if !(self.elastic_modulus > T::zero()) || !self.elastic_modulus.is_finite() {
            return Err(invalid_geometry(format!(
                "elastic modulus {} must be > 0",
                self.elastic_modulus
            )));
        }
        if self.leaves < 2 {
            return Err(invalid_geometry(format!(
                "leaves = {} must be >= 2",
                self.leaves
            )));
        }
        if !(self.rest_opening > T::zero()) || !self.rest_opening.is_finite() {
            return Err(invalid_geometry(format!(
                "rest opening {} must be > 0",
                self.rest_opening
            )));
        }
        if !(self.pitch > T::zero()) || !self.pitch.is_finite() {
            return Err(invalid_geometry(format!(
                "pitch = {} must be > 0",
                self.pitch
            )));
        }
        if !(self.gamma >= cast::<T>(0.05)) {
            return Err(invalid_geometry(format!(
                "base angle gamma = {} must be >= 0.05 rad",
                self.gamma
            )));
        }
        let beta0 = contact_angle(self.a, self.b0, self.d)?;
        if !(self.gamma < beta0) {
            return Err(invalid_geometry(format!(
                "base angle gamma = {} must lie below the contact angle {}",
                self.gamma, beta0
            )));
        }
        // the cross section must not vanish anywhere on [gamma, pi/2]; the
        // section radius is smallest at the base, so checking gamma suffices
        let r_base = radius_unchecked(self.a, self.b0, self.gamma) * self.gamma.sin();
        section::central_angle(self.c, r_base, self.leaves)
            .map_err(|e| invalid_geometry(format!("slot eats the base section: {e}")))?;
        Ok(())
    }

    /// Validates and returns the geometry by value, for builder-style use.
    pub fn validated(self) -> Result<Self, ModelError> {
        self.validate()?;
        Ok(self)
    }

    /// True when the adaptor bore equals the jaw opening exactly, putting
    /// first contact at the apex (contact angle pi/2). The solver accepts
    /// this but any screwing increment immediately walks off the arc.
    pub fn is_apex_contact(&self) -> bool {
        self.d == cast::<T>(2.0) * self.b0
    }
}

/// Deformed jaw shape during a march: the fixed major axis plus the current
/// minor axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseState<T> {
    /// Semi-major axis, unchanged from the design.
    pub a: T,
    /// Current semi-minor axis; shrinks as the adaptor advances.
    pub b: T,
    /// Number of increments already applied.
    pub step_index: usize,
}

impl<T: Scalar> EllipseState<T> {
    /// Undeformed state of a validated geometry.
    pub fn initial(geom: &ColletGeometry<T>) -> Self {
        EllipseState {
            a: geom.a,
            b: geom.b0,
            step_index: 0,
        }
    }
}

#[inline]
pub(crate) fn radius_unchecked<T: Scalar>(a: T, b: T, theta: T) -> T {
    let (s, c) = theta.sin_cos();
    a * b / ((b * c).powi(2) + (a * s).powi(2)).sqrt()
}

/// Polar radius of the ellipse with semi-axes `a`, `b` at angle `theta`.
///
/// Valid on the first quadrant only, `0 <= theta <= pi/2`.
pub fn radius_at<T: Scalar>(a: T, b: T, theta: T) -> Result<T, ModelError> {
    if !(a > T::zero()) || !(b > T::zero()) {
        return Err(domain(format!("semi-axes a = {a}, b = {b} must be > 0")));
    }
    if !(theta >= T::zero()) || !(theta <= T::FRAC_PI_2()) {
        return Err(domain(format!("theta = {theta} outside [0, pi/2]")));
    }
    Ok(radius_unchecked(a, b, theta))
}

/// Angle at which the adaptor bore rim of diameter `d` touches the ellipse:
/// the point on the arc at height d/2 above the major axis.
///
/// `d = 2b` degenerates to the apex and returns pi/2 exactly.
pub fn contact_angle<T: Scalar>(a: T, b: T, d: T) -> Result<T, ModelError> {
    if !(a > T::zero()) || !(b > T::zero()) {
        return Err(domain(format!("semi-axes a = {a}, b = {b} must be > 0")));
    }
    if !(d > T::zero()) {
        return Err(domain(format!("bore diameter d = {d} must be > 0")));
    }
    let two = cast::<T>(2.0);
    if d > two * b {
        return Err(ModelError::NoContact {
            d: d.to_f64().unwrap_or(f64::NAN),
            two_b: (two * b).to_f64().unwrap_or(f64::NAN),
        });
    }
    // rounding can push the radicand a hair negative when d is within a few
    // ulp of 2b; both cases are the apex
    let radicand = cast::<T>(4.0) * b * b - d * d;
    if radicand <= T::zero() {
        return Ok(T::FRAC_PI_2());
    }
    Ok((b * d / (a * radicand.sqrt())).atan())
}

/// Horizontal position of the contact point after the adaptor has advanced
/// a further `delta` along the axis from the contact angle `beta`.
///
/// Negative results mean the adaptor has been screwed past the apex, which
/// the model cannot represent.
pub fn contact_x_after<T: Scalar>(a: T, b: T, beta: T, delta: T) -> Result<T, ModelError> {
    if !(delta >= T::zero()) {
        return Err(domain(format!("advance delta = {delta} must be >= 0")));
    }
    let r = radius_at(a, b, beta)?;
    let x = r * beta.cos() - delta;
    if x < T::zero() {
        return Err(ModelError::PastApex {
            x: x.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(x)
}

/// Minor axis of the squeezed ellipse once the contact point has moved in
/// by `delta`: the new ellipse keeps the major axis `a` and passes through
/// the displaced contact point at height d/2.
pub fn update_minor_axis<T: Scalar>(
    a: T,
    b: T,
    beta: T,
    delta: T,
    d: T,
) -> Result<T, ModelError> {
    if !(delta >= T::zero()) {
        return Err(domain(format!("advance delta = {delta} must be >= 0")));
    }
    if !(d > T::zero()) {
        return Err(domain(format!("bore diameter d = {d} must be > 0")));
    }
    let r = radius_at(a, b, beta)?;
    let x = r * beta.cos() - delta;
    let radicand = a * a - x * x;
    if radicand <= T::zero() {
        return Err(ModelError::MinorAxisDomain {
            arg: radicand.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(a * d / (cast::<T>(2.0) * radicand.sqrt()))
}

#[inline]
pub(crate) fn arc_length_unchecked<T: Scalar>(a: T, b: T, theta0: T, theta1: T) -> T {
    quad::integrate(
        |theta| radius_unchecked(a, b, theta),
        theta0,
        theta1,
        cast::<T>(quad::DEFAULT_REL_TOL),
    )
}

/// Arc length swept along the ellipse between two polar angles, measured
/// with the model's polar measure r(theta) d(theta).
pub fn arc_length<T: Scalar>(a: T, b: T, theta0: T, theta1: T) -> Result<T, ModelError> {
    if !(a > T::zero()) || !(b > T::zero()) {
        return Err(domain(format!("semi-axes a = {a}, b = {b} must be > 0")));
    }
    if !(theta0 >= T::zero() && theta0 <= theta1 && theta1 <= T::FRAC_PI_2()) {
        return Err(domain(format!(
            "need 0 <= theta0 <= theta1 <= pi/2, got [{theta0}, {theta1}]"
        )));
    }
    Ok(arc_length_unchecked(a, b, theta0, theta1))
}

/// Contact angle after the rim slides a further arc length `delta` up the
/// ellipse from `beta`, found by bisection on the arc-length residual.
///
/// Fails when the requested slide overshoots the apex.
pub fn solve_next_contact_angle<T: Scalar>(
    a: T,
    b: T,
    beta: T,
    delta: T,
) -> Result<T, ModelError> {
    if !(delta >= T::zero()) {
        return Err(domain(format!("arc advance delta = {delta} must be >= 0")));
    }
    if !(beta >= T::zero() && beta <= T::FRAC_PI_2()) {
        return Err(domain(format!("beta = {beta} outside [0, pi/2]")));
    }
    if delta == T::zero() {
        return Ok(beta);
    }
    let remaining = arc_length_unchecked(a, b, beta, T::FRAC_PI_2());
    if delta > remaining {
        return Err(ModelError::NoSolution {
            step: delta.to_f64().unwrap_or(f64::NAN),
            remaining: remaining.to_f64().unwrap_or(f64::NAN),
        });
    }
    rootfind::bisect(
        |phi| arc_length_unchecked(a, b, beta, phi) - delta,
        beta,
        T::FRAC_PI_2(),
        cast::<T>(ARC_RESIDUAL_TOL),
        rootfind::MAX_ITER,
    )
}
