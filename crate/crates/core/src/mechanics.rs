//! Contact forces and jaw deflection by the energy method.
//!
//! The jaw arc is a curved cantilever clamped at theta = gamma with its
//! free tip at the apex. The adaptor rim presses on the arc at the contact
//! angle beta along the ellipse normal, splitting into a horizontal
//! component F_X and a vertical component F_Y with a ratio fixed by the
//! normal direction. Deflections come from Castigliano's theorem on the
//! bending strain energy: each one is an integral of the bending moment
//! times a moment arm over the loaded span [gamma, beta], divided by
//! E I_c(theta). A virtual vertical tip force, set to zero after
//! differentiation, yields the tip deflection.

use crate::error::{domain, ModelError};
use crate::geometry::{radius_unchecked, solve_next_contact_angle, ColletGeometry, EllipseState};
use crate::quad;
use crate::scalar::{cast, Scalar};
use crate::section;

/// Moment arms at one section for unit loads: the real contact components
/// and the virtual vertical tip force.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentArms<T> {
    /// Arm of the vertical contact component F_Y.
    pub d_fy: T,
    /// Arm of the horizontal contact component F_X.
    pub d_fx: T,
    /// Arm of a vertical force at the apex tip.
    pub d_v: T,
}

/// Compliances of the contact point and the tip to the two contact-force
/// components. Units mm/N; all four scale as 1/(E t).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplianceCoefficients<T> {
    /// Vertical contact deflection per unit F_X.
    pub a_x: T,
    /// Vertical contact deflection per unit F_Y.
    pub a_y: T,
    /// Tip deflection per unit F_X.
    pub b_x: T,
    /// Tip deflection per unit F_Y.
    pub b_y: T,
}

/// Everything one screwing increment produces at the contact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContactSolution<T> {
    /// Contact angle before the increment.
    pub beta: T,
    /// Contact angle after sliding along the arc.
    pub phi: T,
    /// Radial interference the jaw must bend through, downward positive.
    pub gap: T,
    /// Horizontal contact force.
    pub f_x: T,
    /// Vertical contact force.
    pub f_y: T,
    /// Compliances the forces were solved from.
    pub coeffs: ComplianceCoefficients<T>,
    /// Tip deflection this increment adds.
    pub delta_tip_step: T,
}

/// Moment arms at section `theta` for a contact at `beta`, on the current
/// ellipse. Sections between the contact and the free tip carry no moment
/// from the contact forces.
pub fn moment_terms<T: Scalar>(
    geom: &ColletGeometry<T>,
    state: &EllipseState<T>,
    theta: T,
    beta: T,
) -> Result<MomentArms<T>, ModelError> {
    if !(theta >= geom.gamma && theta <= T::FRAC_PI_2()) {
        return Err(domain(format!(
            "theta = {theta} outside the jaw span [{}, pi/2]",
            geom.gamma
        )));
    }
    if !(beta >= T::zero() && beta <= T::FRAC_PI_2()) {
        return Err(domain(format!("beta = {beta} outside [0, pi/2]")));
    }
    let r = radius_unchecked(state.a, state.b, theta);
    let (s, c) = theta.sin_cos();
    let x = r * c;
    let y = r * s;
    if theta > beta {
        return Ok(MomentArms {
            d_fy: T::zero(),
            d_fx: T::zero(),
            d_v: x,
        });
    }
    let rb = radius_unchecked(state.a, state.b, beta);
    let (sb, cb) = beta.sin_cos();
    Ok(MomentArms {
        d_fy: x - rb * cb,
        d_fx: rb * sb - y,
        d_v: x,
    })
}

/// Ratio F_Y / F_X imposed by the ellipse normal at the contact angle.
///
/// Unbounded as the contact reaches the apex, where the normal turns
/// vertical.
pub fn force_ratio<T: Scalar>(a: T, b: T, beta: T) -> Result<T, ModelError> {
    if !(a > T::zero()) || !(b > T::zero()) {
        return Err(domain(format!("semi-axes a = {a}, b = {b} must be > 0")));
    }
    if !(beta > T::zero()) {
        return Err(domain(format!("beta = {beta} must be > 0")));
    }
    if beta >= T::FRAC_PI_2() {
        return Err(ModelError::UnboundedRatio {
            beta: beta.to_f64().unwrap_or(f64::NAN),
        });
    }
    let ratio = (a / b).powi(2) * beta.tan();
    if !ratio.is_finite() {
        return Err(ModelError::UnboundedRatio {
            beta: beta.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(ratio)
}

/// The four compliance integrals over the loaded span `[gamma, beta]` of
/// the current ellipse.
///
/// Fails if the slotted section vanishes anywhere on the span; the section
/// radius is smallest at gamma, so that endpoint is checked.
pub fn compliance_coefficients<T: Scalar>(
    geom: &ColletGeometry<T>,
    state: &EllipseState<T>,
    beta: T,
) -> Result<ComplianceCoefficients<T>, ModelError> {
    if !(beta >= geom.gamma && beta <= T::FRAC_PI_2()) {
        return Err(domain(format!(
            "beta = {beta} outside the jaw span [{}, pi/2]",
            geom.gamma
        )));
    }
    // probing the base section surfaces SectionVanished before integration
    let base = section::section_at(geom, state, geom.gamma)?;
    debug_assert!(base.i_c > T::zero());

    let (a, b) = (state.a, state.b);
    let rb = radius_unchecked(a, b, beta);
    let (sb, cb) = beta.sin_cos();
    let (xb, yb) = (rb * cb, rb * sb);
    let stiffness = geom.elastic_modulus * geom.t;
    let (c_slot, leaves) = (geom.c, geom.leaves);

    // 1 / (E I_c(theta)) times the polar measure r(theta)
    let kernel = move |theta: T| -> (T, T, T) {
        let r = radius_unchecked(a, b, theta);
        let (s, c) = theta.sin_cos();
        let r_bar = r * s;
        let half_chord = c_slot / (cast::<T>(2.0) * r_bar);
        let sector = cast::<T>(2.0) * T::PI() / cast::<T>(leaves as f64);
        let alpha = sector - cast::<T>(2.0) * half_chord.asin();
        let i_c_over_t = section::arc_i_c(r_bar, T::one(), alpha);
        let w = r / (stiffness * i_c_over_t);
        (r * c, r * s, w)
    };
    let rel_tol = cast::<T>(quad::DEFAULT_REL_TOL);
    let a_x = quad::integrate(
        |theta| {
            let (x, y, w) = kernel(theta);
            (yb - y) * (x - xb) * w
        },
        geom.gamma,
        beta,
        rel_tol,
    );
    let a_y = quad::integrate(
        |theta| {
            let (x, _, w) = kernel(theta);
            (x - xb) * (x - xb) * w
        },
        geom.gamma,
        beta,
        rel_tol,
    );
    let b_x = quad::integrate(
        |theta| {
            let (x, y, w) = kernel(theta);
            (yb - y) * x * w
        },
        geom.gamma,
        beta,
        rel_tol,
    );
    let b_y = quad::integrate(
        |theta| {
            let (x, _, w) = kernel(theta);
            (x - xb) * x * w
        },
        geom.gamma,
        beta,
        rel_tol,
    );
    Ok(ComplianceCoefficients { a_x, a_y, b_x, b_y })
}

/// Contact forces that close a radial `gap` at the contact point, with the
/// component ratio fixed by the ellipse normal.
pub fn solve_contact_forces<T: Scalar>(
    coeffs: &ComplianceCoefficients<T>,
    ratio: T,
    gap: T,
) -> Result<(T, T), ModelError> {
    if !(gap >= T::zero()) {
        return Err(domain(format!("gap = {gap} must be >= 0")));
    }
    if gap == T::zero() {
        return Ok((T::zero(), T::zero()));
    }
    let denom = coeffs.a_x + coeffs.a_y * ratio;
    if !(denom > T::zero()) || !denom.is_finite() {
        return Err(ModelError::SingularSystem {
            denominator: denom.to_f64().unwrap_or(f64::NAN),
        });
    }
    let f_x = gap / denom;
    Ok((f_x, ratio * f_x))
}

/// Tip deflection produced while the contact closes a radial `gap`.
///
/// The elastic modulus and wall thickness cancel between numerator and
/// denominator, so this is a purely geometric quantity.
pub fn tip_deflection_step<T: Scalar>(
    coeffs: &ComplianceCoefficients<T>,
    ratio: T,
    gap: T,
) -> Result<T, ModelError> {
    if !(gap >= T::zero()) {
        return Err(domain(format!("gap = {gap} must be >= 0")));
    }
    if gap == T::zero() {
        return Ok(T::zero());
    }
    let denom = coeffs.a_x + coeffs.a_y * ratio;
    if !(denom > T::zero()) || !denom.is_finite() {
        return Err(ModelError::SingularSystem {
            denominator: denom.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(gap * (coeffs.b_x + coeffs.b_y * ratio) / denom)
}

/// Solves one screwing increment on the current ellipse: slides the contact
/// from its rest angle by the arc distance `step_delta`, measures the
/// radial interference there, and resolves forces and tip deflection.
pub fn solve_contact_step<T: Scalar>(
    geom: &ColletGeometry<T>,
    state: &EllipseState<T>,
    step_delta: T,
) -> Result<ContactSolution<T>, ModelError> {
    let beta = crate::geometry::contact_angle(state.a, state.b, geom.d)?;
    let phi = solve_next_contact_angle(state.a, state.b, beta, step_delta)?;
    let r_phi = radius_unchecked(state.a, state.b, phi);
    // rounding may leave a tiny negative residue when phi == beta
    let gap = (r_phi * phi.sin() - geom.d / cast::<T>(2.0)).max(T::zero());
    let ratio = force_ratio(state.a, state.b, beta)?;
    let coeffs = compliance_coefficients(geom, state, beta)?;
    let (f_x, f_y) = solve_contact_forces(&coeffs, ratio, gap)?;
    let delta_tip_step = tip_deflection_step(&coeffs, ratio, gap)?;
    Ok(ContactSolution {
        beta,
        phi,
        gap,
        f_x,
        f_y,
        coeffs,
        delta_tip_step,
    })
}

/// Bending strain energy of the jaw under contact forces at `beta` plus a
/// real vertical force `tip_force` at the apex.
///
/// Differentiating this numerically in `tip_force` at zero must reproduce
/// [`tip_deflection_step`]'s coefficient route; the two share the moment
/// arms but nothing else.
pub fn strain_energy<T: Scalar>(
    geom: &ColletGeometry<T>,
    state: &EllipseState<T>,
    beta: T,
    f_x: T,
    f_y: T,
    tip_force: T,
) -> Result<T, ModelError> {
    if !(beta >= geom.gamma && beta <= T::FRAC_PI_2()) {
        return Err(domain(format!(
            "beta = {beta} outside the jaw span [{}, pi/2]",
            geom.gamma
        )));
    }
    let base = section::section_at(geom, state, geom.gamma)?;
    debug_assert!(base.i_c > T::zero());
    let (a, b) = (state.a, state.b);
    let rb = radius_unchecked(a, b, beta);
    let (sb, cb) = beta.sin_cos();
    let (xb, yb) = (rb * cb, rb * sb);
    let stiffness = geom.elastic_modulus * geom.t;
    let (c_slot, leaves) = (geom.c, geom.leaves);
    let energy_density = move |theta: T, loaded: bool| -> T {
        let r = radius_unchecked(a, b, theta);
        let (s, c) = theta.sin_cos();
        let (x, y) = (r * c, r * s);
        let mut m = tip_force * x;
        if loaded {
            m = m + f_y * (x - xb) + f_x * (yb - y);
        }
        let r_bar = y;
        let sector = cast::<T>(2.0) * T::PI() / cast::<T>(leaves as f64);
        let alpha = sector - cast::<T>(2.0) * (c_slot / (cast::<T>(2.0) * r_bar)).asin();
        let i_c_over_t = section::arc_i_c(r_bar, T::one(), alpha);
        m * m / (cast::<T>(2.0) * stiffness * i_c_over_t) * r
    };
    // the moment has a slope kink at beta; integrating the two sides
    // separately keeps the quadrature honest
    let rel_tol = cast::<T>(1e-12);
    let inner = quad::integrate(|t| energy_density(t, true), geom.gamma, beta, rel_tol);
    let outer = quad::integrate(|t| energy_density(t, false), beta, T::FRAC_PI_2(), rel_tol);
    Ok(inner + outer)
}
