//! Incremental screwing march and the quantities read off the full curve.
//!
//! The adaptor advance is split into equal arc increments. Each increment
//! is solved on the jaw's current deformed ellipse: slide the contact,
//! measure the interference, resolve forces and the tip deflection it
//! adds, then squeeze the ellipse for the next increment. The march stops
//! at the requested advance, at the collar clearance, at the slot
//! interference limit, or when the kinematics run off the arc.

use crate::error::{domain, ModelError};
use crate::geometry::{contact_angle, contact_x_after, update_minor_axis, ColletGeometry,
    EllipseState};
use crate::mechanics::solve_contact_step;
use crate::scalar::{cast, Scalar};

/// Why a march ended.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StopReason {
    /// The full requested advance was applied.
    ReachedDelta,
    /// The tip deflection reached the collar clearance.
    ClearanceReached,
    /// The tip deflection reached the slot interference limit; the final
    /// row is clamped onto the limit.
    Interference,
    /// A step had no kinematic solution; the curve holds the rows solved
    /// before the failure.
    NoSolution,
}

impl StopReason {
    /// Stable lowercase name, used by file formats.
    pub fn as_str(self) -> &'static str {
        match self {
            StopReason::ReachedDelta => "reached_delta",
            StopReason::ClearanceReached => "clearance_reached",
            StopReason::Interference => "interference",
            StopReason::NoSolution => "no_solution",
        }
    }
}

impl std::fmt::Display for StopReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// State after one cumulative advance. Row 0 is the rest state; every
/// following row stores the step's contact kinematics together with the
/// post-step ellipse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveRow<T> {
    /// Cumulative adaptor advance, mm.
    pub delta: T,
    /// Cumulative tip deflection, mm.
    pub delta_tip: T,
    /// Minor axis after the step.
    pub b: T,
    /// Contact angle on the post-step ellipse.
    pub beta: T,
    /// Slid contact angle the step closed its gap at.
    pub phi: T,
    /// Horizontal contact force during the step, N.
    pub f_x: T,
    /// Vertical contact force during the step, N.
    pub f_y: T,
}

/// Full deflection curve of one march.
#[derive(Debug, Clone, PartialEq)]
pub struct DeflectionCurve<T> {
    /// Geometry the march ran on.
    pub geometry: ColletGeometry<T>,
    /// Step count the advance was split into.
    pub n_steps: usize,
    /// Arc increment per step, mm.
    pub step: T,
    /// Collar clearance the tip may consume, mm.
    pub clearance: T,
    /// One row per applied increment, rest state first.
    pub rows: Vec<CurveRow<T>>,
    /// Why the march ended.
    pub stop_reason: StopReason,
}

impl<T: Scalar> DeflectionCurve<T> {
    /// Largest tip deflection the march reached.
    pub fn max_tip(&self) -> T {
        self.rows
            .iter()
            .fold(T::zero(), |acc, row| acc.max(row.delta_tip))
    }

    /// Final cumulative advance.
    pub fn final_delta(&self) -> T {
        self.rows.last().map(|r| r.delta).unwrap_or_else(T::zero)
    }

    /// Tip deflection at an advance inside the curve, linearly
    /// interpolated between rows. `None` outside the marched range.
    pub fn tip_at(&self, delta: T) -> Option<T> {
        if self.rows.is_empty() || delta < T::zero() || delta > self.final_delta() {
            return None;
        }
        let idx = self.rows.partition_point(|r| r.delta < delta);
        if idx == 0 {
            return Some(self.rows[0].delta_tip);
        }
        let hi = &self.rows[idx.min(self.rows.len() - 1)];
        if hi.delta == delta {
            return Some(hi.delta_tip);
        }
        let lo = &self.rows[idx - 1];
        let frac = (delta - lo.delta) / (hi.delta - lo.delta);
        Some(lo.delta_tip + frac * (hi.delta_tip - lo.delta_tip))
    }

    /// Advance at which the tip deflection first reaches `tip`, linearly
    /// interpolated. `None` if the march never got there.
    pub fn delta_at_tip(&self, tip: T) -> Option<T> {
        if self.rows.is_empty() || tip < T::zero() || tip > self.max_tip() {
            return None;
        }
        let idx = self.rows.partition_point(|r| r.delta_tip < tip);
        if idx == 0 {
            return Some(self.rows[0].delta);
        }
        let hi = &self.rows[idx.min(self.rows.len() - 1)];
        let lo = &self.rows[idx - 1];
        if hi.delta_tip == lo.delta_tip {
            return Some(lo.delta);
        }
        let frac = (tip - lo.delta_tip) / (hi.delta_tip - lo.delta_tip);
        Some(lo.delta + frac * (hi.delta - lo.delta))
    }
}

/// Axial advance produced by screwing the adaptor a number of revolutions.
pub fn thread_to_displacement<T: Scalar>(pitch: T, revolutions: T) -> T {
    pitch * revolutions
}

/// Tip deflection at which adjacent jaws consume the slot width and touch:
/// the slots shared around the circumference close after a tip travel of
/// leaves * c / (2 pi) in this first-order model.
pub fn interference_limit<T: Scalar>(geom: &ColletGeometry<T>) -> T {
    cast::<T>(geom.leaves as f64) * geom.c / (cast::<T>(2.0) * T::PI())
}

/// Opening-diameter range the gripper covers over a marched curve:
/// `(rest_opening - 2 * max tip, rest_opening)`.
pub fn grip_range<T: Scalar>(geom: &ColletGeometry<T>, curve: &DeflectionCurve<T>) -> (T, T) {
    let closure = cast::<T>(2.0) * curve.max_tip();
    (geom.rest_opening - closure, geom.rest_opening)
}

/// Marches the adaptor through `delta_total` of axial advance in `n_steps`
/// equal increments.
///
/// Stops early when the tip consumes the collar `clearance`, when it hits
/// the slot interference limit (that row is clamped onto the limit by
/// interpolating the advance), or when a step loses contact kinematics.
pub fn march<T: Scalar>(
    geom: &ColletGeometry<T>,
    delta_total: T,
    n_steps: usize,
    clearance: T,
) -> Result<DeflectionCurve<T>, ModelError> {
    geom.validate()?;
    if !(delta_total >= T::zero()) || !delta_total.is_finite() {
        return Err(domain(format!(
            "total advance {delta_total} must be finite and >= 0"
        )));
    }
    if n_steps == 0 {
        return Err(domain("the march needs at least one step"));
    }
    if !(clearance > T::zero()) || !clearance.is_finite() {
        return Err(domain(format!(
            "clearance {clearance} must be finite and > 0"
        )));
    }

    let limit = interference_limit(geom);
    let beta0 = contact_angle(geom.a, geom.b0, geom.d)?;
    let mut rows = Vec::with_capacity(n_steps + 1);
    rows.push(CurveRow {
        delta: T::zero(),
        delta_tip: T::zero(),
        b: geom.b0,
        beta: beta0,
        phi: beta0,
        f_x: T::zero(),
        f_y: T::zero(),
    });
    let mut curve = DeflectionCurve {
        geometry: *geom,
        n_steps,
        step: delta_total / cast::<T>(n_steps as f64),
        clearance,
        rows,
        stop_reason: StopReason::ReachedDelta,
    };
    if delta_total == T::zero() {
        return Ok(curve);
    }

    let step = curve.step;
    let mut b = geom.b0;
    let mut tip = T::zero();
    for k in 1..=n_steps {
        let state = EllipseState {
            a: geom.a,
            b,
            step_index: k - 1,
        };
        let solved = solve_contact_step(geom, &state, step)
            .and_then(|sol| {
                contact_x_after(geom.a, b, sol.beta, step)?;
                let b_next = update_minor_axis(geom.a, b, sol.beta, step, geom.d)?;
                let beta_next = contact_angle(geom.a, b_next, geom.d)?;
                Ok((sol, b_next, beta_next))
            });
        let (sol, b_next, beta_next) = match solved {
            Ok(v) => v,
            Err(_) => {
                curve.stop_reason = StopReason::NoSolution;
                return Ok(curve);
            }
        };
        let tip_next = tip + sol.delta_tip_step;
        let delta_prev = step * cast::<T>((k - 1) as f64);
        let hits_clearance = tip_next >= clearance;
        let hits_limit = tip_next >= limit;
        if hits_limit && (!hits_clearance || limit <= clearance) {
            // land exactly on the wall: interpolate the advance inside the
            // crossing step and pin the tip to the limit
            let frac = if sol.delta_tip_step > T::zero() {
                (limit - tip) / sol.delta_tip_step
            } else {
                T::one()
            };
            curve.rows.push(CurveRow {
                delta: delta_prev + step * frac,
                delta_tip: limit,
                b: b_next,
                beta: beta_next,
                phi: sol.phi,
                f_x: sol.f_x,
                f_y: sol.f_y,
            });
            curve.stop_reason = StopReason::Interference;
            return Ok(curve);
        }
        curve.rows.push(CurveRow {
            delta: step * cast::<T>(k as f64),
            delta_tip: tip_next,
            b: b_next,
            beta: beta_next,
            phi: sol.phi,
            f_x: sol.f_x,
            f_y: sol.f_y,
        });
        if hits_clearance {
            curve.stop_reason = StopReason::ClearanceReached;
            return Ok(curve);
        }
        b = b_next;
        tip = tip_next;
    }
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};

    fn sample_geometry() -> ColletGeometry<f64> {
        ColletGeometry {
            a: 34.0,
            b0: 26.5,
            c: 3.0,
            d: 34.0,
            t: 2.0,
            gamma: 0.2,
            elastic_modulus: 1700.0,
            leaves: 4,
            rest_opening: 53.0,
            pitch: 1.5,
        }
    }

    fn synthetic_curve(rows: Vec<CurveRow<f64>>) -> DeflectionCurve<f64> {
        DeflectionCurve {
            geometry: sample_geometry(),
            n_steps: rows.len().saturating_sub(1).max(1),
            step: 1.0,
            clearance: 1.5,
            rows,
            stop_reason: StopReason::ReachedDelta,
        }
    }

    fn row(delta: f64, tip: f64) -> CurveRow<f64> {
        CurveRow {
            delta,
            delta_tip: tip,
            b: 26.5,
            beta: 0.6,
            phi: 0.6,
            f_x: 0.0,
            f_y: 0.0,
        }
    }

    #[test]
    fn thread_advance_is_pitch_times_turns() {
        assert_eq!(thread_to_displacement(1.5, 2.0), 3.0);
        assert_eq!(thread_to_displacement(1.5, 0.0), 0.0);
    }

    #[test]
    fn interference_limit_reference_values() {
        let g3 = sample_geometry();
        assert_relative_eq!(interference_limit(&g3), 6.0 / std::f64::consts::PI, max_relative = 1e-15);
        let g6 = ColletGeometry { c: 6.0, ..sample_geometry() };
        assert_relative_eq!(interference_limit(&g6), 12.0 / std::f64::consts::PI, max_relative = 1e-15);
        let g8 = ColletGeometry { leaves: 8, ..sample_geometry() };
        assert_relative_eq!(interference_limit(&g8), 12.0 / std::f64::consts::PI, max_relative = 1e-15);
    }

    #[test]
    fn zero_advance_yields_rest_row_only() {
        let geom = sample_geometry();
        let curve = march(&geom, 0.0, 60, 1.5).unwrap();
        assert_eq!(curve.stop_reason, StopReason::ReachedDelta);
        assert_eq!(curve.rows.len(), 1);
        let r = &curve.rows[0];
        assert_eq!(r.delta, 0.0);
        assert_eq!(r.delta_tip, 0.0);
        assert_eq!(r.b, 26.5);
        assert_eq!(r.beta, r.phi);
        assert_eq!((r.f_x, r.f_y), (0.0, 0.0));
    }

    #[test]
    fn march_rejects_bad_arguments() {
        let geom = sample_geometry();
        assert!(march(&geom, -1.0, 60, 1.5).is_err());
        assert!(march(&geom, 10.0, 0, 1.5).is_err());
        assert!(march(&geom, 10.0, 60, 0.0).is_err());
        assert!(march(&geom, f64::NAN, 60, 1.5).is_err());
        let bad = ColletGeometry { a: -1.0, ..geom };
        assert!(march(&bad, 10.0, 60, 1.5).is_err());
    }

    #[test]
    fn sample_march_stops_at_clearance() {
        let geom = sample_geometry();
        let curve = march(&geom, 10.0, 60, 1.5).unwrap();
        assert_eq!(curve.stop_reason, StopReason::ClearanceReached);
        let last = curve.rows.last().unwrap();
        let prev = &curve.rows[curve.rows.len() - 2];
        assert!(last.delta_tip >= 1.5);
        assert!(prev.delta_tip < 1.5);
        assert!(curve.rows.len() <= 61);
    }

    #[test]
    fn march_rows_are_monotone() {
        let geom = sample_geometry();
        let curve = march(&geom, 10.0, 60, 1.5).unwrap();
        assert!(curve.rows.len() > 2);
        for pair in curve.rows.windows(2) {
            let (prev, next) = (&pair[0], &pair[1]);
            assert!(next.delta > prev.delta);
            assert!(next.delta_tip >= prev.delta_tip);
            assert!(next.b < prev.b);
            assert!(next.beta > prev.beta);
            assert!(next.phi > prev.beta, "slide must move the contact");
            assert!(next.f_x > 0.0 && next.f_y > 0.0);
        }
    }

    #[test]
    fn march_is_deterministic() {
        let geom = sample_geometry();
        let one = march(&geom, 10.0, 60, 1.5).unwrap();
        let two = march(&geom, 10.0, 60, 1.5).unwrap();
        assert_eq!(one, two);
    }

    #[test]
    fn oversized_step_stops_without_solution() {
        let geom = sample_geometry();
        let curve = march(&geom, 60.0, 2, 1.5).unwrap();
        assert_eq!(curve.stop_reason, StopReason::NoSolution);
        assert_eq!(curve.rows.len(), 1);
    }

    #[test]
    fn interference_clamps_onto_the_limit() {
        // narrow slots bring the interference wall below the clearance
        let geom = ColletGeometry { c: 1.0, ..sample_geometry() };
        let limit = interference_limit(&geom);
        assert!(limit < 1.5);
        let curve = march(&geom, 10.0, 60, 1.5).unwrap();
        assert_eq!(curve.stop_reason, StopReason::Interference);
        let last = curve.rows.last().unwrap();
        assert_eq!(last.delta_tip, limit);
        assert!(last.delta < 10.0);
        // the clamped advance stays inside its step
        let prev = &curve.rows[curve.rows.len() - 2];
        assert!(last.delta > prev.delta && last.delta <= prev.delta + curve.step);
        let (lo, hi) = grip_range(&geom, &curve);
        assert_eq!(hi, 53.0);
        assert_abs_diff_eq!(lo, 53.0 - 2.0 * limit, epsilon = 1e-12);
    }

    #[test]
    fn grip_range_arithmetic() {
        let geom = sample_geometry();
        let curve = synthetic_curve(vec![row(0.0, 0.0), row(1.0, 1.5)]);
        assert_eq!(grip_range(&geom, &curve), (50.0, 53.0));
        let rest_only = synthetic_curve(vec![row(0.0, 0.0)]);
        assert_eq!(grip_range(&geom, &rest_only), (53.0, 53.0));
    }

    #[test]
    fn interpolation_helpers() {
        let curve = synthetic_curve(vec![row(0.0, 0.0), row(1.0, 1.0), row(2.0, 3.0)]);
        assert_eq!(curve.tip_at(0.0), Some(0.0));
        assert_eq!(curve.tip_at(0.5), Some(0.5));
        assert_eq!(curve.tip_at(1.5), Some(2.0));
        assert_eq!(curve.tip_at(2.0), Some(3.0));
        assert_eq!(curve.tip_at(2.1), None);
        assert_eq!(curve.tip_at(-0.1), None);
        assert_eq!(curve.delta_at_tip(0.0), Some(0.0));
        assert_eq!(curve.delta_at_tip(2.0), Some(1.5));
        assert_eq!(curve.delta_at_tip(3.0), Some(2.0));
        assert_eq!(curve.delta_at_tip(3.1), None);
        assert_eq!(curve.max_tip(), 3.0);
        assert_eq!(curve.final_delta(), 2.0);
    }
}
