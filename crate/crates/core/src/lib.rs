//! Analytical model of a screw-driven collet-chuck gripping mechanism.
//!
//! Each jaw of the collet is treated as a cantilevered quarter-ellipse beam.
//! As the adaptor ring is screwed over the collet it advances axially,
//! sliding its rim along the jaw toward the tip and squeezing the ellipse;
//! the jaw tips close onto the gripped knob. This crate computes that
//! closing motion:
//!
//! - [`geometry`] — polar-ellipse description of a jaw and the contact-point
//!   kinematics as the adaptor advances,
//! - [`section`] — circular-arc cross-section properties along the jaw,
//! - [`mechanics`] — per-step contact statics via Castigliano's second
//!   theorem (energy method),
//! - [`solver`] — the incremental march producing a tip-deflection curve,
//!   stopping rules and grip-range arithmetic,
//! - [`designspace`] — parameter sweeps over chuck slot width and adaptor
//!   diameter, plus the S1–S5 sample geometries,
//! - [`oracle`] — an independent planar-frame finite-element solver used to
//!   validate the analytical steps.
//!
//! All numerics are generic over the floating-point scalar via [`Scalar`];
//! `f64` aliases for the main types live at the crate root. Every function is
//! pure and deterministic: identical inputs give bit-identical outputs.

// Validation guards are written `!(x > 0)` so NaN fails them, and the
// banded solves index by position on purpose.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod designspace;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod mechanics;
pub mod oracle;
pub mod quad;
pub mod rootfind;
pub mod scalar;
pub mod section;
pub mod solver;

pub use error::ModelError;
pub use scalar::{cast, Scalar};

pub use designspace::{sweep, DesignSpaceGrid, Preset, Scenario};
pub use geometry::{ColletGeometry, EllipseState};
pub use mechanics::{solve_contact_step, ComplianceCoefficients, ContactSolution};
pub use oracle::{
    build_mesh, solve_static, validate_step, verify_curve, AxialModel, OracleMesh,
    OracleResult, StepCheck, StepErrors,
};
pub use section::SectionProperties;
pub use solver::{
    grip_range, interference_limit, march, thread_to_displacement, CurveRow,
    DeflectionCurve, StopReason,
};

/// `f64` instantiations of the main domain types.
pub type ColletGeometry64 = geometry::ColletGeometry<f64>;
pub type EllipseState64 = geometry::EllipseState<f64>;
pub type SectionProperties64 = section::SectionProperties<f64>;
pub type ContactSolution64 = mechanics::ContactSolution<f64>;
pub type DeflectionCurve64 = solver::DeflectionCurve<f64>;
pub type DesignSpaceGrid64 = designspace::DesignSpaceGrid<f64>;
pub type OracleMesh64 = oracle::OracleMesh<f64>;
pub type OracleResult64 = oracle::OracleResult<f64>;
