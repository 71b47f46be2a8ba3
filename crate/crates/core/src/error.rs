//! Error type shared across the crate.
//!
//! Numeric payloads are stored as `f64` regardless of the working scalar so
//! the error type stays non-generic.

use thiserror::Error;

/// Everything that can go wrong while evaluating the collet model.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    /// A precondition on an argument was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// Geometry parameters violate a construction invariant.
    #[error("invalid geometry: {0}")]
    InvalidGeometry(String),

    /// The adaptor bore never meets the jaw: d > 2b.
    #[error("no contact solution: adaptor bore d = {d} exceeds jaw height 2b = {two_b}")]
    NoContact { d: f64, two_b: f64 },

    /// The adaptor has advanced past the jaw apex (contact abscissa < 0).
    #[error("non-physical state: contact abscissa {x} is past the apex")]
    PastApex { x: f64 },

    /// Minor-axis update has no real solution.
    #[error("minor-axis update impossible: a^2 - x'^2 = {arg} is not positive")]
    MinorAxisDomain { arg: f64 },

    /// The arc cross-section closed up (central angle reached zero).
    #[error("section vanished: central angle {alpha} at radius {r_bar} is not positive")]
    SectionVanished { alpha: f64, r_bar: f64 },

    /// The requested slide distance exceeds the arc left between the contact
    /// point and the apex.
    #[error("no contact-angle solution: step {step} exceeds remaining arc {remaining}")]
    NoSolution { step: f64, remaining: f64 },

    /// The contact-force ratio is unbounded (contact at the apex).
    #[error("contact-force ratio unbounded at beta = {beta}")]
    UnboundedRatio { beta: f64 },

    /// The 2x2 force system degenerated.
    #[error("singular force system: denominator {denominator}")]
    SingularSystem { denominator: f64 },

    /// The assembled frame stiffness matrix is not positive definite.
    #[error("singular stiffness matrix at pivot {pivot}")]
    SingularStiffness { pivot: usize },

    /// A bracketed root search did not converge.
    #[error("root search failed: {0}")]
    RootSearch(String),

    /// No sample geometry with this name exists.
    #[error("unknown preset `{0}` (expected S1..S5)")]
    UnknownPreset(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> ModelError {
    ModelError::Domain(msg.into())
}

pub(crate) fn invalid_geometry(msg: impl Into<String>) -> ModelError {
    ModelError::InvalidGeometry(msg.into())
}
