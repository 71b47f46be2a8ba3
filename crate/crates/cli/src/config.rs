//! Run configuration: the JSON file schema, its defaults, and the one-time
//! conversion into model types. File units are human-facing (mm, degrees,
//! MPa); the model works in radians internally.

use collet_core::{thread_to_displacement, ColletGeometry64, Preset};
use serde::{Deserialize, Serialize};

/// Everything one invocation needs: geometry, march parameters, an
/// optional sweep, and oracle settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub geometry: GeometryConfig,
    #[serde(default)]
    pub run: RunBlock,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepBlock>,
    #[serde(default)]
    pub oracle: OracleBlock,
}

/// Jaw and adaptor geometry in file units.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeometryConfig {
    pub a_mm: f64,
    pub b_mm: f64,
    pub c_mm: f64,
    pub d_mm: f64,
    pub t_mm: f64,
    pub gamma_deg: f64,
    pub elastic_modulus_mpa: f64,
    pub leaves: u32,
    pub rest_opening_mm: f64,
    pub pitch_mm: f64,
}

/// March parameters. Exactly one of `delta_total_mm` and `revolutions`
/// must be present; revolutions convert through the thread pitch.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunBlock {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_total_mm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub revolutions: Option<f64>,
    #[serde(default = "default_n_steps")]
    pub n_steps: usize,
    #[serde(default = "default_clearance")]
    pub clearance_mm: f64,
}

/// One-parameter design sweep: which knob to turn and the values to try.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepBlock {
    /// `chuck` (slot width) or `adaptor` (bore diameter).
    pub scenario: String,
    pub values_mm: Vec<f64>,
}

/// Finite-element cross-check settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OracleBlock {
    #[serde(default = "default_n_elems")]
    pub n_elems: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
}

fn default_n_steps() -> usize {
    60
}

fn default_clearance() -> f64 {
    1.5
}

fn default_n_elems() -> usize {
    400
}

fn default_tolerance() -> f64 {
    0.10
}

impl Default for RunBlock {
    fn default() -> Self {
        RunBlock {
            // covers every built-in preset's clearance stop with margin
            delta_total_mm: Some(1.0),
            revolutions: None,
            n_steps: default_n_steps(),
            clearance_mm: default_clearance(),
        }
    }
}

impl Default for OracleBlock {
    fn default() -> Self {
        OracleBlock {
            n_elems: default_n_elems(),
            tolerance: default_tolerance(),
        }
    }
}

impl GeometryConfig {
    pub fn from_preset(preset: Preset) -> Self {
        let geom: ColletGeometry64 = preset.geometry();
        GeometryConfig {
            a_mm: geom.a,
            b_mm: geom.b0,
            c_mm: geom.c,
            d_mm: geom.d,
            t_mm: geom.t,
            gamma_deg: geom.gamma.to_degrees(),
            elastic_modulus_mpa: geom.elastic_modulus,
            leaves: geom.leaves,
            rest_opening_mm: geom.rest_opening,
            pitch_mm: geom.pitch,
        }
    }
}

impl RunConfig {
    /// Preset geometry with default run and oracle blocks.
    pub fn from_preset(preset: Preset) -> Self {
        RunConfig {
            geometry: GeometryConfig::from_preset(preset),
            run: RunBlock::default(),
            sweep: None,
            oracle: OracleBlock::default(),
        }
    }

    /// Validated model geometry, angles converted to radians.
    pub fn geometry(&self) -> Result<ColletGeometry64, String> {
        let g = &self.geometry;
        ColletGeometry64 {
            a: g.a_mm,
            b0: g.b_mm,
            c: g.c_mm,
            d: g.d_mm,
            t: g.t_mm,
            gamma: g.gamma_deg.to_radians(),
            elastic_modulus: g.elastic_modulus_mpa,
            leaves: g.leaves,
            rest_opening: g.rest_opening_mm,
            pitch: g.pitch_mm,
        }
        .validated()
        .map_err(|e| e.to_string())
    }

    /// Total adaptor advance for the march, from whichever of the two
    /// run fields is present.
    pub fn delta_total(&self) -> Result<f64, String> {
        match (self.run.delta_total_mm, self.run.revolutions) {
            (Some(delta), None) => Ok(delta),
            (None, Some(rev)) => Ok(thread_to_displacement(self.geometry.pitch_mm, rev)),
            (Some(_), Some(_)) => {
                Err("run block sets both delta_total_mm and revolutions; pick one".into())
            }
            (None, None) => {
                Err("run block needs delta_total_mm or revolutions".into())
            }
        }
    }
}
