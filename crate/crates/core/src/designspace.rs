//! Named sample geometries and one-parameter design sweeps.

use crate::error::{domain, invalid_geometry, ModelError};
use crate::geometry::ColletGeometry;
use crate::scalar::{cast, Scalar};
use crate::solver::{march, DeflectionCurve};
use std::fmt;
use std::str::FromStr;

/// Number of points on the common advance grid a sweep is resampled to.
pub const GRID_SAMPLES: usize = 200;

/// Which design parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Vary the slot width c.
    ChuckSize,
    /// Vary the adaptor bore diameter d.
    AdaptorDiameter,
}

impl Scenario {
    /// Stable lowercase name, used by file formats and the CLI.
    pub fn as_str(self) -> &'static str {
        match self {
            Scenario::ChuckSize => "chuck-size",
            Scenario::AdaptorDiameter => "adaptor-diameter",
        }
    }

    fn apply<T: Scalar>(self, base: &ColletGeometry<T>, value: T) -> ColletGeometry<T> {
        let mut geom = *base;
        match self {
            Scenario::ChuckSize => geom.c = value,
            Scenario::AdaptorDiameter => geom.d = value,
        }
        geom
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scenario {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "chuck-size" => Ok(Scenario::ChuckSize),
            "adaptor-diameter" => Ok(Scenario::AdaptorDiameter),
            other => Err(domain(format!(
                "unknown scenario `{other}` (expected chuck-size or adaptor-diameter)"
            ))),
        }
    }
}

/// Built-in sample geometries, all sharing the same jaw ellipse and
/// differing in slot width and adaptor bore.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    S1,
    S2,
    S3,
    S4,
    S5,
}

impl Preset {
    /// All presets in order.
    pub const ALL: [Preset; 5] = [Preset::S1, Preset::S2, Preset::S3, Preset::S4, Preset::S5];

    /// Stable name.
    pub fn as_str(self) -> &'static str {
        match self {
            Preset::S1 => "S1",
            Preset::S2 => "S2",
            Preset::S3 => "S3",
            Preset::S4 => "S4",
            Preset::S5 => "S5",
        }
    }

    /// The sample geometry this preset names.
    pub fn geometry<T: Scalar>(self) -> ColletGeometry<T> {
        let (c, d) = match self {
            Preset::S1 => (3.0, 34.0),
            Preset::S2 => (6.0, 34.0),
            Preset::S3 => (4.0, 34.0),
            Preset::S4 => (4.0, 30.0),
            Preset::S5 => (4.0, 40.0),
        };
        ColletGeometry {
            a: cast(34.0),
            b0: cast(26.5),
            c: cast(c),
            d: cast(d),
            t: cast(2.0),
            gamma: cast(0.2),
            elastic_modulus: cast(1700.0),
            leaves: 4,
            rest_opening: cast(53.0),
            pitch: cast(1.5),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Preset {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "S1" => Ok(Preset::S1),
            "S2" => Ok(Preset::S2),
            "S3" => Ok(Preset::S3),
            "S4" => Ok(Preset::S4),
            "S5" => Ok(Preset::S5),
            _ => Err(ModelError::UnknownPreset(s.to_string())),
        }
    }
}

/// A family of marches over one varied parameter, resampled onto a shared
/// advance grid so the curves compare point by point.
#[derive(Debug, Clone, PartialEq)]
pub struct DesignSpaceGrid<T> {
    /// Parameter that was varied.
    pub scenario: Scenario,
    /// Geometry the variations were applied to.
    pub base: ColletGeometry<T>,
    /// Parameter values, one per curve.
    pub swept_values: Vec<T>,
    /// Marched curve for each value.
    pub curves: Vec<DeflectionCurve<T>>,
    /// Advance grid shared by all curves: uniform from zero to the
    /// shortest curve's final advance.
    pub common_delta_grid: Vec<T>,
}

impl<T: Scalar> DesignSpaceGrid<T> {
    /// Tip deflection of one curve resampled onto the common grid.
    pub fn tip_on_common_grid(&self, idx: usize) -> Vec<T> {
        let curve = &self.curves[idx];
        self.common_delta_grid
            .iter()
            .map(|&delta| {
                curve
                    .tip_at(delta)
                    .expect("common grid lies inside every curve")
            })
            .collect()
    }
}

/// Marches one curve per swept value.
///
/// Every perturbed geometry must be valid up front; a sweep with any
/// unbuildable point is rejected whole. Individual marches may still stop
/// early, recorded in their stop reasons.
pub fn sweep<T: Scalar>(
    base: &ColletGeometry<T>,
    scenario: Scenario,
    values: &[T],
    delta_total: T,
    n_steps: usize,
    clearance: T,
) -> Result<DesignSpaceGrid<T>, ModelError> {
    if values.is_empty() {
        return Err(domain("sweep needs at least one parameter value"));
    }
    let mut geoms = Vec::with_capacity(values.len());
    for &value in values {
        let geom = scenario.apply(base, value);
        geom.validate().map_err(|e| {
            invalid_geometry(format!("swept value {value} ({scenario}): {e}"))
        })?;
        geoms.push(geom);
    }
    let mut curves = Vec::with_capacity(geoms.len());
    for geom in &geoms {
        curves.push(march(geom, delta_total, n_steps, clearance)?);
    }
    let shortest = curves
        .iter()
        .map(|c| c.final_delta())
        .fold(T::infinity(), T::min);
    let common_delta_grid = if shortest <= T::zero() {
        vec![T::zero()]
    } else {
        (0..GRID_SAMPLES)
            .map(|j| shortest * cast::<T>(j as f64 / (GRID_SAMPLES - 1) as f64))
            .collect()
    };
    Ok(DesignSpaceGrid {
        scenario,
        base: *base,
        swept_values: values.to_vec(),
        curves,
        common_delta_grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solver::march;

    #[test]
    fn preset_table() {
        let cases: [(Preset, f64, f64); 5] = [
            (Preset::S1, 3.0, 34.0),
            (Preset::S2, 6.0, 34.0),
            (Preset::S3, 4.0, 34.0),
            (Preset::S4, 4.0, 30.0),
            (Preset::S5, 4.0, 40.0),
        ];
        for (preset, c, d) in cases {
            let g: ColletGeometry<f64> = preset.geometry();
            assert_eq!((g.c, g.d), (c, d), "{preset}");
            assert_eq!((g.a, g.b0), (34.0, 26.5));
            assert_eq!((g.t, g.gamma), (2.0, 0.2));
            assert_eq!(g.elastic_modulus, 1700.0);
            assert_eq!(g.leaves, 4);
            assert_eq!((g.rest_opening, g.pitch), (53.0, 1.5));
            g.validate().unwrap();
        }
    }

    #[test]
    fn preset_names_round_trip() {
        for p in Preset::ALL {
            assert_eq!(p.as_str().parse::<Preset>().unwrap(), p);
            assert_eq!(p.as_str().to_lowercase().parse::<Preset>().unwrap(), p);
        }
        assert!(matches!(
            "S9".parse::<Preset>(),
            Err(ModelError::UnknownPreset(_))
        ));
    }

    #[test]
    fn scenario_names_round_trip() {
        for s in [Scenario::ChuckSize, Scenario::AdaptorDiameter] {
            assert_eq!(s.as_str().parse::<Scenario>().unwrap(), s);
        }
        assert!("width".parse::<Scenario>().is_err());
    }

    #[test]
    fn singleton_sweep_equals_direct_march() {
        let base: ColletGeometry<f64> = Preset::S3.geometry();
        let grid = sweep(&base, Scenario::ChuckSize, &[4.0], 6.0, 30, 1.5).unwrap();
        let direct = march(&base, 6.0, 30, 1.5).unwrap();
        assert_eq!(grid.curves.len(), 1);
        assert_eq!(grid.curves[0], direct);
        assert_eq!(grid.common_delta_grid.len(), GRID_SAMPLES);
        assert_eq!(*grid.common_delta_grid.last().unwrap(), direct.final_delta());
    }

    #[test]
    fn sweep_rejects_any_invalid_point() {
        let base: ColletGeometry<f64> = Preset::S3.geometry();
        // d beyond the jaw opening invalidates that point and the sweep
        let err = sweep(
            &base,
            Scenario::AdaptorDiameter,
            &[34.0, 60.0],
            6.0,
            30,
            1.5,
        )
        .unwrap_err();
        assert!(matches!(err, ModelError::InvalidGeometry(_)));
        assert!(sweep(&base, Scenario::ChuckSize, &[], 6.0, 30, 1.5).is_err());
    }

    #[test]
    fn wider_slots_slightly_trim_tip_travel() {
        // tip-per-advance is a compliance-weighted mean of x/(x - x_contact),
        // which shrinks toward the root; widening the slots thins the root
        // sections fastest, tilting the weight there, so the tip response
        // at matched advance drops, and only slightly
        let base: ColletGeometry<f64> = Preset::S3.geometry();
        let grid = sweep(&base, Scenario::ChuckSize, &[3.0, 4.0, 6.0], 6.0, 30, 1.5).unwrap();
        let narrow = grid.tip_on_common_grid(0);
        let mid = grid.tip_on_common_grid(1);
        let wide = grid.tip_on_common_grid(2);
        for i in 0..grid.common_delta_grid.len() {
            assert!(narrow[i] >= mid[i] - 1e-12);
            assert!(mid[i] >= wide[i] - 1e-12);
        }
        let last = grid.common_delta_grid.len() - 1;
        assert!(narrow[last] > wide[last]);
        assert!(narrow[last] - wide[last] < 0.05 * narrow[last]);
    }

    #[test]
    fn smaller_bores_deflect_more() {
        let base: ColletGeometry<f64> = Preset::S3.geometry();
        let grid = sweep(
            &base,
            Scenario::AdaptorDiameter,
            &[30.0, 34.0, 40.0],
            6.0,
            30,
            1.5,
        )
        .unwrap();
        let small = grid.tip_on_common_grid(0);
        let mid = grid.tip_on_common_grid(1);
        let large = grid.tip_on_common_grid(2);
        for i in 0..grid.common_delta_grid.len() {
            assert!(small[i] >= mid[i] - 1e-12);
            assert!(mid[i] >= large[i] - 1e-12);
        }
    }

    #[test]
    fn sweep_is_deterministic() {
        let base: ColletGeometry<f64> = Preset::S4.geometry();
        let one = sweep(&base, Scenario::ChuckSize, &[3.0, 5.0], 4.0, 20, 1.5).unwrap();
        let two = sweep(&base, Scenario::ChuckSize, &[3.0, 5.0], 4.0, 20, 1.5).unwrap();
        assert_eq!(one, two);
    }
}
