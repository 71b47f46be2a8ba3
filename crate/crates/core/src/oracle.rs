//! Finite-element cross-check of the energy-method model.
//!
//! The jaw arc is discretized into straight two-node Euler-Bernoulli frame
//! elements (axial + bending, three DOF per node) and solved directly.
//! The analytical model is pure bending, so by default the arc's axial
//! rigidity is pinned six orders of magnitude above its span-scale bending
//! rigidity, making axial strain negligible; a physical-area switch exists
//! for sensitivity checks. The solver shares no formulas with the energy
//! method beyond the section properties, which is the point: agreement of
//! two independent routes.

use crate::error::{domain, ModelError};
use crate::geometry::{contact_angle, radius_unchecked, ColletGeometry, EllipseState};
use crate::linalg::BandedSpd;
use crate::mechanics::{solve_contact_step, ContactSolution};
use crate::scalar::{cast, Scalar};
use crate::section::section_at;
use crate::solver::DeflectionCurve;

/// How element axial stiffness is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxialModel {
    /// Axial rigidity pinned to 1e6 times the span-scale bending rigidity
    /// 12*E*I/S^2, so the whole arc stretches a millionth of what it bends.
    /// Anchoring the penalty to the span instead of the element keeps it
    /// growing like a physical axial term (1/length) under refinement;
    /// a per-element anchor grows like 1/length^3 and its norm swamps
    /// fine-mesh solves with roundoff.
    RigidDominant,
    /// Physical axial stiffness E*A/L from the section area.
    Physical,
}

/// One straight frame element between two mesh nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrameElement<T> {
    pub node_i: usize,
    pub node_j: usize,
    /// Centroidal bending moment of inertia, mm^4.
    pub i_c: T,
    /// Section area, mm^2; used by [`AxialModel::Physical`].
    pub area: T,
    /// Elastic modulus, MPa.
    pub elastic_modulus: T,
}

/// Polyline mesh of the jaw arc. Node 0 is fully clamped.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleMesh<T> {
    /// Node coordinates (x, y) in mm, running from the clamped base to
    /// the free tip.
    pub nodes: Vec<[T; 2]>,
    /// Elements connecting consecutive nodes.
    pub elements: Vec<FrameElement<T>>,
    /// Node the adaptor contact forces act on.
    pub contact_node: usize,
    /// Free-tip node (the apex).
    pub tip_node: usize,
    /// Total polyline length, mm; scales [`AxialModel::RigidDominant`].
    pub span: T,
}

/// Static solution on an [`OracleMesh`].
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult<T> {
    /// Per-node (u, v, rotation); mm, mm, rad.
    pub displacements: Vec<[T; 3]>,
    /// Vertical displacement of the contact node.
    pub contact_v: T,
    /// Vertical displacement of the tip node.
    pub tip_v: T,
}

/// Analytical-vs-FE errors for one march step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepErrors<T> {
    /// Contact closure error.
    pub contact: T,
    /// Tip deflection error.
    pub tip: T,
    /// True when the errors are relative; absolute when the step carried
    /// no gap to normalize by.
    pub relative: bool,
}

/// [`StepErrors`] of one step of a replayed curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepCheck<T> {
    /// Step index within the curve (1-based; row 0 is the rest state).
    pub step: usize,
    /// Cumulative advance after the step.
    pub delta: T,
    /// Analytical gap the step closed.
    pub gap: T,
    /// Analytical tip deflection the step added.
    pub tip_step: T,
    /// FE-vs-analytical errors.
    pub errors: StepErrors<T>,
}

impl<T: Scalar> OracleMesh<T> {
    /// Mesh over an explicit polyline with uniform section properties.
    /// Used by the closed-form benchmarks; node 0 is clamped, the last
    /// node doubles as contact and tip.
    pub fn from_polyline(nodes: Vec<[T; 2]>, i_c: T, area: T, elastic_modulus: T) -> Self {
        assert!(nodes.len() >= 2, "a mesh needs at least one element");
        let elements = (0..nodes.len() - 1)
            .map(|i| FrameElement {
                node_i: i,
                node_j: i + 1,
                i_c,
                area,
                elastic_modulus,
            })
            .collect();
        let last = nodes.len() - 1;
        let span = polyline_length(&nodes);
        OracleMesh {
            nodes,
            elements,
            contact_node: last,
            tip_node: last,
            span,
        }
    }
}

fn polyline_length<T: Scalar>(nodes: &[[T; 2]]) -> T {
    let mut total = T::zero();
    for pair in nodes.windows(2) {
        let (dx, dy) = (pair[1][0] - pair[0][0], pair[1][1] - pair[0][1]);
        total = total + (dx * dx + dy * dy).sqrt();
    }
    total
}

/// Discretizes the jaw arc from the clamped base to the apex with
/// `n_elems` elements at uniform polar spacing, snapping the nearest
/// interior node onto the contact angle so point loads land exactly.
pub fn build_mesh<T: Scalar>(
    geom: &ColletGeometry<T>,
    state: &EllipseState<T>,
    n_elems: usize,
) -> Result<OracleMesh<T>, ModelError> {
    if n_elems < 16 {
        return Err(domain(format!(
            "mesh needs at least 16 elements, got {n_elems}"
        )));
    }
    let beta = contact_angle(state.a, state.b, geom.d)?;
    if beta >= T::FRAC_PI_2() {
        return Err(domain(
            "contact at the apex coincides with the tip node; the mesh cannot separate them",
        ));
    }
    let span = T::FRAC_PI_2() - geom.gamma;
    let n = n_elems;
    let mut thetas: Vec<T> = (0..=n)
        .map(|i| geom.gamma + span * cast::<T>(i as f64 / n as f64))
        .collect();
    thetas[n] = T::FRAC_PI_2();
    let snap = ((beta - geom.gamma) / span * cast::<T>(n as f64))
        .round()
        .to_f64()
        .unwrap_or(1.0) as usize;
    let snap = snap.clamp(1, n - 1);
    thetas[snap] = beta;

    let nodes: Vec<[T; 2]> = thetas
        .iter()
        .map(|&theta| {
            let r = radius_unchecked(state.a, state.b, theta);
            let (s, c) = theta.sin_cos();
            [r * c, r * s]
        })
        .collect();
    let mut elements = Vec::with_capacity(n);
    for i in 0..n {
        let mid = (thetas[i] + thetas[i + 1]) / cast::<T>(2.0);
        let sec = section_at(geom, state, mid)?;
        elements.push(FrameElement {
            node_i: i,
            node_j: i + 1,
            i_c: sec.i_c,
            area: sec.r_bar * sec.alpha * geom.t,
            elastic_modulus: geom.elastic_modulus,
        });
    }
    let span = polyline_length(&nodes);
    Ok(OracleMesh {
        nodes,
        elements,
        contact_node: snap,
        tip_node: n,
        span,
    })
}

/// Global 6x6 stiffness of one element.
fn element_stiffness<T: Scalar>(
    elem: &FrameElement<T>,
    nodes: &[[T; 2]],
    span: T,
    axial: AxialModel,
) -> Result<[[T; 6]; 6], ModelError> {
    let [xi, yi] = nodes[elem.node_i];
    let [xj, yj] = nodes[elem.node_j];
    let (dx, dy) = (xj - xi, yj - yi);
    let length = (dx * dx + dy * dy).sqrt();
    if !(length > T::zero()) {
        return Err(domain("degenerate zero-length element"));
    }
    let (c, s) = (dx / length, dy / length);
    let ei = elem.elastic_modulus * elem.i_c;
    let l2 = length * length;
    let l3 = l2 * length;
    let twelve = cast::<T>(12.0);
    let k_bend = twelve * ei / l3;
    let k_axial = match axial {
        AxialModel::Physical => elem.elastic_modulus * elem.area / length,
        AxialModel::RigidDominant => cast::<T>(1e6) * twelve * ei / (span * span * length),
    };
    let k_shear_rot = cast::<T>(6.0) * ei / l2;
    let k_rot = cast::<T>(4.0) * ei / length;
    let k_rot_far = cast::<T>(2.0) * ei / length;
    let z = T::zero();
    let local: [[T; 6]; 6] = [
        [k_axial, z, z, -k_axial, z, z],
        [z, k_bend, k_shear_rot, z, -k_bend, k_shear_rot],
        [z, k_shear_rot, k_rot, z, -k_shear_rot, k_rot_far],
        [-k_axial, z, z, k_axial, z, z],
        [z, -k_bend, -k_shear_rot, z, k_bend, -k_shear_rot],
        [z, k_shear_rot, k_rot_far, z, -k_shear_rot, k_rot],
    ];
    // rotation from global to local DOFs, block diagonal per node
    let mut rot = [[z; 6]; 6];
    for blk in [0, 3] {
        rot[blk][blk] = c;
        rot[blk][blk + 1] = s;
        rot[blk + 1][blk] = -s;
        rot[blk + 1][blk + 1] = c;
        rot[blk + 2][blk + 2] = T::one();
    }
    // K_global = R^T * K_local * R
    let mut kr = [[z; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let mut acc = z;
            for m in 0..6 {
                acc = acc + local[i][m] * rot[m][j];
            }
            kr[i][j] = acc;
        }
    }
    let mut kg = [[z; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let mut acc = z;
            for m in 0..6 {
                acc = acc + rot[m][i] * kr[m][j];
            }
            kg[i][j] = acc;
        }
    }
    Ok(kg)
}

/// Solves the clamped frame under nodal forces `(node, fx, fy)`.
pub fn solve_static<T: Scalar>(
    mesh: &OracleMesh<T>,
    loads: &[(usize, T, T)],
    axial: AxialModel,
) -> Result<OracleResult<T>, ModelError> {
    let n_nodes = mesh.nodes.len();
    if n_nodes < 2 || mesh.elements.is_empty() {
        return Err(domain("mesh must have at least one element"));
    }
    for elem in &mesh.elements {
        if elem.node_i >= n_nodes || elem.node_j >= n_nodes {
            return Err(domain("element references a missing node"));
        }
    }
    for &(node, _, _) in loads {
        if node >= n_nodes {
            return Err(domain(format!("load on missing node {node}")));
        }
    }
    let ndof = 3 * n_nodes;
    let hb = mesh
        .elements
        .iter()
        .map(|e| 3 * e.node_i.abs_diff(e.node_j) + 2)
        .max()
        .unwrap();
    let mut stiffness = BandedSpd::new(ndof, hb);
    for elem in &mesh.elements {
        let kg = element_stiffness(elem, &mesh.nodes, mesh.span, axial)?;
        let dofs = [
            3 * elem.node_i,
            3 * elem.node_i + 1,
            3 * elem.node_i + 2,
            3 * elem.node_j,
            3 * elem.node_j + 1,
            3 * elem.node_j + 2,
        ];
        for (a, &da) in dofs.iter().enumerate() {
            for (b, &db) in dofs.iter().enumerate() {
                stiffness.add(da, db, kg[a][b]);
            }
        }
    }
    for dof in 0..3 {
        stiffness.clamp_dof(dof);
    }
    let mut rhs = vec![T::zero(); ndof];
    for &(node, fx, fy) in loads {
        rhs[3 * node] = rhs[3 * node] + fx;
        rhs[3 * node + 1] = rhs[3 * node + 1] + fy;
    }
    for dof in 0..3 {
        rhs[dof] = T::zero();
    }
    let solution = stiffness.cholesky()?.solve(&rhs);
    let displacements: Vec<[T; 3]> = (0..n_nodes)
        .map(|i| [solution[3 * i], solution[3 * i + 1], solution[3 * i + 2]])
        .collect();
    let contact_v = displacements[mesh.contact_node][1];
    let tip_v = displacements[mesh.tip_node][1];
    Ok(OracleResult {
        displacements,
        contact_v,
        tip_v,
    })
}

/// Internal strain energy of a solved mesh: sum of 1/2 u^T K_e u over
/// elements.
pub fn strain_energy<T: Scalar>(
    mesh: &OracleMesh<T>,
    displacements: &[[T; 3]],
    axial: AxialModel,
) -> Result<T, ModelError> {
    let mut total = T::zero();
    for elem in &mesh.elements {
        let kg = element_stiffness(elem, &mesh.nodes, mesh.span, axial)?;
        let u = [
            displacements[elem.node_i][0],
            displacements[elem.node_i][1],
            displacements[elem.node_i][2],
            displacements[elem.node_j][0],
            displacements[elem.node_j][1],
            displacements[elem.node_j][2],
        ];
        let mut e = T::zero();
        for i in 0..6 {
            let mut row = T::zero();
            for j in 0..6 {
                row = row + kg[i][j] * u[j];
            }
            e = e + u[i] * row;
        }
        total = total + e / cast::<T>(2.0);
    }
    Ok(total)
}

/// Replays one solved step through the FE oracle: the analytical contact
/// forces are applied (pressing down and inward) and the resulting contact
/// closure and tip drop are compared with the analytical gap and tip
/// increment.
///
/// Errors are relative when the step carried a positive gap and tip
/// increment; zero-gap steps fall back to absolute errors, flagged on the
/// result.
pub fn validate_step<T: Scalar>(
    geom: &ColletGeometry<T>,
    state: &EllipseState<T>,
    solution: &ContactSolution<T>,
    n_elems: usize,
) -> Result<StepErrors<T>, ModelError> {
    let mesh = build_mesh(geom, state, n_elems)?;
    let loads = [(mesh.contact_node, -solution.f_x, -solution.f_y)];
    let result = solve_static(&mesh, &loads, AxialModel::RigidDominant)?;
    let contact_drop = -result.contact_v;
    let tip_drop = -result.tip_v;
    if solution.gap > T::zero() && solution.delta_tip_step > T::zero() {
        Ok(StepErrors {
            contact: ((contact_drop - solution.gap) / solution.gap).abs(),
            tip: ((tip_drop - solution.delta_tip_step) / solution.delta_tip_step).abs(),
            relative: true,
        })
    } else {
        Ok(StepErrors {
            contact: (contact_drop - solution.gap).abs(),
            tip: (tip_drop - solution.delta_tip_step).abs(),
            relative: false,
        })
    }
}

/// Re-solves every step of a marched curve and validates each against the
/// FE oracle.
pub fn verify_curve<T: Scalar>(
    geom: &ColletGeometry<T>,
    curve: &DeflectionCurve<T>,
    n_elems: usize,
) -> Result<Vec<StepCheck<T>>, ModelError> {
    let mut checks = Vec::with_capacity(curve.rows.len().saturating_sub(1));
    for k in 1..curve.rows.len() {
        let state = EllipseState {
            a: geom.a,
            b: curve.rows[k - 1].b,
            step_index: k - 1,
        };
        let solution = solve_contact_step(geom, &state, curve.step)?;
        let errors = validate_step(geom, &state, &solution, n_elems)?;
        checks.push(StepCheck {
            step: k,
            delta: curve.rows[k].delta,
            gap: solution.gap,
            tip_step: solution.delta_tip_step,
            errors,
        });
    }
    Ok(checks)
}
