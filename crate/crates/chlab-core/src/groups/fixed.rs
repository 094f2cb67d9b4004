//! Fixed points of the SO(3) image on S², their kinds, and fibre generators.

use std::fmt;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::quaternion::{hopf, hopf_lift, project_so3, Quaternion, C2};
use super::spec::{Family, GroupSpec};
use super::FiniteSubgroup;
use crate::error::{Error, Result};

/// Tolerance for identifying points of S².
pub const POINT_TOL: f64 = 1e-7;

/// Tolerance for the Hopf equivariance check.
pub const EQUIVARIANCE_TOL: f64 = 1e-9;

/// Kind of an orbifold point of S²/H.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PointKind {
    /// Cyclic minimum, `(−1, 0, 0)`.
    SouthPole,
    /// Cyclic maximum, `(1, 0, 0)`.
    NorthPole,
    /// Dihedral minima.
    Minus,
    /// Dihedral saddles.
    Saddle,
    /// Dihedral maxima (the poles of the rotation axis).
    Plus,
    /// Polyhedral vertices (minima).
    Vertex,
    /// Polyhedral edge midpoints (saddles).
    Edge,
    /// Polyhedral face centres (maxima).
    Face,
}

impl PointKind {
    /// Morse index of the invariant Morse function at points of this kind.
    pub fn morse_index(&self) -> u32 {
        match self {
            PointKind::SouthPole | PointKind::Minus | PointKind::Vertex => 0,
            PointKind::Saddle | PointKind::Edge => 1,
            PointKind::NorthPole | PointKind::Plus | PointKind::Face => 2,
        }
    }

    /// Short symbol used in tables.
    pub fn symbol(&self) -> &'static str {
        match self {
            PointKind::SouthPole => "s",
            PointKind::NorthPole => "n",
            PointKind::Minus => "e-",
            PointKind::Saddle => "h",
            PointKind::Plus => "e+",
            PointKind::Vertex => "V",
            PointKind::Edge => "E",
            PointKind::Face => "F",
        }
    }

    /// True for the kinds whose embedded Reeb orbit is negative hyperbolic.
    pub fn is_saddle(&self) -> bool {
        self.morse_index() == 1
    }
}

impl fmt::Display for PointKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// A kind together with the isotropy order of its points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OrbifoldPointKind {
    /// Which family of points.
    pub kind: PointKind,
    /// Order of the stabiliser in the SO(3) image.
    pub isotropy: u32,
}

/// One H-orbit of points with nontrivial stabiliser (or a cyclic pole).
#[derive(Debug, Clone, PartialEq)]
pub struct FixedPointOrbit {
    /// Kind and isotropy.
    pub point: OrbifoldPointKind,
    /// Deterministically chosen representative.
    pub representative: Vector3<f64>,
    /// All points of the orbit.
    pub points: Vec<Vector3<f64>>,
}

impl FixedPointOrbit {
    /// Number of points in the orbit.
    pub fn orbit_size(&self) -> usize {
        self.points.len()
    }
}

/// Order of the SO(3) image of a group of order `order`.
pub fn image_order(order: usize) -> usize {
    if order.is_multiple_of(2) {
        order / 2
    } else {
        order
    }
}

/// Multiplicity with which the exceptional fibre over a point of the given
/// isotropy covers its embedded quotient orbit: `2·isotropy` for even `|G|`,
/// `isotropy` otherwise.
pub fn covering_multiplicity_for(spec: &GroupSpec, isotropy: u32) -> u32 {
    if spec.order().is_multiple_of(2) {
        2 * isotropy
    } else {
        isotropy
    }
}

fn find_point(points: &[Vector3<f64>], x: &Vector3<f64>) -> Option<usize> {
    points.iter().position(|p| (p - x).amax() < POINT_TOL)
}

fn rotation_axis(r: &Matrix3<f64>) -> Vector3<f64> {
    let svd = (r - Matrix3::identity()).svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let imin = svd.singular_values.imin();
    v_t.row(imin).transpose().normalize()
}

fn generic_weight(x: &Vector3<f64>) -> f64 {
    x.x + 0.5 * x.y + 0.25 * x.z
}

/// Computes the fixed-point orbits of the SO(3) image of `elements`.
pub(crate) fn compute_fixed_points(
    spec: &GroupSpec,
    elements: &[Quaternion],
) -> Result<Vec<FixedPointOrbit>> {
    if let GroupSpec::Cyclic(n) = spec {
        let iso = image_order(*n as usize) as u32;
        let pole = |kind, x: f64| FixedPointOrbit {
            point: OrbifoldPointKind {
                kind,
                isotropy: iso,
            },
            representative: Vector3::new(x, 0.0, 0.0),
            points: vec![Vector3::new(x, 0.0, 0.0)],
        };
        return Ok(vec![
            pole(PointKind::SouthPole, -1.0),
            pole(PointKind::NorthPole, 1.0),
        ]);
    }
    let rotations: Vec<Matrix3<f64>> = elements.iter().map(project_so3).collect();
    let mut candidates: Vec<Vector3<f64>> = Vec::new();
    for r in &rotations {
        if (r - Matrix3::identity()).amax() < 1e-6 {
            continue;
        }
        let axis = rotation_axis(r);
        for x in [axis, -axis] {
            if find_point(&candidates, &x).is_none() {
                candidates.push(x);
            }
        }
    }
    let isotropy = |x: &Vector3<f64>| {
        let fixing = rotations
            .iter()
            .filter(|r| (*r * x - x).amax() < POINT_TOL)
            .count();
        (fixing / (elements.len() / image_order(elements.len()))) as u32
    };
    let mut assigned = vec![false; candidates.len()];
    let mut raw: Vec<(u32, Vec<Vector3<f64>>)> = Vec::new();
    for i in 0..candidates.len() {
        if assigned[i] {
            continue;
        }
        let mut orbit: Vec<Vector3<f64>> = Vec::new();
        for r in &rotations {
            let y = r * candidates[i];
            if find_point(&orbit, &y).is_none() {
                orbit.push(y);
            }
        }
        for y in &orbit {
            let j = find_point(&candidates, y).ok_or_else(|| {
                Error::IndexMismatch(format!("orbit point {y:?} is not a rotation axis"))
            })?;
            assigned[j] = true;
        }
        raw.push((isotropy(&candidates[i]), orbit));
    }
    let h = image_order(elements.len());
    for (iso, orbit) in &raw {
        if *iso as usize * orbit.len() != h {
            return Err(Error::IndexMismatch(format!(
                "orbit of size {} with isotropy {iso} in a group of order {h}",
                orbit.len()
            )));
        }
    }
    let contains = |orbit: &[Vector3<f64>], x: Vector3<f64>| find_point(orbit, &x).is_some();
    let mut out = Vec::new();
    match spec.family() {
        Family::Dihedral => {
            let n = spec.n().expect("dihedral spec has n") as f64;
            let t = std::f64::consts::PI / n;
            let minus_rep = Vector3::new(0.0, t.cos(), t.sin());
            for (iso, orbit) in raw {
                let (kind, rep) = if contains(&orbit, Vector3::x()) {
                    (PointKind::Plus, Vector3::x())
                } else if contains(&orbit, Vector3::y()) {
                    (PointKind::Saddle, Vector3::y())
                } else if contains(&orbit, minus_rep) {
                    (PointKind::Minus, minus_rep)
                } else {
                    return Err(Error::IndexMismatch("unexpected dihedral orbit".into()));
                };
                out.push(FixedPointOrbit {
                    point: OrbifoldPointKind {
                        kind,
                        isotropy: iso,
                    },
                    representative: rep,
                    points: orbit,
                });
            }
        }
        Family::Polyhedral => {
            let iv = spec.vertex_isotropy().expect("polyhedral spec has I_V");
            let diag = |x: &Vector3<f64>| x.x + x.y + x.z;
            let vertex_anchor = raw
                .iter()
                .filter(|(iso, _)| *iso == iv)
                .flat_map(|(_, o)| o.iter())
                .copied()
                .max_by(|a, b| diag(a).total_cmp(&diag(b)))
                .ok_or_else(|| Error::IndexMismatch("no vertex orbit".into()))?;
            for (iso, orbit) in raw {
                let kind = if iso == iv && contains(&orbit, vertex_anchor) {
                    PointKind::Vertex
                } else if iso == 2 {
                    PointKind::Edge
                } else if iso == 3 {
                    PointKind::Face
                } else {
                    return Err(Error::IndexMismatch(format!(
                        "unexpected polyhedral isotropy {iso}"
                    )));
                };
                let rep = if kind == PointKind::Vertex {
                    vertex_anchor
                } else {
                    *orbit
                        .iter()
                        .max_by(|a, b| generic_weight(a).total_cmp(&generic_weight(b)))
                        .expect("orbit is nonempty")
                };
                out.push(FixedPointOrbit {
                    point: OrbifoldPointKind {
                        kind,
                        isotropy: iso,
                    },
                    representative: rep,
                    points: orbit,
                });
            }
        }
        Family::Cyclic => unreachable!("handled above"),
    }
    out.sort_by_key(|o| o.point.kind);
    let kinds: Vec<PointKind> = out.iter().map(|o| o.point.kind).collect();
    let expected = match spec.family() {
        Family::Dihedral => vec![PointKind::Minus, PointKind::Saddle, PointKind::Plus],
        _ => vec![PointKind::Vertex, PointKind::Edge, PointKind::Face],
    };
    if kinds != expected {
        return Err(Error::IndexMismatch(format!("orbit kinds {kinds:?}")));
    }
    Ok(out)
}

/// Index of the unique element acting on the fibre over `p` by the primitive
/// rotation `e^{2πi/cov}`, where `cov` is the covering multiplicity.
pub(crate) fn fiber_generator_in(
    spec: &GroupSpec,
    elements: &[Quaternion],
    p: &Vector3<f64>,
    isotropy: u32,
) -> Result<usize> {
    let z0 = hopf_lift(p);
    let cov = covering_multiplicity_for(spec, isotropy);
    let phase = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / cov as f64);
    let target: C2 = [phase * z0[0], phase * z0[1]];
    let hits: Vec<usize> = elements
        .iter()
        .enumerate()
        .filter(|(_, g)| {
            let w = g.act(&z0);
            (w[0] - target[0]).norm().max((w[1] - target[1]).norm()) < 1e-8
        })
        .map(|(i, _)| i)
        .collect();
    match hits.as_slice() {
        [i] => Ok(*i),
        _ => Err(Error::IndexMismatch(format!(
            "{} elements rotate the fibre over {p:?} by 2π/{cov}",
            hits.len()
        ))),
    }
}

/// Returns the fixed-point orbits of `P(G)` on S², sorted by kind.
///
/// Cyclic specs yield the two poles of the rotation axis.
pub fn fixed_points(spec: &GroupSpec) -> Result<Vec<FixedPointOrbit>> {
    Ok(super::build_group(spec)?.fixed_points)
}

/// Result of [`check_equivariance`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquivarianceReport {
    /// Number of sampled `(A, z)` pairs.
    pub samples: usize,
    /// Largest `|hopf(A·z) − P(A)·hopf(z)|∞` observed.
    pub max_deviation: f64,
}

/// Samples random pairs `(A, z)` and checks `hopf(A·z) = P(A)·hopf(z)`.
pub fn check_equivariance(
    group: &FiniteSubgroup,
    samples: usize,
    seed: u64,
) -> Result<EquivarianceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_deviation: f64 = 0.0;
    for _ in 0..samples {
        let q = loop {
            let v: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
            let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if r > 1e-3 && r <= 1.0 {
                break Quaternion::new(v[0] / r, v[1] / r, v[2] / r, v[3] / r);
            }
        };
        let z = [q.alpha(), q.beta()];
        let g = &group.elements[rng.random_range(0..group.order())];
        let lhs = hopf(&g.act(&z));
        let rhs = project_so3(g) * hopf(&z);
        max_deviation = max_deviation.max((lhs - rhs).amax());
    }
    if max_deviation >= EQUIVARIANCE_TOL {
        return Err(Error::EquivarianceViolation {
            deviation: max_deviation,
        });
    }
    Ok(EquivarianceReport {
        samples,
        max_deviation,
    })
}
