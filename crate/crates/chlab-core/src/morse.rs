//! Invariant Morse functions on S², gradient flow lines and the orbifold
//! Morse complex of S²/H, where H ⊂ SO(3) is the image of G.
//!
//! Dihedral and polyhedral images use a sum of Gaussian-type kernels
//! `Σ wⱼ exp(κ(⟨x, cⱼ⟩ − 1))` centred at every point of the minimum orbit
//! (`w = −1`) and of the maximum orbit (`w = +1`). The centre set is a union
//! of H-orbits, so the function is H-invariant and its saddles sit at the
//! remaining fixed points. Cyclic images use the height `x₁`.

use std::collections::BTreeMap;

use nalgebra::{Matrix2, Matrix3, Vector2, Vector3};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{
    build_group, fixed_points, FixedPointOrbit, GroupSpec, OrbifoldPointKind, PointKind,
};
use crate::homology::RationalMatrix;
use crate::orbits::cz_formula;
use crate::scalar::rat;

/// Critical points closer than this are identified.
pub const CRITICAL_TOL: f64 = 1e-6;
/// Largest admissible invariance defect `|f(h·x) − f(x)|`.
pub const INVARIANCE_TOL: f64 = 1e-10;
/// Displacement along eigen-directions when shooting trajectories.
pub const SHOOT_OFFSET: f64 = 1e-4;
/// Number of Newton seeds for the critical-point search.
pub const SEED_POINTS: usize = 2000;
/// Number of sample points in the gradient-floor scan.
pub const SCAN_POINTS: usize = 100_000;
/// Radius of the excluded neighbourhoods in the gradient-floor scan.
pub const SCAN_EXCLUSION: f64 = 1e-2;

const MAX_STEP: f64 = 0.02;
const MAX_FLOW_STEPS: usize = 20_000;
const NEWTON_ITERATIONS: usize = 60;
const TRAJECTORY_MATCH_TOL: f64 = 1e-5;

/// Kernel `w·exp(κ(⟨x, c⟩ − 1))`.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Kernel {
    center: Vector3<f64>,
    weight: f64,
    sharpness: f64,
}

#[derive(Debug, Clone, PartialEq)]
enum Shape {
    Height,
    Kernels(Vec<Kernel>),
}

/// An H-invariant Morse function on the unit sphere whose critical set is
/// the set of points with nontrivial isotropy.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantMorseFunction {
    spec: GroupSpec,
    shape: Shape,
    rotations: Vec<Matrix3<f64>>,
    orbits: Vec<FixedPointOrbit>,
}

/// Kernel sharpness for the minimum and maximum orbits.
fn sharpness(spec: &GroupSpec) -> (f64, f64) {
    match spec {
        GroupSpec::BinaryDihedral(n) => (((*n as f64).powi(2) / 2.0).max(2.0), 2.0),
        GroupSpec::BinaryTetrahedral => (6.0, 6.0),
        _ => (8.0, 8.0),
    }
}

/// Points of the sphere on a Fibonacci lattice.
pub fn fibonacci_sphere(count: usize) -> Vec<Vector3<f64>> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..count)
        .map(|i| {
            let z = 1.0 - 2.0 * (i as f64 + 0.5) / count as f64;
            let r = (1.0 - z * z).sqrt();
            let phi = golden * i as f64;
            Vector3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

/// An orthonormal basis of the tangent plane at `x`.
pub fn tangent_basis(x: &Vector3<f64>) -> (Vector3<f64>, Vector3<f64>) {
    let helper = if x.x.abs() < 0.9 {
        Vector3::x()
    } else {
        Vector3::y()
    };
    let e1 = (helper - x * x.dot(&helper)).normalize();
    let e2 = x.cross(&e1);
    (e1, e2)
}

/// Builds the invariant Morse function of a spec.
pub fn build_invariant_morse(spec: &GroupSpec) -> Result<InvariantMorseFunction> {
    let group = build_group(spec)?;
    let mut rotations: Vec<Matrix3<f64>> = Vec::new();
    for q in &group.elements {
        let r = q.project_so3();
        if !rotations.iter().any(|m| (m - r).amax() < 1e-9) {
            rotations.push(r);
        }
    }
    let orbits = fixed_points(spec)?;
    let shape = match spec {
        GroupSpec::Cyclic(_) => Shape::Height,
        _ => {
            let (k_min, k_max) = sharpness(spec);
            let mut kernels = Vec::new();
            for orbit in &orbits {
                let (weight, sharpness) = match orbit.point.kind.morse_index() {
                    0 => (-1.0, k_min),
                    2 => (1.0, k_max),
                    _ => continue,
                };
                for c in &orbit.points {
                    kernels.push(Kernel {
                        center: *c,
                        weight,
                        sharpness,
                    });
                }
            }
            Shape::Kernels(kernels)
        }
    };
    Ok(InvariantMorseFunction {
        spec: *spec,
        shape,
        rotations,
        orbits,
    })
}

impl InvariantMorseFunction {
    /// The spec the function is invariant under.
    pub fn spec(&self) -> GroupSpec {
        self.spec
    }

    /// Rotations of the SO(3) image H.
    pub fn rotations(&self) -> &[Matrix3<f64>] {
        &self.rotations
    }

    /// Orbits of points with nontrivial isotropy.
    pub fn fixed_orbits(&self) -> &[FixedPointOrbit] {
        &self.orbits
    }

    /// Value at a point of the sphere.
    pub fn value(&self, x: &Vector3<f64>) -> f64 {
        match &self.shape {
            Shape::Height => x.x,
            Shape::Kernels(ks) => ks
                .iter()
                .map(|k| k.weight * (k.sharpness * (x.dot(&k.center) - 1.0)).exp())
                .sum(),
        }
    }

    fn ambient_derivatives(&self, x: &Vector3<f64>) -> (Vector3<f64>, Matrix3<f64>) {
        match &self.shape {
            Shape::Height => (Vector3::x(), Matrix3::zeros()),
            Shape::Kernels(ks) => {
                let mut g = Vector3::zeros();
                let mut h = Matrix3::zeros();
                for k in ks {
                    let e = k.weight * (k.sharpness * (x.dot(&k.center) - 1.0)).exp();
                    g += k.center * (k.sharpness * e);
                    h += k.center * k.center.transpose() * (k.sharpness * k.sharpness * e);
                }
                (g, h)
            }
        }
    }

    /// Riemannian gradient for the round metric.
    pub fn gradient(&self, x: &Vector3<f64>) -> Vector3<f64> {
        let (g, _) = self.ambient_derivatives(x);
        g - x * g.dot(x)
    }

    /// Riemannian Hessian in the basis returned by [`tangent_basis`].
    pub fn hessian(&self, x: &Vector3<f64>) -> Matrix2<f64> {
        let (g, h) = self.ambient_derivatives(x);
        let (e1, e2) = tangent_basis(x);
        let radial = g.dot(x);
        let b = [e1, e2];
        Matrix2::from_fn(|i, j| b[i].dot(&(h * b[j])) - if i == j { radial } else { 0.0 })
    }

    /// Largest `|f(h·x) − f(x)|` over all of H and `samples` lattice points.
    pub fn invariance_defect(&self, samples: usize) -> f64 {
        let mut worst: f64 = 0.0;
        for x in fibonacci_sphere(samples) {
            let fx = self.value(&x);
            for r in &self.rotations {
                worst = worst.max((self.value(&(r * x)) - fx).abs());
            }
        }
        worst
    }
}

/// A nondegenerate critical point of an invariant Morse function.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriticalPoint {
    /// Location on the sphere.
    pub location: [f64; 3],
    /// Which family of fixed points it belongs to.
    pub kind: PointKind,
    /// Morse index from the Hessian.
    pub index: u32,
    /// Order of the stabiliser in H.
    pub isotropy: u32,
    /// Whether the stabiliser preserves the orientation of the unstable
    /// manifold.
    pub orientable: bool,
    /// Function value.
    pub value: f64,
}

impl CriticalPoint {
    /// Location as a vector.
    pub fn point(&self) -> Vector3<f64> {
        Vector3::from(self.location)
    }
}

fn newton(f: &InvariantMorseFunction, start: Vector3<f64>) -> Option<Vector3<f64>> {
    let mut x = start;
    for _ in 0..NEWTON_ITERATIONS {
        let g = f.gradient(&x);
        let (e1, e2) = tangent_basis(&x);
        let rhs = Vector2::new(g.dot(&e1), g.dot(&e2));
        if rhs.norm() < 1e-13 {
            return Some(x);
        }
        let h = f.hessian(&x);
        let step = h.lu().solve(&(-rhs))?;
        let mut v = e1 * step.x + e2 * step.y;
        if v.norm() > 0.2 {
            v *= 0.2 / v.norm();
        }
        x = (x + v).normalize();
    }
    (f.gradient(&x).norm() < 1e-10).then_some(x)
}

fn hessian_eigen(f: &InvariantMorseFunction, x: &Vector3<f64>) -> (Vec<f64>, Vec<Vector3<f64>>) {
    let h = f.hessian(x);
    let eig = nalgebra::SymmetricEigen::new(h);
    let (e1, e2) = tangent_basis(x);
    let mut pairs: Vec<(f64, Vector3<f64>)> = (0..2)
        .map(|i| {
            let v = eig.eigenvectors.column(i);
            (eig.eigenvalues[i], (e1 * v[0] + e2 * v[1]).normalize())
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

fn stabiliser<'a>(
    f: &'a InvariantMorseFunction,
    x: &'a Vector3<f64>,
) -> impl Iterator<Item = &'a Matrix3<f64>> + 'a {
    f.rotations
        .iter()
        .filter(move |r| (*r * x - x).norm() < 1e-7)
}

/// Finds the critical points by Newton's method from a lattice of seeds and
/// matches them one-to-one with the fixed points of H.
pub fn find_critical_points(f: &InvariantMorseFunction) -> Result<Vec<CriticalPoint>> {
    let mut found: Vec<Vector3<f64>> = Vec::new();
    let seeds = fibonacci_sphere(SEED_POINTS)
        .into_iter()
        .chain(f.orbits.iter().flat_map(|o| o.points.iter().copied()));
    for seed in seeds {
        if let Some(x) = newton(f, seed) {
            if !found.iter().any(|y| (y - x).norm() < CRITICAL_TOL) {
                found.push(x);
            }
        }
    }
    let mut out = Vec::with_capacity(found.len());
    for x in found {
        let orbit = f
            .orbits
            .iter()
            .find(|o| o.points.iter().any(|p| (p - x).norm() < CRITICAL_TOL))
            .ok_or(Error::SpuriousCriticalPoint {
                point: [x.x, x.y, x.z],
            })?;
        let (values, vectors) = hessian_eigen(f, &x);
        if values.iter().any(|v| v.abs() < 1e-8) {
            return Err(Error::IndexMismatch(format!(
                "degenerate critical point at {x:?}"
            )));
        }
        let index = values.iter().filter(|v| **v < 0.0).count() as u32;
        if index != orbit.point.kind.morse_index() {
            return Err(Error::IndexMismatch(format!(
                "{} point has Hessian index {index}",
                orbit.point.kind.symbol()
            )));
        }
        let isotropy = stabiliser(f, &x).count() as u32;
        let orientable =
            index != 1 || stabiliser(f, &x).all(|r| (r * vectors[0]).dot(&vectors[0]) > 0.0);
        out.push(CriticalPoint {
            location: [x.x, x.y, x.z],
            kind: orbit.point.kind,
            index,
            isotropy,
            orientable,
            value: f.value(&x),
        });
    }
    let expected: usize = f.orbits.iter().map(|o| o.orbit_size()).sum();
    if out.len() != expected {
        return Err(Error::IndexMismatch(format!(
            "{} critical points for {expected} fixed points",
            out.len()
        )));
    }
    out.sort_by(|a, b| {
        (a.index, a.kind).cmp(&(b.index, b.kind)).then(
            a.location
                .partial_cmp(&b.location)
                .unwrap_or(std::cmp::Ordering::Equal),
        )
    });
    Ok(out)
}

/// Outcome of the gradient-floor scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GradientScan {
    /// Points examined outside the excluded neighbourhoods.
    pub samples: usize,
    /// Smallest gradient norm among them.
    pub min_gradient: f64,
    /// Required floor.
    pub floor: f64,
}

/// Checks that the gradient stays above a positive floor away from
/// [`SCAN_EXCLUSION`]-neighbourhoods of the fixed points.
///
/// The floor is a quarter of what the smallest Hessian eigenvalue predicts
/// at the edge of the excluded neighbourhoods.
pub fn gradient_floor_scan(f: &InvariantMorseFunction, samples: usize) -> Result<GradientScan> {
    let fixed: Vec<Vector3<f64>> = f
        .orbits
        .iter()
        .flat_map(|o| o.points.iter().copied())
        .collect();
    let min_eig = fixed
        .iter()
        .flat_map(|x| hessian_eigen(f, x).0)
        .map(f64::abs)
        .fold(f64::INFINITY, f64::min);
    let floor = 0.25 * SCAN_EXCLUSION * min_eig;
    let mut count = 0;
    let mut min_gradient = f64::INFINITY;
    for x in fibonacci_sphere(samples) {
        if fixed.iter().any(|p| (p - x).norm() < SCAN_EXCLUSION) {
            continue;
        }
        count += 1;
        let g = f.gradient(&x).norm();
        if g < min_gradient {
            min_gradient = g;
        }
        if g < floor {
            return Err(Error::SpuriousCriticalPoint {
                point: [x.x, x.y, x.z],
            });
        }
    }
    Ok(GradientScan {
        samples: count,
        min_gradient,
        floor,
    })
}

/// One gradient trajectory between critical points, upstairs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    /// Upper critical point.
    pub start: [f64; 3],
    /// Lower critical point.
    pub end: [f64; 3],
    /// Point on the trajectory at the mean of the two critical values.
    pub midpoint: [f64; 3],
    /// Polyline from the upper to the lower point.
    pub polyline: Vec<[f64; 3]>,
}

/// Flow lines between two families of critical points, upstairs and modulo
/// H.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlowCount {
    /// Upper family.
    pub from: PointKind,
    /// Lower family.
    pub to: PointKind,
    /// Trajectories on S².
    pub upstairs: usize,
    /// H-orbits of trajectories.
    pub downstairs: usize,
    /// `|H_p| / |H_x|` for each downstairs trajectory.
    pub weights: Vec<u32>,
    /// Orbit representatives.
    pub trajectories: Vec<Trajectory>,
}

impl FlowCount {
    /// Sum of the weights: the weighted differential entry with unit signs.
    pub fn weighted_total(&self) -> i64 {
        self.weights.iter().map(|&w| w as i64).sum()
    }
}

/// Integrates `dx/ds = sign·∇f/|∇f|` from `start` until within
/// [`CRITICAL_TOL`] of a critical point; returns the polyline and the
/// critical point reached.
fn integrate(
    f: &InvariantMorseFunction,
    crit: &[CriticalPoint],
    start: Vector3<f64>,
    sign: f64,
    origin: usize,
) -> Result<(Vec<Vector3<f64>>, usize)> {
    let field = |x: &Vector3<f64>| -> Vector3<f64> {
        let g = f.gradient(x);
        let n = g.norm();
        if n == 0.0 {
            g
        } else {
            g * (sign / n)
        }
    };
    let mut x = start;
    let mut line = vec![start];
    for _ in 0..MAX_FLOW_STEPS {
        let (nearest, dist) = crit
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != origin || (x - start).norm() > 10.0 * SHOOT_OFFSET)
            .map(|(i, c)| (i, (c.point() - x).norm()))
            .fold(
                (usize::MAX, f64::INFINITY),
                |a, b| if b.1 < a.1 { b } else { a },
            );
        if dist < CRITICAL_TOL {
            line.push(crit[nearest].point());
            return Ok((line, nearest));
        }
        let h = MAX_STEP.min(0.5 * dist);
        let k1 = field(&x);
        let k2 = field(&(x + k1 * (h / 2.0)).normalize());
        let k3 = field(&(x + k2 * (h / 2.0)).normalize());
        let k4 = field(&(x + k3 * h).normalize());
        x = (x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)).normalize();
        line.push(x);
    }
    Err(Error::NonConvergentTrajectory {
        start: [start.x, start.y, start.z],
    })
}

fn point_at_level(f: &InvariantMorseFunction, line: &[Vector3<f64>], level: f64) -> Vector3<f64> {
    for w in line.windows(2) {
        let (a, b) = (f.value(&w[0]) - level, f.value(&w[1]) - level);
        if a == 0.0 {
            return w[0];
        }
        if (a > 0.0) != (b > 0.0) {
            let t = a / (a - b);
            return (w[0] * (1.0 - t) + w[1] * t).normalize();
        }
    }
    line[line.len() / 2]
}

/// Counts gradient flow lines from the family `from` down to the family
/// `to`, whose Morse indices differ by zero or one.
///
/// Index-one upper points shoot forward along their unstable directions;
/// index-two upper points are reached by shooting backward from the stable
/// directions of the lower saddles.
pub fn count_flow_lines(
    f: &InvariantMorseFunction,
    crit: &[CriticalPoint],
    from: PointKind,
    to: PointKind,
) -> Result<FlowCount> {
    let (ip, iq) = (from.morse_index(), to.morse_index());
    if ip < iq || ip - iq > 1 {
        return Err(Error::InvalidInput(format!(
            "flow lines need index difference 0 or 1, got {ip} and {iq}"
        )));
    }
    let mut lines: Vec<(usize, usize, Vec<Vector3<f64>>)> = Vec::new();
    let backward = ip == 2 && iq == 1;
    let shooters = if backward { to } else { from };
    if shooters.morse_index() == 1 {
        for (i, c) in crit.iter().enumerate().filter(|(_, c)| c.kind == shooters) {
            let x = c.point();
            let (_, vectors) = hessian_eigen(f, &x);
            let dir = if backward { vectors[1] } else { vectors[0] };
            for s in [1.0, -1.0] {
                let start = (x + dir * (s * SHOOT_OFFSET)).normalize();
                let sign = if backward { 1.0 } else { -1.0 };
                let (mut line, end) = integrate(f, crit, start, sign, i)?;
                line.insert(0, x);
                if backward {
                    line.reverse();
                    if crit[end].kind == from {
                        lines.push((end, i, line));
                    }
                } else if crit[end].kind == to {
                    lines.push((i, end, line));
                }
            }
        }
    }

    let mut trajectories: Vec<Trajectory> = Vec::new();
    let mut weights = Vec::new();
    let mut seen: Vec<Vector3<f64>> = Vec::new();
    for (p, q, line) in &lines {
        let level = 0.5 * (crit[*p].value + crit[*q].value);
        let mid = point_at_level(f, line, level);
        if seen.iter().any(|m| (m - mid).norm() < TRAJECTORY_MATCH_TOL) {
            continue;
        }
        let mut stab = 0u32;
        for r in &f.rotations {
            let image = r * mid;
            if (image - mid).norm() < TRAJECTORY_MATCH_TOL {
                stab += 1;
            }
            if !seen
                .iter()
                .any(|m| (m - image).norm() < TRAJECTORY_MATCH_TOL)
            {
                seen.push(image);
            }
        }
        let hp = crit[*p].isotropy;
        if !hp.is_multiple_of(stab) {
            return Err(Error::IndexMismatch(format!(
                "trajectory stabiliser {stab} does not divide {hp}"
            )));
        }
        weights.push(hp / stab);
        trajectories.push(Trajectory {
            start: crit[*p].location,
            end: crit[*q].location,
            midpoint: [mid.x, mid.y, mid.z],
            polyline: line.iter().map(|v| [v.x, v.y, v.z]).collect(),
        });
    }
    Ok(FlowCount {
        from,
        to,
        upstairs: lines.len(),
        downstairs: trajectories.len(),
        weights,
        trajectories,
    })
}

/// Orbifold Morse complex generated by orientable critical-point orbits.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbifoldComplex {
    /// Spec.
    pub spec: String,
    /// Generators `(degree, symbol, isotropy)`.
    pub generators: Vec<(u32, String, u32)>,
    /// Nonzero differential entries `(from, to, weight)` by generator
    /// position; signs are not computed.
    pub differential: Vec<(usize, usize, i64)>,
    /// Homology ranks in degrees 0, 1, 2.
    pub ranks: [usize; 3],
    /// Flow counts between families with index difference one.
    pub flows: Vec<FlowCount>,
}

fn family_kinds(crit: &[CriticalPoint]) -> Vec<(PointKind, u32, bool)> {
    let mut kinds: BTreeMap<PointKind, (u32, bool)> = BTreeMap::new();
    for c in crit {
        kinds.insert(c.kind, (c.isotropy, c.orientable));
    }
    kinds.into_iter().map(|(k, (i, o))| (k, i, o)).collect()
}

/// Builds the orbifold Morse complex of a spec and checks that its homology
/// is that of S².
pub fn orbifold_complex(spec: &GroupSpec) -> Result<OrbifoldComplex> {
    let f = build_invariant_morse(spec)?;
    let crit = find_critical_points(&f)?;
    let kinds = family_kinds(&crit);

    let mut flows = Vec::new();
    for &(p, _, _) in &kinds {
        for &(q, _, _) in &kinds {
            if p.morse_index() == q.morse_index() + 1 {
                flows.push(count_flow_lines(&f, &crit, p, q)?);
            }
        }
    }

    let generators: Vec<(u32, String, u32)> = kinds
        .iter()
        .filter(|(_, _, orientable)| *orientable)
        .map(|(k, iso, _)| (k.morse_index(), k.symbol().to_string(), *iso))
        .collect();
    let kind_of = |g: &(u32, String, u32)| kinds.iter().find(|k| k.0.symbol() == g.1).map(|k| k.0);
    let mut differential = Vec::new();
    for (i, gp) in generators.iter().enumerate() {
        for (j, gq) in generators.iter().enumerate() {
            if gp.0 != gq.0 + 1 {
                continue;
            }
            let (p, q) = (kind_of(gp), kind_of(gq));
            if let Some(fc) = flows
                .iter()
                .find(|fc| Some(fc.from) == p && Some(fc.to) == q)
            {
                let w = fc.weighted_total();
                if w != 0 {
                    differential.push((i, j, w));
                }
            }
        }
    }

    let dims: Vec<usize> = (0..3)
        .map(|d| generators.iter().filter(|g| g.0 == d).count())
        .collect();
    let position: Vec<usize> = generators
        .iter()
        .enumerate()
        .map(|(i, g)| generators[..i].iter().filter(|h| h.0 == g.0).count())
        .collect();
    let boundary = |d: usize| -> RationalMatrix {
        let mut m = RationalMatrix::zeros(dims[d - 1], dims[d]);
        for &(i, j, w) in &differential {
            if generators[i].0 as usize == d {
                m.set(position[j], position[i], rat(w, 1));
            }
        }
        m
    };
    let (d1, d2) = (boundary(1), boundary(2));
    if !d1.mul(&d2).is_zero() {
        return Err(Error::HomologyMismatch(
            "differential does not square to zero".into(),
        ));
    }
    let (r1, r2) = (d1.rank(), d2.rank());
    let ranks = [dims[0] - r1, dims[1] - r1 - r2, dims[2] - r2];
    if ranks != [1, 0, 1] {
        return Err(Error::HomologyMismatch(format!("{spec}: ranks {ranks:?}")));
    }
    Ok(OrbifoldComplex {
        spec: spec.to_string(),
        generators,
        differential,
        ranks,
        flows,
    })
}

/// Weighted differential obtained by wrongly admitting the non-orientable
/// saddle orbit as a generator with unit signs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypotheticalDifferential {
    /// Weight of the maximum-to-saddle entry.
    pub upper_weight: i64,
    /// Weight of the saddle-to-minimum entry.
    pub lower_weight: i64,
    /// Magnitude of the resulting maximum-to-minimum composite.
    pub magnitude: i64,
}

/// The hypothetical composite through the saddle orbit; errors for specs
/// without saddles.
pub fn hypothetical_differential(spec: &GroupSpec) -> Result<HypotheticalDifferential> {
    let f = build_invariant_morse(spec)?;
    let crit = find_critical_points(&f)?;
    let kinds = family_kinds(&crit);
    let pick = |i: u32| {
        kinds
            .iter()
            .find(|k| k.0.morse_index() == i)
            .map(|k| k.0)
            .ok_or_else(|| Error::InvalidInput(format!("{spec} has no index-{i} points")))
    };
    let (max, saddle, min) = (pick(2)?, pick(1)?, pick(0)?);
    let upper = count_flow_lines(&f, &crit, max, saddle)?.weighted_total();
    let lower = count_flow_lines(&f, &crit, saddle, min)?.weighted_total();
    Ok(HypotheticalDifferential {
        upper_weight: upper,
        lower_weight: lower,
        magnitude: upper * lower,
    })
}

/// Outcome of comparing Morse-index and Conley-Zehnder differences over all
/// ordered pairs of orbifold points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeifertReport {
    /// Spec.
    pub spec: String,
    /// Ordered pairs checked.
    pub pairs_checked: usize,
    /// `(p, q, Morse difference, CZ difference)` per pair.
    pub pairs: Vec<(String, String, i64, i64)>,
}

/// Checks `ind(p) − ind(q) = μ(γ_p^{m_p}) − μ(γ_q^{m_q})` for every ordered
/// pair of orbifold points, with `m` the covering multiplicity.
pub fn seifert_index_check(spec: &GroupSpec) -> Result<SeifertReport> {
    let points: Vec<OrbifoldPointKind> = crate::orbits::base_points(spec);
    let mut pairs = Vec::new();
    for p in &points {
        for q in &points {
            let morse = p.kind.morse_index() as i64 - q.kind.morse_index() as i64;
            let mp = crate::orbits::covering_multiplicity(spec, p);
            let mq = crate::orbits::covering_multiplicity(spec, q);
            let cz = cz_formula(spec, p, mp) - cz_formula(spec, q, mq);
            if morse != cz {
                return Err(Error::IndexCorrespondenceFailure {
                    p: p.kind.symbol().to_string(),
                    q: q.kind.symbol().to_string(),
                });
            }
            pairs.push((
                p.kind.symbol().to_string(),
                q.kind.symbol().to_string(),
                morse,
                cz,
            ));
        }
    }
    Ok(SeifertReport {
        spec: spec.to_string(),
        pairs_checked: pairs.len(),
        pairs,
    })
}
