//! Reeb orbits of the perturbed contact form below the action threshold `L_N`.
//!
//! Actions and rotation numbers are exact [`FormalScalar`]s in units of π.
//! An orbit over an orbifold point `p` with Morse value `f = ind(p) − 1` and
//! covering multiplicity `cov` has action `(2k/cov)(1 + f·ε)` and rotation
//! number `2k/cov + f·k/cov·ε` to first order in ε.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{
    covering_multiplicity_for, image_order, FiniteSubgroup, GroupSpec, OrbifoldPointKind, PointKind,
};
use crate::scalar::{rat, FormalScalar};

/// Linearised return-map type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitType {
    /// Eigenvalues on the unit circle.
    Elliptic,
    /// Positive real eigenvalues.
    PositiveHyperbolic,
    /// Negative real eigenvalues.
    NegativeHyperbolic,
}

impl OrbitType {
    /// Short name used in tables.
    pub fn name(&self) -> &'static str {
        match self {
            OrbitType::Elliptic => "elliptic",
            OrbitType::PositiveHyperbolic => "pos-hyp",
            OrbitType::NegativeHyperbolic => "neg-hyp",
        }
    }
}

/// One generator candidate: the `k`-fold iterate of the orbit over `base`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReebOrbit {
    /// Ambient group.
    pub group: GroupSpec,
    /// Orbifold point the orbit projects to.
    pub base: OrbifoldPointKind,
    /// Multiplicity over the embedded orbit.
    pub k: u32,
    /// Action in units of π.
    pub action: FormalScalar,
    /// Rotation number.
    pub rotation: FormalScalar,
    /// Conley-Zehnder index.
    pub cz: i64,
    /// Degree `cz − 1`.
    pub grading: i64,
    /// Type of this iterate.
    pub orbit_type: OrbitType,
    /// Type of the underlying embedded orbit.
    pub embedded_type: OrbitType,
    /// False for even iterates of a negative hyperbolic embedded orbit.
    pub good: bool,
    /// Free homotopy class label.
    pub class_label: String,
    /// True when `k` is a multiple of the covering multiplicity.
    pub contractible: bool,
}

impl ReebOrbit {
    /// Human-readable name such as `e-^3`.
    pub fn name(&self) -> String {
        format!("{}^{}", self.base.kind.symbol(), self.k)
    }
}

impl fmt::Display for ReebOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// The orbifold points of `S²/P(G)` carrying exceptional fibres (or, for the
/// cyclic groups, the two poles of the height function).
pub fn base_points(spec: &GroupSpec) -> Vec<OrbifoldPointKind> {
    let pt = |kind, isotropy| OrbifoldPointKind { kind, isotropy };
    match spec {
        GroupSpec::Cyclic(n) => {
            let iso = image_order(*n as usize) as u32;
            vec![pt(PointKind::SouthPole, iso), pt(PointKind::NorthPole, iso)]
        }
        GroupSpec::BinaryDihedral(n) => vec![
            pt(PointKind::Minus, 2),
            pt(PointKind::Saddle, 2),
            pt(PointKind::Plus, *n),
        ],
        _ => vec![
            pt(
                PointKind::Vertex,
                spec.vertex_isotropy().expect("polyhedral"),
            ),
            pt(PointKind::Edge, 2),
            pt(PointKind::Face, 3),
        ],
    }
}

/// Covering multiplicity of the exceptional fibre over `base`.
pub fn covering_multiplicity(spec: &GroupSpec, base: &OrbifoldPointKind) -> u32 {
    covering_multiplicity_for(spec, base.isotropy)
}

/// The threshold `L_N` in units of π: `2N − 1/n`, `2N − 1/(2n)` or `2N − 1/10`.
pub fn action_threshold(spec: &GroupSpec, n_level: u32) -> FormalScalar {
    let two_n = rat(2 * n_level as i64, 1);
    let gap = match spec {
        GroupSpec::Cyclic(n) => rat(1, *n as i64),
        GroupSpec::BinaryDihedral(n) => rat(1, 2 * *n as i64),
        _ => rat(1, 10),
    };
    FormalScalar::real(two_n - gap)
}

fn morse_value(kind: PointKind) -> i64 {
    kind.morse_index() as i64 - 1
}

/// Action `(2k/cov)(1 + f·ε)` of the `k`-th iterate over `base`.
pub fn action(spec: &GroupSpec, base: &OrbifoldPointKind, k: u32) -> FormalScalar {
    let cov = covering_multiplicity(spec, base) as i64;
    let a = rat(2 * k as i64, cov);
    FormalScalar::new(a, a * morse_value(base.kind))
}

/// Rotation number `2k/cov + (f·k/cov)·ε`, exact for the saddle orbits.
pub fn rotation(spec: &GroupSpec, base: &OrbifoldPointKind, k: u32) -> FormalScalar {
    let cov = covering_multiplicity(spec, base) as i64;
    FormalScalar::new(
        rat(2 * k as i64, cov),
        rat(morse_value(base.kind) * k as i64, cov),
    )
}

/// Closed-form Conley-Zehnder index of the `k`-th iterate over `base`.
pub fn cz_formula(spec: &GroupSpec, base: &OrbifoldPointKind, k: u32) -> i64 {
    let k = k as i64;
    let ceil = |p: i64, q: i64| (p + q - 1).div_euclid(q);
    let floor = |p: i64, q: i64| p.div_euclid(q);
    match (spec, base.kind) {
        (GroupSpec::Cyclic(n), PointKind::SouthPole) => 2 * ceil(2 * k, *n as i64) - 1,
        (GroupSpec::Cyclic(n), PointKind::NorthPole) => 2 * floor(2 * k, *n as i64) + 1,
        (_, PointKind::Minus) => 2 * ceil(k, 2) - 1,
        (_, PointKind::Saddle) | (_, PointKind::Edge) => k,
        (GroupSpec::BinaryDihedral(n), PointKind::Plus) => 2 * floor(k, *n as i64) + 1,
        (_, PointKind::Vertex) => 2 * ceil(k, base.isotropy as i64) - 1,
        (_, PointKind::Face) => 2 * floor(k, 3) + 1,
        (s, kind) => panic!("{kind:?} is not a base point of {s}"),
    }
}

fn types(base: &OrbifoldPointKind, k: u32) -> (OrbitType, OrbitType) {
    if base.kind.is_saddle() {
        let it = if k % 2 == 1 {
            OrbitType::NegativeHyperbolic
        } else {
            OrbitType::PositiveHyperbolic
        };
        (it, OrbitType::NegativeHyperbolic)
    } else {
        (OrbitType::Elliptic, OrbitType::Elliptic)
    }
}

/// Free homotopy class of the `k`-th iterate, read from the residue of `k`
/// modulo the covering multiplicity.
pub fn homotopy_class_label(spec: &GroupSpec, base: &OrbifoldPointKind, k: u32) -> String {
    let cov = covering_multiplicity(spec, base);
    let r = k % cov;
    let pl = |order: &str| format!("{}_{}", spec.letter(), order);
    let (id, mid) = (r == 0, 2 * r == cov);
    match (spec, base.kind) {
        (GroupSpec::Cyclic(n), kind) => {
            let n = *n;
            let j = if kind == PointKind::NorthPole {
                k % n
            } else {
                (n - k % n) % n
            };
            if j == 0 {
                "Id".into()
            } else {
                format!("g^{j}")
            }
        }
        (GroupSpec::BinaryDihedral(n), kind) => {
            let n_even = n % 2 == 0;
            match (kind, r) {
                (_, 0) => "Id".to_string(),
                (PointKind::Plus, r) if r == *n => "-Id".into(),
                (PointKind::Plus, r) => format!("A^{}", r.min(2 * n - r)),
                (_, 2) => "-Id".into(),
                (PointKind::Minus, 1) => "AB".into(),
                (PointKind::Minus, _) => (if n_even { "AB" } else { "B" }).into(),
                (_, 1) => "B".into(),
                _ => (if n_even { "B" } else { "AB" }).into(),
            }
        }
        (_, _) if id => pl("Id"),
        (_, _) if mid => pl("-Id"),
        (GroupSpec::BinaryTetrahedral, kind) => {
            let l = match (kind, r) {
                (PointKind::Edge, _) => "4",
                (PointKind::Vertex, 1) | (PointKind::Face, 5) => "{6,A}",
                (PointKind::Vertex, 5) | (PointKind::Face, 1) => "{6,B}",
                (PointKind::Vertex, 2) | (PointKind::Face, 4) => "{3,A}",
                _ => "{3,B}",
            };
            pl(l)
        }
        (GroupSpec::BinaryOctahedral, kind) => {
            let l = match (kind, r) {
                (PointKind::Vertex, 1 | 7) => "{8,A}",
                (PointKind::Vertex, 3 | 5) => "{8,B}",
                (PointKind::Vertex, _) => "{4,A}",
                (PointKind::Edge, _) => "{4,B}",
                (_, 1 | 5) => "6",
                _ => "3",
            };
            pl(l)
        }
        (_, kind) => {
            let l = match (kind, r) {
                (PointKind::Vertex, 1 | 9) => "{10,A}",
                (PointKind::Vertex, 3 | 7) => "{10,B}",
                (PointKind::Vertex, 2 | 8) => "{5,A}",
                (PointKind::Vertex, _) => "{5,B}",
                (PointKind::Edge, _) => "4",
                (_, 1 | 5) => "6",
                _ => "3",
            };
            pl(l)
        }
    }
}

/// Free homotopy class of the `k`-th iterate computed from the group: the
/// class of `g_p^k`, where `g_p` rotates the fibre over `p` by `2π/cov`.
pub fn homotopy_class_from_lift(group: &FiniteSubgroup, kind: PointKind, k: u32) -> Result<String> {
    let g = group.fiber_generator(kind)?;
    Ok(group.class_label(group.pow(g, k as i64)).to_string())
}

/// Builds the orbit record for the `k`-th iterate over `base`.
pub fn make_orbit(spec: &GroupSpec, base: OrbifoldPointKind, k: u32) -> ReebOrbit {
    let cz = cz_formula(spec, &base, k);
    let (orbit_type, embedded_type) = types(&base, k);
    let cov = covering_multiplicity(spec, &base);
    ReebOrbit {
        group: *spec,
        base,
        k,
        action: action(spec, &base, k),
        rotation: rotation(spec, &base, k),
        cz,
        grading: cz - 1,
        orbit_type,
        embedded_type,
        good: !(embedded_type == OrbitType::NegativeHyperbolic && k.is_multiple_of(2)),
        class_label: homotopy_class_label(spec, &base, k),
        contractible: k.is_multiple_of(cov),
    }
}

/// All orbits with action below `L_N`, sorted by grading, base and `k`.
pub fn enumerate_orbits(spec: &GroupSpec, n_level: u32) -> Result<Vec<ReebOrbit>> {
    spec.validate()?;
    if n_level == 0 {
        return Err(Error::InvalidInput("N must be at least 1".into()));
    }
    let threshold = action_threshold(spec, n_level);
    let mut out = Vec::new();
    for base in base_points(spec) {
        let mut k = 1;
        while action(spec, &base, k) < threshold {
            out.push(make_orbit(spec, base, k));
            k += 1;
        }
    }
    out.sort_by_key(|o| (o.grading, o.base.kind, o.k));
    Ok(out)
}

/// Conley-Zehnder index of an enumerated orbit from the closed formulas.
pub fn cz_index(orbit: &ReebOrbit) -> i64 {
    cz_formula(&orbit.group, &orbit.base, orbit.k)
}

/// Rotation number of the orbit, rejecting degenerate elliptic values.
pub fn rotation_number(orbit: &ReebOrbit) -> Result<FormalScalar> {
    let theta = rotation(&orbit.group, &orbit.base, orbit.k);
    if orbit.orbit_type == OrbitType::Elliptic && theta.is_integer() {
        return Err(Error::DegenerateRotation(format!(
            "{} has θ = {theta}",
            orbit.name()
        )));
    }
    Ok(theta)
}

/// `⌊θ⌋ + ⌈θ⌉` under the formal floor and ceiling.
pub fn cz_from_rotation(theta: &FormalScalar) -> i64 {
    theta.floor() + theta.ceil()
}

/// Iterate type and goodness of the orbit.
pub fn classify(orbit: &ReebOrbit) -> (OrbitType, bool) {
    let (t, emb) = types(&orbit.base, orbit.k);
    (
        t,
        !(emb == OrbitType::NegativeHyperbolic && orbit.k.is_multiple_of(2)),
    )
}

/// Free homotopy class label of an enumerated orbit.
pub fn homotopy_class(orbit: &ReebOrbit) -> String {
    homotopy_class_label(&orbit.group, &orbit.base, orbit.k)
}

/// Good and bad orbit counts per grading below `L_N`.
pub fn degree_census(spec: &GroupSpec, n_level: u32) -> Result<BTreeMap<i64, (usize, usize)>> {
    let mut out: BTreeMap<i64, (usize, usize)> = BTreeMap::new();
    for o in enumerate_orbits(spec, n_level)? {
        let e = out.entry(o.grading).or_default();
        if o.good {
            e.0 += 1;
        } else {
            e.1 += 1;
        }
    }
    Ok(out)
}

/// Summary of an exhaustive monotonicity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicityReport {
    /// Group checked.
    pub spec: String,
    /// Largest threshold level used.
    pub n_max: u32,
    /// Number of ordered same-class pairs examined.
    pub pairs_checked: usize,
    /// Number of violations (always zero in a returned report).
    pub violations: usize,
}

/// Checks, for every ordered same-class pair `(γ₊, γ₋)` with `γ₊` below
/// `L_N` and `γ₋` below `L_M` (`N ≤ M ≤ n_max`), that equal indices force
/// equal orbits and that a smaller index forces a smaller action.
///
/// Both actions are compared with a single shared formal ε.
pub fn verify_monotonicity(spec: &GroupSpec, n_max: u32) -> Result<MonotonicityReport> {
    if n_max == 0 {
        return Err(Error::InvalidInput("N_max must be at least 1".into()));
    }
    let levels: Vec<Vec<ReebOrbit>> = (1..=n_max)
        .map(|n| enumerate_orbits(spec, n))
        .collect::<Result<_>>()?;
    let mut pairs_checked = 0;
    for n in 0..levels.len() {
        for m in n..levels.len() {
            for plus in &levels[n] {
                for minus in levels[m]
                    .iter()
                    .filter(|o| o.class_label == plus.class_label)
                {
                    pairs_checked += 1;
                    let fail = |reason: &str| Error::MonotonicityViolation {
                        plus: plus.name(),
                        minus: minus.name(),
                        reason: reason.to_string(),
                    };
                    if plus.cz == minus.cz && (plus.base != minus.base || plus.k != minus.k) {
                        return Err(fail("equal indices on distinct orbits"));
                    }
                    if plus.cz < minus.cz && plus.action >= minus.action {
                        return Err(fail("smaller index without smaller action"));
                    }
                }
            }
        }
    }
    Ok(MonotonicityReport {
        spec: spec.to_string(),
        n_max,
        pairs_checked,
        violations: 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::build_group;
    use proptest::prelude::*;

    fn specs() -> Vec<GroupSpec> {
        GroupSpec::standard_suite()
    }

    fn names(orbits: &[ReebOrbit]) -> Vec<String> {
        orbits.iter().map(|o| o.name()).collect()
    }

    #[test]
    fn thresholds() {
        assert_eq!(
            action_threshold(&GroupSpec::Cyclic(3), 1),
            FormalScalar::real(rat(5, 3))
        );
        assert_eq!(
            action_threshold(&GroupSpec::BinaryDihedral(3), 1),
            FormalScalar::real(rat(11, 6))
        );
        assert_eq!(
            action_threshold(&GroupSpec::BinaryTetrahedral, 2),
            FormalScalar::real(rat(39, 10))
        );
    }

    #[test]
    fn small_enumerations() {
        let d3 = enumerate_orbits(&GroupSpec::BinaryDihedral(3), 1).unwrap();
        assert_eq!(d3.len(), 11);
        let mut n = names(&d3);
        n.sort();
        let mut expected: Vec<String> = (1..=3)
            .map(|k| format!("e-^{k}"))
            .chain((1..=3).map(|k| format!("h^{k}")))
            .chain((1..=5).map(|k| format!("e+^{k}")))
            .collect();
        expected.sort();
        assert_eq!(n, expected);
        assert_eq!(enumerate_orbits(&GroupSpec::Cyclic(3), 1).unwrap().len(), 4);
        assert_eq!(
            enumerate_orbits(&GroupSpec::BinaryTetrahedral, 1)
                .unwrap()
                .len(),
            13
        );
    }

    #[test]
    fn multiplicity_ranges() {
        for spec in specs() {
            for level in 1..=4u32 {
                let orbits = enumerate_orbits(&spec, level).unwrap();
                for base in base_points(&spec) {
                    let kmax = orbits
                        .iter()
                        .filter(|o| o.base == base)
                        .map(|o| o.k)
                        .max()
                        .unwrap();
                    let expected = match (spec, base.kind) {
                        (GroupSpec::Cyclic(n), _) => n * level - 1,
                        (GroupSpec::BinaryDihedral(n), PointKind::Plus) => 2 * n * level - 1,
                        (_, PointKind::Minus | PointKind::Saddle | PointKind::Edge) => {
                            4 * level - 1
                        }
                        (_, PointKind::Vertex) => 2 * level * base.isotropy - 1,
                        _ => 6 * level - 1,
                    };
                    assert_eq!(kmax, expected, "{spec} {base:?} N={level}");
                }
            }
        }
    }

    #[test]
    fn cz_examples() {
        let d = GroupSpec::BinaryDihedral(5);
        let h = OrbifoldPointKind {
            kind: PointKind::Saddle,
            isotropy: 2,
        };
        assert_eq!(cz_formula(&d, &h, 7), 7);
        let c3 = GroupSpec::Cyclic(3);
        let s = OrbifoldPointKind {
            kind: PointKind::SouthPole,
            isotropy: 3,
        };
        assert_eq!(cz_formula(&c3, &s, 2), 3);
        let t = GroupSpec::BinaryTetrahedral;
        let v = OrbifoldPointKind {
            kind: PointKind::Vertex,
            isotropy: 3,
        };
        assert_eq!(cz_formula(&t, &v, 3), 1);
    }

    #[test]
    fn rotation_examples() {
        let d = GroupSpec::BinaryDihedral(4);
        let plus = OrbifoldPointKind {
            kind: PointKind::Plus,
            isotropy: 4,
        };
        assert_eq!(
            rotation(&d, &plus, 3),
            FormalScalar::new(rat(3, 4), rat(3, 8))
        );
        let c = GroupSpec::Cyclic(5);
        let north = OrbifoldPointKind {
            kind: PointKind::NorthPole,
            isotropy: 5,
        };
        assert_eq!(
            rotation(&c, &north, 2),
            FormalScalar::new(rat(4, 5), rat(2, 5))
        );
        let h = OrbifoldPointKind {
            kind: PointKind::Saddle,
            isotropy: 2,
        };
        assert_eq!(rotation(&d, &h, 3), FormalScalar::real(rat(3, 2)));
    }

    #[test]
    fn covering_multiplicities() {
        let t = GroupSpec::BinaryTetrahedral;
        let covs: Vec<u32> = base_points(&t)
            .iter()
            .map(|b| covering_multiplicity(&t, b))
            .collect();
        assert_eq!(covs, vec![6, 4, 6]);
        let c5 = GroupSpec::Cyclic(5);
        assert_eq!(covering_multiplicity(&c5, &base_points(&c5)[1]), 5);
        let d = GroupSpec::BinaryDihedral(7);
        assert_eq!(covering_multiplicity(&d, &base_points(&d)[1]), 4);
    }

    #[test]
    fn rotation_route_matches_closed_formulas() {
        for spec in specs() {
            for o in enumerate_orbits(&spec, 4).unwrap() {
                let theta = rotation_number(&o).unwrap();
                assert_eq!(cz_from_rotation(&theta), o.cz, "{spec} {}", o.name());
            }
        }
    }

    #[test]
    fn parity_and_goodness() {
        for spec in specs() {
            for o in enumerate_orbits(&spec, 3).unwrap() {
                assert_eq!(o.grading, o.cz - 1);
                match o.orbit_type {
                    OrbitType::PositiveHyperbolic => assert_eq!(o.cz.rem_euclid(2), 0),
                    _ => assert_eq!(o.cz.rem_euclid(2), 1),
                }
                assert_eq!(o.good, o.grading % 2 == 0, "{spec} {}", o.name());
                assert_eq!(classify(&o), (o.orbit_type, o.good));
            }
        }
    }

    #[test]
    fn contractible_orbits_are_dynamically_convex_and_match_lift_formula() {
        for spec in specs() {
            for o in enumerate_orbits(&spec, 4).unwrap() {
                if o.contractible {
                    let j = (o.k / covering_multiplicity(&spec, &o.base)) as i64;
                    assert!(o.cz >= 3);
                    assert_eq!(o.cz, 4 * j + o.base.kind.morse_index() as i64 - 1);
                    assert!(o.class_label.ends_with("Id") && !o.class_label.contains('-'));
                }
            }
        }
    }

    #[test]
    fn class_tables_agree_with_group_lifts() {
        for spec in specs() {
            let group = build_group(&spec).unwrap();
            for base in base_points(&spec) {
                let cov = covering_multiplicity(&spec, &base);
                for k in 1..=2 * cov {
                    assert_eq!(
                        homotopy_class_label(&spec, &base, k),
                        homotopy_class_from_lift(&group, base.kind, k).unwrap(),
                        "{spec} {:?} k={k}",
                        base.kind
                    );
                }
            }
        }
    }

    #[test]
    fn class_examples() {
        let d = GroupSpec::BinaryDihedral(4);
        let h = OrbifoldPointKind {
            kind: PointKind::Saddle,
            isotropy: 2,
        };
        assert_eq!(homotopy_class_label(&d, &h, 5), "B");
        let t = GroupSpec::BinaryTetrahedral;
        let f = OrbifoldPointKind {
            kind: PointKind::Face,
            isotropy: 3,
        };
        assert_eq!(homotopy_class_label(&t, &f, 11), "T_{6,A}");
        let v = OrbifoldPointKind {
            kind: PointKind::Vertex,
            isotropy: 3,
        };
        assert_eq!(
            homotopy_class_label(&t, &v, 1),
            homotopy_class_label(&t, &f, 5)
        );
    }

    #[test]
    fn census_examples() {
        let o1 = degree_census(&GroupSpec::BinaryOctahedral, 1).unwrap();
        assert_eq!(o1.get(&0), Some(&(7, 0)));
        assert_eq!(o1.get(&1), Some(&(0, 1)));
        assert_eq!(o1.get(&2), Some(&(7, 0)));
        for n in 2..=8u32 {
            for level in 1..=4u32 {
                let c = degree_census(&GroupSpec::BinaryDihedral(n), level).unwrap();
                let top = 4 * level as i64 - 2;
                for (&deg, &(good, bad)) in &c {
                    if deg % 2 == 1 {
                        assert_eq!((good, bad), (0, 1));
                    } else if deg == 0 || deg == top {
                        assert_eq!((good, bad), (n as usize + 2, 0));
                    } else {
                        assert_eq!((good, bad), (n as usize + 3, 0));
                    }
                }
            }
        }
        for n in 2..=12u32 {
            let c = degree_census(&GroupSpec::Cyclic(n), 3).unwrap();
            assert_eq!(c[&0], (n as usize - 1, 0));
            assert_eq!(c[&4], (n as usize, 0));
            assert_eq!(c[&10], (n as usize - 1, 0));
        }
    }

    #[test]
    fn monotonicity_holds_exhaustively() {
        for spec in specs() {
            let r = verify_monotonicity(&spec, 3).unwrap();
            assert!(r.pairs_checked > 0);
            assert_eq!(r.violations, 0);
        }
    }

    #[test]
    fn degenerate_rotation_is_rejected() {
        let mut o = make_orbit(
            &GroupSpec::Cyclic(4),
            base_points(&GroupSpec::Cyclic(4))[0],
            1,
        );
        o.base.kind = PointKind::Saddle;
        o.orbit_type = OrbitType::Elliptic;
        o.group = GroupSpec::BinaryDihedral(4);
        o.k = 2;
        assert!(matches!(
            rotation_number(&o),
            Err(Error::DegenerateRotation(_))
        ));
    }

    proptest! {
        #[test]
        fn action_strictly_increases_in_k(idx in 0usize..21, k in 1u32..200) {
            let spec = specs()[idx];
            for base in base_points(&spec) {
                prop_assert!(action(&spec, &base, k) < action(&spec, &base, k + 1));
            }
        }

        #[test]
        fn class_labels_respect_iteration(idx in 0usize..21, k in 1u32..40, m in 1u32..6) {
            let spec = specs()[idx];
            let group = build_group(&spec).unwrap();
            for base in base_points(&spec) {
                let label = homotopy_class_label(&spec, &base, k);
                let rep = group.class_by_label(&label).unwrap().members[0];
                let powered = group.class_label(group.pow(rep, m as i64)).to_string();
                prop_assert_eq!(powered, homotopy_class_label(&spec, &base, k * m));
            }
        }
    }
}
