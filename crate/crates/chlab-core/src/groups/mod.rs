//! Finite subgroups of SU(2): construction, conjugacy classes, the SO(3)
//! image, fixed points on S², and Dynkin types.

mod fixed;
mod quaternion;
mod spec;

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

pub use fixed::{
    check_equivariance, covering_multiplicity_for, fixed_points, image_order, EquivarianceReport,
    FixedPointOrbit, OrbifoldPointKind, PointKind, EQUIVARIANCE_TOL, POINT_TOL,
};
pub use quaternion::{hopf, hopf_lift, project_so3, Quaternion, C2, ELEMENT_TOL};
pub use spec::{dynkin_type, DynkinType, Family, GroupSpec, MAX_N, MIN_N};

use crate::error::{Error, Result};

/// A conjugacy class with its symbolic label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConjugacyClass {
    /// Label such as `Id`, `-Id`, `A^2`, `AB`, `g^3` or `T_{6,A}`.
    pub label: String,
    /// Indices into [`FiniteSubgroup::elements`].
    pub members: Vec<usize>,
    /// Common order of the members.
    pub element_order: u32,
    /// Common matrix trace of the members.
    pub trace: f64,
}

/// A finite subgroup of SU(2) with its multiplication table, classes and
/// fixed-point data.
#[derive(Debug, Clone)]
pub struct FiniteSubgroup {
    /// Which group this is.
    pub spec: GroupSpec,
    /// Elements in breadth-first discovery order; index 0 is the identity.
    pub elements: Vec<Quaternion>,
    /// Conjugacy classes in canonical label order.
    pub classes: Vec<ConjugacyClass>,
    /// Fixed-point orbits of the SO(3) image, sorted by kind.
    pub fixed_points: Vec<FixedPointOrbit>,
    table: Vec<usize>,
    inverses: Vec<usize>,
    orders: Vec<u32>,
    class_of: Vec<usize>,
}

fn key(q: &Quaternion) -> [i64; 4] {
    let r = |x: f64| (x * 1e6).round() as i64;
    [r(q.a), r(q.b), r(q.c), r(q.d)]
}

struct Lookup<'a> {
    elements: &'a [Quaternion],
    map: HashMap<[i64; 4], usize>,
}

impl<'a> Lookup<'a> {
    fn new(elements: &'a [Quaternion]) -> Self {
        let map = elements
            .iter()
            .enumerate()
            .map(|(i, q)| (key(q), i))
            .collect();
        Self { elements, map }
    }

    fn find(&self, q: &Quaternion) -> Option<usize> {
        if let Some(&i) = self.map.get(&key(q)) {
            if self.elements[i].approx_eq(q) {
                return Some(i);
            }
        }
        self.elements.iter().position(|e| e.approx_eq(q))
    }
}

fn generators(spec: &GroupSpec) -> Vec<Quaternion> {
    use std::f64::consts::{FRAC_1_SQRT_2, PI};
    match spec {
        GroupSpec::Cyclic(n) => {
            let t = 2.0 * PI / *n as f64;
            vec![Quaternion::new(t.cos(), t.sin(), 0.0, 0.0)]
        }
        GroupSpec::BinaryDihedral(n) => {
            let t = PI / *n as f64;
            vec![
                Quaternion::new(t.cos(), t.sin(), 0.0, 0.0),
                Quaternion::new(0.0, 0.0, 1.0, 0.0),
            ]
        }
        GroupSpec::BinaryTetrahedral => vec![
            Quaternion::new(0.0, 1.0, 0.0, 0.0),
            Quaternion::new(0.5, 0.5, 0.5, 0.5),
        ],
        GroupSpec::BinaryOctahedral => vec![
            Quaternion::new(0.0, 1.0, 0.0, 0.0),
            Quaternion::new(0.5, 0.5, 0.5, 0.5),
            Quaternion::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0),
        ],
        GroupSpec::BinaryIcosahedral => {
            let phi = (1.0 + 5f64.sqrt()) / 2.0;
            vec![
                Quaternion::new(0.0, 1.0, 0.0, 0.0),
                Quaternion::new(0.5, 0.5, 0.5, 0.5),
                Quaternion::new(phi / 2.0, 0.5 / phi, 0.5, 0.0),
            ]
        }
    }
}

/// Closes the hard-coded generators of `spec` under multiplication and
/// computes classes and fixed points.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteSubgroup> {
    spec.validate()?;
    let expected = spec.order();
    let gens = generators(spec);
    let mut elements = vec![Quaternion::identity()];
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let p = elements[i] * *g;
            if !elements.iter().any(|e| e.approx_eq(&p)) {
                elements.push(p);
                if elements.len() > expected {
                    return Err(Error::NonClosure {
                        expected,
                        found: elements.len(),
                    });
                }
                queue.push_back(elements.len() - 1);
            }
        }
    }
    if elements.len() != expected {
        return Err(Error::NonClosure {
            expected,
            found: elements.len(),
        });
    }
    let n = elements.len();
    let lookup = Lookup::new(&elements);
    let mut table = vec![0usize; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] =
                lookup
                    .find(&(elements[i] * elements[j]))
                    .ok_or(Error::NonClosure {
                        expected,
                        found: n + 1,
                    })?;
        }
    }
    let inverses = (0..n)
        .map(|i| {
            (0..n)
                .find(|&j| table[i * n + j] == 0)
                .expect("finite group has inverses")
        })
        .collect();
    let orders = (0..n)
        .map(|i| {
            let mut k = 1;
            let mut x = i;
            while x != 0 {
                x = table[x * n + i];
                k += 1;
            }
            k
        })
        .collect();
    let fixed_points = fixed::compute_fixed_points(spec, &elements)?;
    let mut group = FiniteSubgroup {
        spec: *spec,
        elements,
        classes: Vec::new(),
        fixed_points,
        table,
        inverses,
        orders,
        class_of: Vec::new(),
    };
    group.classes = conjugacy_classes(&group)?;
    let mut class_of = vec![0; n];
    for (c, class) in group.classes.iter().enumerate() {
        for &m in &class.members {
            class_of[m] = c;
        }
    }
    group.class_of = class_of;
    Ok(group)
}

impl FiniteSubgroup {
    /// Group order.
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of the product `elements[i] · elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i * self.order() + j]
    }

    /// Index of the inverse of `elements[i]`.
    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    /// Index of `elements[i]^k` for any integer `k`.
    pub fn pow(&self, i: usize, k: i64) -> usize {
        let ord = self.orders[i] as i64;
        let e = k.rem_euclid(ord);
        (0..e).fold(0, |acc, _| self.mul(acc, i))
    }

    /// Order of `elements[i]`.
    pub fn element_order(&self, i: usize) -> u32 {
        self.orders[i]
    }

    /// Index of the element equal to `q`, if any.
    pub fn index_of(&self, q: &Quaternion) -> Option<usize> {
        self.elements.iter().position(|e| e.approx_eq(q))
    }

    /// Index into [`FiniteSubgroup::classes`] of the class containing `elements[i]`.
    pub fn class_index(&self, i: usize) -> usize {
        self.class_of[i]
    }

    /// Label of the class containing `elements[i]`.
    pub fn class_label(&self, i: usize) -> &str {
        &self.classes[self.class_of[i]].label
    }

    /// The class with the given label.
    pub fn class_by_label(&self, label: &str) -> Option<&ConjugacyClass> {
        self.classes.iter().find(|c| c.label == label)
    }

    /// Fixed-point orbit of the given kind.
    pub fn fixed_orbit(&self, kind: PointKind) -> Option<&FixedPointOrbit> {
        self.fixed_points.iter().find(|o| o.point.kind == kind)
    }

    /// Index of the element generating the isotropy action on the fibre over
    /// the representative of `kind`, rotating it by `2π/cov`.
    pub fn fiber_generator(&self, kind: PointKind) -> Result<usize> {
        let orbit = self.fixed_orbit(kind).ok_or_else(|| {
            Error::InvalidInput(format!("{kind:?} does not occur in {}", self.spec))
        })?;
        fixed::fiber_generator_in(
            &self.spec,
            &self.elements,
            &orbit.representative,
            orbit.point.isotropy,
        )
    }

    /// Dynkin type of the group.
    pub fn dynkin_type(&self) -> DynkinType {
        self.spec.dynkin_type()
    }
}

fn raw_classes(group: &FiniteSubgroup) -> Vec<Vec<usize>> {
    let n = group.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for g in 0..n {
        if seen[g] {
            continue;
        }
        let mut members: Vec<usize> = (0..n)
            .map(|h| group.mul(group.mul(h, g), group.inverse(h)))
            .collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            seen[m] = true;
        }
        out.push(members);
    }
    out
}

fn polyhedral_order_labels(spec: &GroupSpec) -> Vec<(u32, Option<char>)> {
    match spec {
        GroupSpec::BinaryTetrahedral => vec![
            (1, None),
            (2, None),
            (4, None),
            (6, Some('A')),
            (6, Some('B')),
            (3, Some('A')),
            (3, Some('B')),
        ],
        GroupSpec::BinaryOctahedral => vec![
            (1, None),
            (2, None),
            (8, Some('A')),
            (8, Some('B')),
            (4, Some('A')),
            (4, Some('B')),
            (6, None),
            (3, None),
        ],
        _ => vec![
            (1, None),
            (2, None),
            (10, Some('A')),
            (10, Some('B')),
            (5, Some('A')),
            (5, Some('B')),
            (4, None),
            (6, None),
            (3, None),
        ],
    }
}

fn polyhedral_label(letter: &str, order: u32, suffix: Option<char>) -> String {
    match (order, suffix) {
        (1, _) => format!("{letter}_Id"),
        (2, _) => format!("{letter}_-Id"),
        (o, None) => format!("{letter}_{o}"),
        (o, Some(s)) => format!("{letter}_{{{o},{s}}}"),
    }
}

/// Computes and labels the conjugacy classes of `group`.
///
/// Cyclic classes are labelled `Id`, `g^j` by powers of the generator
/// `e^{2πi/n}`; dihedral classes `Id`, `-Id`, `A^m`, `B`, `AB`; polyhedral
/// classes by element order, with the `A` suffix going to the class that
/// contains the lower power of the vertex fibre generator.
pub fn conjugacy_classes(group: &FiniteSubgroup) -> Result<Vec<ConjugacyClass>> {
    let raw = raw_classes(group);
    let make = |label: String, members: &Vec<usize>| ConjugacyClass {
        label,
        element_order: group.element_order(members[0]),
        trace: group.elements[members[0]].trace(),
        members: members.clone(),
    };
    let class_containing = |e: usize| {
        raw.iter()
            .position(|c| c.contains(&e))
            .expect("classes partition the group")
    };
    let mut labelled: Vec<Option<String>> = vec![None; raw.len()];
    let mut ordered: Vec<usize> = Vec::new();
    let mut assign = |c: usize, label: String, labelled: &mut Vec<Option<String>>| -> Result<()> {
        if labelled[c].is_some() {
            return Err(Error::AmbiguousLabel {
                order: group.element_order(raw[c][0]),
            });
        }
        labelled[c] = Some(label);
        ordered.push(c);
        Ok(())
    };
    match group.spec {
        GroupSpec::Cyclic(n) => {
            let g = group
                .index_of(&generators(&group.spec)[0])
                .expect("generator is an element");
            for j in 0..n as i64 {
                let label = if j == 0 {
                    "Id".to_string()
                } else {
                    format!("g^{j}")
                };
                assign(class_containing(group.pow(g, j)), label, &mut labelled)?;
            }
        }
        GroupSpec::BinaryDihedral(n) => {
            let gens = generators(&group.spec);
            let a = group.index_of(&gens[0]).expect("generator is an element");
            let b = group.index_of(&gens[1]).expect("generator is an element");
            assign(class_containing(0), "Id".into(), &mut labelled)?;
            assign(
                class_containing(group.pow(a, n as i64)),
                "-Id".into(),
                &mut labelled,
            )?;
            for m in 1..n as i64 {
                assign(
                    class_containing(group.pow(a, m)),
                    format!("A^{m}"),
                    &mut labelled,
                )?;
            }
            assign(class_containing(b), "B".into(), &mut labelled)?;
            assign(
                class_containing(group.mul(a, b)),
                "AB".into(),
                &mut labelled,
            )?;
        }
        _ => {
            let gv = group.fiber_generator(PointKind::Vertex)?;
            let letter = group.spec.letter();
            let gv_order = group.element_order(gv) as i64;
            for (order, suffix) in polyhedral_order_labels(&group.spec) {
                let candidates: Vec<usize> = (0..raw.len())
                    .filter(|&c| group.element_order(raw[c][0]) == order)
                    .collect();
                let chosen = match suffix {
                    None if candidates.len() == 1 => candidates[0],
                    None => return Err(Error::AmbiguousLabel { order }),
                    Some(s) => {
                        if candidates.len() != 2 {
                            return Err(Error::AmbiguousLabel { order });
                        }
                        let first_power =
                            |c: usize| (1..gv_order).find(|&j| raw[c].contains(&group.pow(gv, j)));
                        let (p0, p1) = (first_power(candidates[0]), first_power(candidates[1]));
                        let a_class = match (p0, p1) {
                            (Some(x), Some(y)) if x < y => candidates[0],
                            (Some(x), Some(y)) if y < x => candidates[1],
                            (Some(_), None) => candidates[0],
                            (None, Some(_)) => candidates[1],
                            _ => return Err(Error::AmbiguousLabel { order }),
                        };
                        let b_class = if a_class == candidates[0] {
                            candidates[1]
                        } else {
                            candidates[0]
                        };
                        if s == 'A' {
                            a_class
                        } else {
                            b_class
                        }
                    }
                };
                assign(
                    chosen,
                    polyhedral_label(letter, order, suffix),
                    &mut labelled,
                )?;
            }
        }
    }
    if ordered.len() != raw.len() {
        return Err(Error::AmbiguousLabel { order: 0 });
    }
    Ok(ordered
        .iter()
        .map(|&c| make(labelled[c].clone().expect("assigned above"), &raw[c]))
        .collect())
}
