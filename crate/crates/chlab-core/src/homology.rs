//! The filtered chain complex over ℚ generated by good Reeb orbits, its
//! homology, the direct system of inclusions, and the McKay check.

use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{build_group, DynkinType, GroupSpec, PointKind};
use crate::orbits::{enumerate_orbits, ReebOrbit};
use crate::scalar::Rational;

/// Finitely supported ranks per degree. Zero ranks are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedVectorSpace {
    /// Degree to rank.
    pub ranks: BTreeMap<i64, usize>,
}

impl GradedVectorSpace {
    /// Builds from `(degree, rank)` pairs, dropping zeros.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, usize)>) -> Self {
        let mut ranks = BTreeMap::new();
        for (d, r) in pairs {
            if r > 0 {
                *ranks.entry(d).or_insert(0) += r;
            }
        }
        Self { ranks }
    }

    /// Rank in degree `d`.
    pub fn rank(&self, d: i64) -> usize {
        self.ranks.get(&d).copied().unwrap_or(0)
    }

    /// Total dimension.
    pub fn total(&self) -> usize {
        self.ranks.values().sum()
    }
}

/// Sparse matrix over ℚ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    /// Number of rows.
    pub rows: usize,
    /// Number of columns.
    pub cols: usize,
    /// Nonzero entries keyed by `(row, col)`.
    pub entries: BTreeMap<(usize, usize), Rational>,
}

impl RationalMatrix {
    /// The zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Sets an entry, removing it when zero.
    pub fn set(&mut self, row: usize, col: usize, value: Rational) {
        assert!(row < self.rows && col < self.cols, "index out of bounds");
        if value.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), value);
        }
    }

    /// Entry at `(row, col)`.
    pub fn get(&self, row: usize, col: usize) -> Rational {
        self.entries
            .get(&(row, col))
            .copied()
            .unwrap_or_else(Rational::zero)
    }

    /// True when every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Matrix product `self · rhs`.
    pub fn mul(&self, rhs: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = RationalMatrix::zeros(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            for (&(_, j), b) in rhs.entries.range((k, 0)..(k + 1, 0)) {
                let v = out.get(i, j) + *a * *b;
                out.set(i, j, v);
            }
        }
        out
    }

    /// Rank by Gaussian elimination over ℚ.
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<Rational>> = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let pivot = m[rank][col];
            let pivot_row = m[rank].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != rank && !row[col].is_zero() {
                    let factor = row[col] / pivot;
                    for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                        *x -= factor * *p;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// One holomorphic cylinder's contribution `ε(u)·m(γ₊)/m(u)` to a
/// differential coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WeightedCount {
    /// Orientation sign `ε(u) ∈ {±1}`.
    pub sign: i8,
    /// Multiplicity of the positive end.
    pub m_plus: u32,
    /// Covering multiplicity of the cylinder.
    pub m_curve: u32,
}

impl WeightedCount {
    /// The rational contribution.
    pub fn value(&self) -> Rational {
        Rational::new(self.sign as i64 * self.m_plus as i64, self.m_curve as i64)
    }
}

/// Sums weighted counts into one differential coefficient.
pub fn differential_coefficient(counts: &[WeightedCount]) -> Rational {
    counts.iter().map(WeightedCount::value).sum()
}

/// Identifies a generator independently of the threshold level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorId {
    /// Base point kind.
    pub base: PointKind,
    /// Multiplicity.
    pub k: u32,
}

impl GeneratorId {
    /// The id of an orbit.
    pub fn of(orbit: &ReebOrbit) -> Self {
        Self {
            base: orbit.base.kind,
            k: orbit.k,
        }
    }
}

/// The chain complex generated by good orbits below `L_N`.
#[derive(Debug, Clone)]
pub struct FilteredComplex {
    /// Group.
    pub spec: GroupSpec,
    /// Threshold level.
    pub n_level: u32,
    /// Good generators grouped by grading.
    pub generators: BTreeMap<i64, Vec<ReebOrbit>>,
    /// `differentials[d]` maps degree `d` to degree `d − 1`.
    pub differentials: BTreeMap<i64, RationalMatrix>,
}

impl FilteredComplex {
    /// Dimension of the chain group in degree `d`.
    pub fn dim(&self, d: i64) -> usize {
        self.generators.get(&d).map_or(0, Vec::len)
    }

    /// All generators in grading order.
    pub fn all_generators(&self) -> impl Iterator<Item = &ReebOrbit> {
        self.generators.values().flatten()
    }

    /// Checks `∂∘∂ = 0`.
    pub fn is_chain_complex(&self) -> bool {
        self.differentials.iter().all(|(d, m)| {
            self.differentials
                .get(&(d - 1))
                .is_none_or(|m2| m2.mul(m).is_zero())
        })
    }
}

/// Builds the complex of good orbits below `L_N` with its (zero) differential.
///
/// The differential vanishes because no two good generators sit in adjacent
/// degrees; this is asserted.
pub fn build_complex(spec: &GroupSpec, n_level: u32) -> Result<FilteredComplex> {
    let mut generators: BTreeMap<i64, Vec<ReebOrbit>> = BTreeMap::new();
    for o in enumerate_orbits(spec, n_level)?
        .into_iter()
        .filter(|o| o.good)
    {
        generators.entry(o.grading).or_default().push(o);
    }
    for d in generators.keys() {
        if generators.contains_key(&(d + 1)) {
            return Err(Error::ParityViolation {
                lower: *d,
                upper: d + 1,
            });
        }
    }
    let differentials = generators
        .iter()
        .map(|(d, g)| {
            let rows = generators.get(&(d - 1)).map_or(0, Vec::len);
            (*d, RationalMatrix::zeros(rows, g.len()))
        })
        .collect();
    Ok(FilteredComplex {
        spec: *spec,
        n_level,
        generators,
        differentials,
    })
}

/// Homology ranks `dim C_d − rank ∂_d − rank ∂_{d+1}`.
pub fn homology_ranks(complex: &FilteredComplex) -> GradedVectorSpace {
    let rank_of = |d: i64| {
        complex
            .differentials
            .get(&d)
            .map_or(0, RationalMatrix::rank)
    };
    GradedVectorSpace::from_pairs(
        complex
            .generators
            .keys()
            .map(|&d| (d, complex.dim(d) - rank_of(d) - rank_of(d + 1))),
    )
}

/// The predicted ranks: `m − 1` in degrees 0 and `4N − 2`, `m` in the even
/// degrees between, where `m` is the number of conjugacy classes of the
/// constructed group.
pub fn closed_form(spec: &GroupSpec, n_level: u32) -> Result<GradedVectorSpace> {
    let m = build_group(spec)?.classes.len();
    Ok(closed_form_with(m, n_level))
}

/// [`closed_form`] with a given class count `m`.
pub fn closed_form_with(m: usize, n_level: u32) -> GradedVectorSpace {
    let top = 4 * n_level as i64 - 2;
    GradedVectorSpace::from_pairs((0..=top).step_by(2).map(|d| {
        let r = if d == 0 || d == top { m - 1 } else { m };
        (d, r)
    }))
}

/// Generator pairing between the complexes at levels `source ≤ target`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InclusionMap {
    /// Lower level `N`.
    pub source: u32,
    /// Upper level `M`.
    pub target: u32,
    /// Each source generator paired with its image.
    pub pairing: BTreeMap<GeneratorId, GeneratorId>,
}

impl InclusionMap {
    /// Composite `self ∘ first`, where `first` ends where `self` starts.
    pub fn compose(&self, first: &InclusionMap) -> Result<InclusionMap> {
        if first.target != self.source {
            return Err(Error::InvalidInput("inclusions are not composable".into()));
        }
        let pairing = first
            .pairing
            .iter()
            .map(|(a, b)| {
                self.pairing
                    .get(b)
                    .map(|c| (*a, *c))
                    .ok_or_else(|| Error::PairingFailure(format!("{b:?}")))
            })
            .collect::<Result<_>>()?;
        Ok(InclusionMap {
            source: first.source,
            target: self.target,
            pairing,
        })
    }

    /// True when distinct generators have distinct images.
    pub fn is_injective(&self) -> bool {
        let mut images: Vec<&GeneratorId> = self.pairing.values().collect();
        images.sort();
        images.windows(2).all(|w| w[0] != w[1])
    }
}

/// Pairs every good generator below `L_N` with the unique good generator
/// below `L_M` over the same base with the same multiplicity.
pub fn inclusion_map(spec: &GroupSpec, n: u32, m: u32) -> Result<InclusionMap> {
    if n > m {
        return Err(Error::InvalidInput(format!(
            "inclusion needs N ≤ M, got {n} > {m}"
        )));
    }
    let low = build_complex(spec, n)?;
    let high = build_complex(spec, m)?;
    let mut pairing = BTreeMap::new();
    for g in low.all_generators() {
        let matches: Vec<&ReebOrbit> = high
            .all_generators()
            .filter(|h| h.base == g.base && h.k == g.k)
            .collect();
        match matches.as_slice() {
            [h] if h.grading == g.grading => {
                pairing.insert(GeneratorId::of(g), GeneratorId::of(h));
            }
            _ => return Err(Error::PairingFailure(g.name())),
        }
    }
    Ok(InclusionMap {
        source: n,
        target: m,
        pairing,
    })
}

/// Stabilised ranks of the direct system.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectLimit {
    /// Group.
    pub spec: String,
    /// Largest level used.
    pub n_max: u32,
    /// Ranks in the stable range `0..=4·N_max − 4`.
    pub ranks: GradedVectorSpace,
    /// For each stable degree, the first level from which its rank is constant.
    pub first_stable: BTreeMap<i64, u32>,
}

/// Computes the ranks of the direct system up to `n_max` and where each
/// degree stabilises.
pub fn direct_limit(spec: &GroupSpec, n_max: u32) -> Result<DirectLimit> {
    if n_max < 2 {
        return Err(Error::InvalidInput("direct limit needs N_max ≥ 2".into()));
    }
    let per_level: Vec<GradedVectorSpace> = (1..=n_max)
        .map(|n| build_complex(spec, n).map(|c| homology_ranks(&c)))
        .collect::<Result<_>>()?;
    for n in 1..n_max {
        if !inclusion_map(spec, n, n + 1)?.is_injective() {
            return Err(Error::PairingFailure(format!("inclusion {n} → {}", n + 1)));
        }
    }
    let stable_top = 4 * n_max as i64 - 4;
    let last = per_level.last().expect("n_max ≥ 2");
    let mut first_stable = BTreeMap::new();
    for d in 0..=stable_top {
        let r = last.rank(d);
        let mut first = n_max;
        while first > 1 && per_level[first as usize - 2].rank(d) == r {
            first -= 1;
        }
        first_stable.insert(d, first);
    }
    Ok(DirectLimit {
        spec: spec.to_string(),
        n_max,
        ranks: GradedVectorSpace::from_pairs((0..=stable_top).map(|d| (d, last.rank(d)))),
        first_stable,
    })
}

/// The McKay triple for one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct McKayReport {
    /// Group.
    pub spec: String,
    /// Dynkin diagram.
    pub dynkin: String,
    /// Vertices of the Dynkin diagram.
    pub dynkin_vertices: usize,
    /// Conjugacy classes of the constructed group, minus one.
    pub classes_minus_one: usize,
    /// Stabilised degree-0 rank of the direct limit.
    pub degree_zero_rank: usize,
    /// True when all three agree.
    pub consistent: bool,
}

/// Compares the Dynkin vertex count, the class count minus one, and the
/// stabilised degree-0 homology rank.
pub fn mckay_check(spec: &GroupSpec) -> Result<McKayReport> {
    let group = build_group(spec)?;
    let dynkin: DynkinType = group.dynkin_type();
    let limit = direct_limit(spec, 2)?;
    let (a, b, c) = (
        dynkin.vertex_count(),
        group.classes.len() - 1,
        limit.ranks.rank(0),
    );
    Ok(McKayReport {
        spec: spec.to_string(),
        dynkin: dynkin.to_string(),
        dynkin_vertices: a,
        classes_minus_one: b,
        degree_zero_rank: c,
        consistent: a == b && b == c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    #[test]
    fn small_complexes() {
        let d3 = build_complex(&GroupSpec::BinaryDihedral(3), 1).unwrap();
        assert_eq!(d3.all_generators().count(), 10);
        assert_eq!(
            homology_ranks(&d3),
            GradedVectorSpace::from_pairs([(0, 5), (2, 5)])
        );
        assert!(d3.differentials.values().all(RationalMatrix::is_zero));
        assert!(d3.is_chain_complex());
        let c2 = build_complex(&GroupSpec::Cyclic(2), 1).unwrap();
        assert_eq!(
            homology_ranks(&c2),
            GradedVectorSpace::from_pairs([(0, 1), (2, 1)])
        );
        let i1 = build_complex(&GroupSpec::BinaryIcosahedral, 1).unwrap();
        assert_eq!(
            homology_ranks(&i1),
            GradedVectorSpace::from_pairs([(0, 8), (2, 8)])
        );
        let t2 = build_complex(&GroupSpec::BinaryTetrahedral, 2).unwrap();
        assert_eq!(
            homology_ranks(&t2),
            GradedVectorSpace::from_pairs([(0, 6), (2, 7), (4, 7), (6, 6)])
        );
        let c4 = build_complex(&GroupSpec::Cyclic(4), 1).unwrap();
        assert_eq!(
            homology_ranks(&c4),
            GradedVectorSpace::from_pairs([(0, 3), (2, 3)])
        );
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(
            closed_form(&GroupSpec::BinaryOctahedral, 3).unwrap(),
            GradedVectorSpace::from_pairs([(0, 7), (2, 8), (4, 8), (6, 8), (8, 8), (10, 7)])
        );
        assert_eq!(closed_form(&GroupSpec::Cyclic(5), 2).unwrap().rank(-2), 0);
    }

    #[test]
    fn homology_matches_closed_form() {
        for spec in GroupSpec::standard_suite() {
            for n in 1..=6 {
                let c = build_complex(&spec, n).unwrap();
                assert_eq!(
                    homology_ranks(&c),
                    closed_form(&spec, n).unwrap(),
                    "{spec} N={n}"
                );
            }
        }
    }

    #[test]
    fn rank_of_nonzero_matrix() {
        let mut m = RationalMatrix::zeros(3, 3);
        m.set(0, 0, rat(1, 2));
        m.set(1, 1, rat(2, 3));
        m.set(2, 0, rat(1, 1));
        m.set(2, 1, rat(1, 1));
        assert_eq!(m.rank(), 2);
        m.set(2, 2, rat(-5, 7));
        assert_eq!(m.rank(), 3);
        assert_eq!(RationalMatrix::zeros(2, 4).rank(), 0);
    }

    #[test]
    fn weighted_counts() {
        let counts = [
            WeightedCount {
                sign: 1,
                m_plus: 6,
                m_curve: 3,
            },
            WeightedCount {
                sign: -1,
                m_plus: 6,
                m_curve: 2,
            },
        ];
        assert_eq!(differential_coefficient(&counts), rat(-1, 1));
    }

    #[test]
    fn inclusions_form_a_directed_system() {
        let spec = GroupSpec::BinaryDihedral(3);
        let id = inclusion_map(&spec, 2, 2).unwrap();
        assert!(id.pairing.iter().all(|(a, b)| a == b));
        let i12 = inclusion_map(&spec, 1, 2).unwrap();
        assert_eq!(i12.pairing.len(), 10);
        assert_eq!(
            build_complex(&spec, 2).unwrap().all_generators().count(),
            22
        );
        assert!(i12.is_injective());
        for spec in GroupSpec::standard_suite() {
            let a = inclusion_map(&spec, 1, 2).unwrap();
            let b = inclusion_map(&spec, 2, 4).unwrap();
            assert_eq!(b.compose(&a).unwrap(), inclusion_map(&spec, 1, 4).unwrap());
        }
    }

    #[test]
    fn direct_limits_and_mckay() {
        for spec in GroupSpec::standard_suite() {
            let m = spec.class_count();
            let lim = direct_limit(&spec, 4).unwrap();
            assert_eq!(lim.ranks.rank(0), m - 1);
            for d in (2..=12).step_by(2) {
                assert_eq!(lim.ranks.rank(d), m);
            }
            for d in (1..=11).step_by(2) {
                assert_eq!(lim.ranks.rank(d), 0);
            }
            assert_eq!(lim.first_stable[&0], 1);
            assert_eq!(lim.first_stable[&2], 2);
            let r = mckay_check(&spec).unwrap();
            assert!(r.consistent, "{spec}");
        }
        let r = mckay_check(&GroupSpec::BinaryIcosahedral).unwrap();
        assert_eq!(
            (r.dynkin_vertices, r.classes_minus_one, r.degree_zero_rank),
            (8, 8, 8)
        );
    }

    #[test]
    fn bad_orbits_live_in_odd_degrees() {
        for spec in GroupSpec::standard_suite() {
            for o in enumerate_orbits(&spec, 3).unwrap() {
                if !o.good {
                    assert_eq!(o.grading.rem_euclid(2), 1);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn closed_form_total_dimension(m in 2usize..20, n in 1u32..8) {
            let g = closed_form_with(m, n);
            prop_assert_eq!(g.total(), (2 * n as usize) * m - 2);
            prop_assert!(g.ranks.keys().all(|d| d % 2 == 0 && *d >= 0));
        }
    }
}
