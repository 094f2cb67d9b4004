//! Acceptance criteria for the whole pipeline.
//!
//! Runs without the libtest harness so that every criterion prints exactly
//! one `PASS`/`FAIL` line; the process fails if any criterion fails.
//! Expected values come from oracles written here, independent of the
//! library code paths they check.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chlab_core::czengine::{building_index, cz_axiom_suite};
use chlab_core::groups::{build_group, dynkin_type, PointKind};
use chlab_core::homology::mckay_check;
use chlab_core::morse::{
    build_invariant_morse, count_flow_lines, find_critical_points, hypothetical_differential,
    orbifold_complex, seifert_index_check,
};
use chlab_core::orbits::{base_points, cz_formula, enumerate_orbits, verify_monotonicity};
use chlab_core::verify::{
    verify_cz_engine, verify_sign_lemma, verify_spectral_flow, VerifyOptions,
};
use chlab_core::{build_complex, homology_ranks, GroupSpec};

/// Time limit for criterion 1.
const HOMOLOGY_LIMIT: Duration = Duration::from_secs(5);
/// Time limit for criterion 4.
const MONOTONICITY_LIMIT: Duration = Duration::from_secs(10);
/// Time limit for criterion 5.
const CZ_ENGINE_LIMIT: Duration = Duration::from_secs(60);
/// Time limit for criterion 9.
const MORSE_LIMIT: Duration = Duration::from_secs(30);
/// Relative tolerance of criterion 8.
const SIGN_LEMMA_TOL: f64 = 1e-4;
/// Largest threshold level of criteria 1, 2 and 4.
const N_MAX: u32 = 4;
/// Minimum random families for criterion 6.
const MIN_FLOW_FAMILIES: usize = 20;
/// Minimum random paths per property for criterion 7.
const MIN_AXIOM_PATHS: usize = 50;
/// Minimum families with crossings for criterion 8.
const MIN_SIGN_FAMILIES: usize = 10;
/// Seed shared by the randomized criteria.
const SEED: u64 = 20;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    ensure(elapsed < limit, || {
        format!("took {elapsed:?}, limit {limit:?}")
    })?;
    Ok(elapsed)
}

/// Conjugacy class count `m` per family, as tabulated for the binary groups.
fn class_count(spec: &GroupSpec) -> usize {
    match *spec {
        GroupSpec::Cyclic(n) => n as usize,
        GroupSpec::BinaryDihedral(n) => n as usize + 3,
        GroupSpec::BinaryTetrahedral => 7,
        GroupSpec::BinaryOctahedral => 8,
        GroupSpec::BinaryIcosahedral => 9,
    }
}

/// Vertex isotropy of the polyhedral groups.
fn i_v(spec: &GroupSpec) -> u32 {
    match spec {
        GroupSpec::BinaryTetrahedral => 3,
        GroupSpec::BinaryOctahedral => 4,
        GroupSpec::BinaryIcosahedral => 5,
        _ => unreachable!("polyhedral only"),
    }
}

fn suite() -> Vec<GroupSpec> {
    GroupSpec::standard_suite()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut cases = 0;
    for spec in suite() {
        let m = class_count(&spec);
        for n in 1..=N_MAX {
            let ranks = homology_ranks(&build_complex(&spec, n).map_err(|e| e.to_string())?);
            let top = 4 * n as i64 - 2;
            let mut expected = BTreeMap::new();
            for d in (0..=top).step_by(2) {
                expected.insert(d, if d == 0 || d == top { m - 1 } else { m });
            }
            ensure(ranks.ranks == expected, || {
                format!("{spec} N={n}: {:?} != {expected:?}", ranks.ranks)
            })?;
            cases += 1;
        }
    }
    let t = within(start, HOMOLOGY_LIMIT)?;
    Ok(format!("{cases} (spec, N) cases, {t:.2?}"))
}

type Row = BTreeSet<(&'static str, u32)>;

/// Expected orbit rows per grading transcribed from the dihedral and
/// polyhedral orbit tables, with the bad orbits in odd gradings.
fn table_rows(
    spec: &GroupSpec,
    n_level: u32,
) -> (BTreeMap<i64, Row>, BTreeSet<(&'static str, u32)>) {
    let top = 2 * n_level - 1;
    let mut rows: BTreeMap<i64, Row> = BTreeMap::new();
    let mut bad = BTreeSet::new();
    let (lo, saddle, hi, hi_per, lo_per) = match *spec {
        GroupSpec::BinaryDihedral(n) => ("e-", "h", "e+", n, 2),
        _ => ("V", "E", "F", 3, i_v(spec)),
    };
    for i in 0..=top {
        let row = rows.entry(2 * i as i64).or_default();
        let lo_range = if i == top {
            i * lo_per + 1..(i + 1) * lo_per
        } else {
            i * lo_per + 1..(i + 1) * lo_per + 1
        };
        for k in lo_range {
            row.insert((lo, k));
        }
        row.insert((saddle, 2 * i + 1));
        for k in (i * hi_per).max(1)..(i + 1) * hi_per {
            row.insert((hi, k));
        }
        if i < top {
            rows.entry(2 * i as i64 + 1)
                .or_default()
                .insert((saddle, 2 * i + 2));
            bad.insert((saddle, 2 * i + 2));
        }
    }
    (rows, bad)
}

fn criterion_2() -> Outcome {
    let mut cases = 0;
    for spec in suite() {
        if matches!(spec, GroupSpec::Cyclic(_)) {
            continue;
        }
        for n in 1..=N_MAX {
            let (expected, expected_bad) = table_rows(&spec, n);
            let mut got: BTreeMap<i64, Row> = BTreeMap::new();
            let mut bad = BTreeSet::new();
            for o in enumerate_orbits(&spec, n).map_err(|e| e.to_string())? {
                got.entry(o.grading)
                    .or_default()
                    .insert((o.base.kind.symbol(), o.k));
                if !o.good {
                    ensure(o.grading % 2 == 1, || {
                        format!("{spec}: bad {} in even degree", o.name())
                    })?;
                    bad.insert((o.base.kind.symbol(), o.k));
                }
            }
            ensure(got == expected, || {
                format!("{spec} N={n}: rows {got:?} != {expected:?}")
            })?;
            ensure(bad == expected_bad, || format!("{spec} N={n}: bad {bad:?}"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (spec, N) tables"))
}

/// Number of conjugacy classes by brute-force conjugation of the elements.
fn brute_force_classes(spec: &GroupSpec) -> Result<usize, String> {
    let g = build_group(spec).map_err(|e| e.to_string())?;
    let els = &g.elements;
    let mut seen = vec![false; els.len()];
    let mut classes = 0;
    for i in 0..els.len() {
        if seen[i] {
            continue;
        }
        classes += 1;
        for h in els {
            let c = *h * els[i] * h.inverse();
            let j = els
                .iter()
                .position(|e| e.approx_eq(&c))
                .ok_or("conjugate outside group")?;
            seen[j] = true;
        }
    }
    Ok(classes)
}

fn criterion_3() -> Outcome {
    for spec in suite() {
        let m = class_count(&spec);
        let brute = brute_force_classes(&spec)?;
        let built = build_group(&spec).map_err(|e| e.to_string())?.classes.len();
        ensure(brute == m && built == m, || {
            format!("{spec}: classes {built}, brute force {brute}, expected {m}")
        })?;
        let r = mckay_check(&spec).map_err(|e| e.to_string())?;
        let vertices = dynkin_type(&spec).vertex_count();
        ensure(
            vertices == m - 1 && r.dynkin_vertices == m - 1 && r.consistent,
            || format!("{spec}: Dynkin vertices {vertices}, m − 1 = {}", m - 1),
        )?;
    }
    Ok(format!("{} specs", suite().len()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for spec in suite() {
        let r = verify_monotonicity(&spec, N_MAX).map_err(|e| e.to_string())?;
        ensure(r.violations == 0 && r.pairs_checked > 0, || {
            format!("{spec}: {r:?}")
        })?;
        pairs += r.pairs_checked;
    }
    let t = within(start, MONOTONICITY_LIMIT)?;
    Ok(format!("{pairs} same-class pairs, 0 violations, {t:.2?}"))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let expected: usize = suite()
        .iter()
        .map(|s| enumerate_orbits(s, 3).map(|o| o.len()))
        .sum::<Result<usize, _>>()
        .map_err(|e| e.to_string())?;
    let r = verify_cz_engine(&VerifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.instances == expected, || {
        format!(
            "{} of {expected} orbits, failures {:?}",
            r.instances, r.failures
        )
    })?;
    let t = within(start, CZ_ENGINE_LIMIT)?;
    Ok(format!(
        "{} orbits below L_3, eps = 1e-3, {t:.2?}",
        r.instances
    ))
}

fn criterion_6() -> Outcome {
    let opts = VerifyOptions {
        seed: SEED,
        families: MIN_FLOW_FAMILIES,
        fourier_modes: 32,
        ..VerifyOptions::default()
    };
    let r = verify_spectral_flow(&opts).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.instances == MIN_FLOW_FAMILIES + 1, || {
        format!("{r:?}")
    })?;
    Ok(format!("{} families, K = 32 and 64 agree", r.instances))
}

fn criterion_7() -> Outcome {
    let reports = cz_axiom_suite(MIN_AXIOM_PATHS, SEED).map_err(|e| e.to_string())?;
    let names: Vec<&str> = reports.iter().map(|r| r.check.as_str()).collect();
    ensure(
        names
            == [
                "homotopy",
                "naturality",
                "product",
                "inverse",
                "determinant",
                "zero",
                "signature",
                "loop",
            ],
        || format!("properties {names:?}"),
    )?;
    for r in &reports {
        ensure(r.passed() && r.instances >= MIN_AXIOM_PATHS, || {
            format!("{r:?}")
        })?;
    }
    Ok(format!("8 properties x {MIN_AXIOM_PATHS} paths"))
}

fn criterion_8() -> Outcome {
    let opts = VerifyOptions {
        seed: SEED,
        tolerance: SIGN_LEMMA_TOL,
        ..VerifyOptions::default()
    };
    let r = verify_sign_lemma(&opts).map_err(|e| e.to_string())?;
    ensure(r.passed() && r.instances >= MIN_SIGN_FAMILIES, || {
        format!("{r:?}")
    })?;
    ensure(r.max_residual < SIGN_LEMMA_TOL, || format!("{r:?}"))?;
    Ok(format!(
        "{} families, max relative difference {:.2e}",
        r.instances, r.max_residual
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let mut pairs = 0;
    for spec in suite() {
        let c = orbifold_complex(&spec).map_err(|e| e.to_string())?;
        ensure(c.ranks == [1, 0, 1], || {
            format!("{spec}: ranks {:?}", c.ranks)
        })?;
        pairs += seifert_index_check(&spec)
            .map_err(|e| e.to_string())?
            .pairs_checked;
    }
    let t = GroupSpec::BinaryTetrahedral;
    let f = build_invariant_morse(&t).map_err(|e| e.to_string())?;
    let crit = find_critical_points(&f).map_err(|e| e.to_string())?;
    let fe =
        count_flow_lines(&f, &crit, PointKind::Face, PointKind::Edge).map_err(|e| e.to_string())?;
    let ev = count_flow_lines(&f, &crit, PointKind::Edge, PointKind::Vertex)
        .map_err(|e| e.to_string())?;
    ensure(fe.downstairs == 1 && ev.downstairs == 1, || {
        format!(
            "T downstairs counts {} and {}",
            fe.downstairs, ev.downstairs
        )
    })?;
    let h = hypothetical_differential(&t).map_err(|e| e.to_string())?;
    ensure(
        (h.upper_weight, h.lower_weight) == (3, 2) && h.magnitude == 6,
        || format!("T weights {h:?}"),
    )?;
    let elapsed = within(start, MORSE_LIMIT)?;
    Ok(format!(
        "ranks (1,0,1) for all specs, T weights 3 and 2, {pairs} Seifert pairs, {elapsed:.2?}"
    ))
}

/// Index of the `k`-th iterate of an orbit whose index rises by 2 every
/// `d2 / 2` iterates and equals 3 at `k = d2`.
fn generic_mu(k: u32, d2: u32) -> i64 {
    2 * (2 * k).div_ceil(d2) as i64 - 1
}

fn criterion_10() -> Outcome {
    let mut families = Vec::new();
    for spec in suite() {
        let points = base_points(&spec);
        let (kind, d2) = match spec {
            GroupSpec::Cyclic(n) => (PointKind::SouthPole, n),
            GroupSpec::BinaryDihedral(_) => (PointKind::Minus, 4),
            _ => (PointKind::Vertex, 2 * i_v(&spec)),
        };
        let base = *points
            .iter()
            .find(|p| p.kind == kind)
            .ok_or_else(|| format!("{spec}: no base point {kind:?}"))?;
        families.push((spec, base, d2));
    }
    let mut cases = 0;
    for (spec, base, d2) in &families {
        for d1 in 1..=10 {
            let routes = [
                (
                    cz_formula(spec, base, d1 + d2),
                    cz_formula(spec, base, d1),
                    cz_formula(spec, base, *d2),
                ),
                (
                    generic_mu(d1 + d2, *d2),
                    generic_mu(d1, *d2),
                    generic_mu(*d2, *d2),
                ),
            ];
            for (top, b1, b2) in routes {
                ensure(b2 == 3, || format!("{spec}: index of d2-th iterate {b2}"))?;
                let idx = building_index(top, &[b1, b2]).map_err(|e| e.to_string())?;
                ensure(idx == 2, || format!("{spec} d1={d1}: building index {idx}"))?;
            }
            ensure(routes[0] == routes[1], || {
                format!("{spec} d1={d1}: routes disagree {routes:?}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (family, d1) cases, both routes give 2"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("homology equals closed form", criterion_1),
        ("orbit tables", criterion_2),
        ("class counts and Dynkin vertices", criterion_3),
        ("index and action monotonicity", criterion_4),
        ("crossing-form and rotation indices", criterion_5),
        ("spectral flow equals index difference", criterion_6),
        ("index properties", criterion_7),
        ("crossing sign comparison", criterion_8),
        ("orbifold Morse homology", criterion_9),
        ("building index arithmetic", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
