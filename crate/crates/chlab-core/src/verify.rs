//! Verification suites run by the command-line front end.
//!
//! Each suite returns a [`VerificationReport`]; a report with failures is
//! returned, not raised, so callers can render it before exiting.

use std::f64::consts::PI;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::czengine::{
    self, cz_crossing_form, orbit_local_model, random_instance, rotation_cz_sp2,
    spectral_flow_report, verify_crossing_sign_lemma_with, AsymptoticFamily, Mat,
};
use crate::error::{Error, Result};
use crate::groups::{GroupSpec, PointKind};
use crate::homology::mckay_check;
use crate::morse::{
    build_invariant_morse, count_flow_lines, find_critical_points, gradient_floor_scan,
    hypothetical_differential, orbifold_complex, seifert_index_check, SCAN_POINTS,
};
use crate::orbits::{cz_formula, enumerate_orbits, verify_monotonicity};
use crate::report::VerificationReport;

/// Names of the verification suites.
pub const CHECKS: [&str; 8] = [
    "monotonicity",
    "cz-engine",
    "spectral-flow",
    "axioms",
    "sign-lemma",
    "morse",
    "seifert",
    "mckay",
];

/// Perturbation parameter of the local models.
pub const LOCAL_EPSILON: f64 = 1e-3;
/// Filtration level below which local models are checked.
pub const LOCAL_LEVEL: u32 = 3;

/// Parameters shared by the suites.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyOptions {
    /// Seed for every random draw.
    pub seed: u64,
    /// Largest filtration level for monotonicity.
    pub n_max: u32,
    /// Fourier truncation order `K` for spectral flow.
    pub fourier_modes: usize,
    /// Relative tolerance of the crossing sign comparison.
    pub tolerance: f64,
    /// Random paths per index property.
    pub paths: usize,
    /// Random families for spectral flow and the sign comparison.
    pub families: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: 1,
            n_max: 4,
            fourier_modes: 32,
            tolerance: czengine::spectral::SIGN_LEMMA_TOL,
            paths: czengine::axioms::MIN_PATHS,
            families: 20,
        }
    }
}

/// Monotonicity of index and action within homotopy classes for every spec.
pub fn verify_monotonicity_all(opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("monotonicity");
    for spec in GroupSpec::standard_suite() {
        match verify_monotonicity(&spec, opts.n_max) {
            Ok(_) => report.record_named(spec.to_string(), 0.0, true),
            Err(Error::MonotonicityViolation { .. }) => {
                report.record_named(spec.to_string(), 1.0, false)
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Crossing-form and rotation-number indices of the local models of every
/// orbit below the threshold against the closed formula.
pub fn verify_cz_engine(_opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut orbits = Vec::new();
    for spec in GroupSpec::standard_suite() {
        orbits.extend(enumerate_orbits(&spec, LOCAL_LEVEL)?);
    }
    let residuals: Vec<(String, i64)> = orbits
        .par_iter()
        .map(|orbit| {
            let path = orbit_local_model(orbit, LOCAL_EPSILON)?;
            let expected = cz_formula(&orbit.group, &orbit.base, orbit.k);
            let crossing = cz_crossing_form(&path)?;
            let rotation = rotation_cz_sp2(&path)?.index;
            let residual = (crossing - expected).abs().max((rotation - expected).abs());
            Ok((format!("{} {}", orbit.group, orbit.name()), residual))
        })
        .collect::<Result<_>>()?;
    let mut report = VerificationReport::new("cz-engine");
    for (label, r) in residuals {
        report.record_named(label, r as f64, r == 0);
    }
    Ok(report)
}

/// Straight-line family between two random loops in `Sp(2)` with the
/// indices of its ends.
pub struct RandomFamily {
    /// The family with `S_{−1}` the first loop.
    pub family: AsymptoticFamily,
    /// Index of the loop at `s = −1`.
    pub index_plus: i64,
    /// Index of the loop at `s = +1`.
    pub index_minus: i64,
}

/// Draws `count` random families with the given truncation order.
pub fn random_families(count: usize, modes: usize, seed: u64) -> Result<Vec<RandomFamily>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = random_instance(&mut rng, 1)?;
        let b = random_instance(&mut rng, 1)?;
        let (ga, gb) = (a.generator, b.generator);
        let family =
            AsymptoticFamily::interpolating(2, modes, move |t| ga.at(t), move |t| gb.at(t))?;
        out.push(RandomFamily {
            family,
            index_plus: a.index,
            index_minus: b.index,
        });
    }
    Ok(out)
}

fn diag(a: f64, b: f64) -> Mat {
    Mat::from_row_slice(2, 2, &[a, 0.0, 0.0, b])
}

/// The reference family from `Id` to `diag(1, −1)`, with indices 1 and 0.
pub fn reference_family(modes: usize) -> Result<RandomFamily> {
    Ok(RandomFamily {
        family: AsymptoticFamily::interpolating(2, modes, |_| diag(1.0, 1.0), |_| diag(1.0, -1.0))?,
        index_plus: 1,
        index_minus: 0,
    })
}

/// Spectral flow against the index difference of the ends, at `K` and `2K`.
pub fn verify_spectral_flow(opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("spectral-flow");
    let mut families = random_families(opts.families, opts.fourier_modes, opts.seed)?;
    families.push(reference_family(opts.fourier_modes)?);
    for f in &families {
        let coarse = spectral_flow_report(&f.family, czengine::spectral::DEFAULT_STEPS)?.flow;
        let fine = spectral_flow_report(
            &f.family.with_modes(2 * opts.fourier_modes),
            czengine::spectral::DEFAULT_STEPS,
        )?
        .flow;
        let expected = f.index_plus - f.index_minus;
        let residual = (coarse - expected).abs().max((fine - coarse).abs()) as f64;
        report.record(residual, residual == 0.0);
    }
    Ok(report)
}

/// Families used by the crossing sign comparison: random families with
/// crossings, a simple constant-mode crossing and a two-dimensional
/// resonance.
pub fn sign_lemma_families(opts: &VerifyOptions) -> Result<Vec<AsymptoticFamily>> {
    let k = opts.fourier_modes;
    let mut out = vec![
        AsymptoticFamily::new(2, k, |s, _| diag(1.0, s + 0.1), |_, _| diag(0.0, 1.0))?,
        AsymptoticFamily::new(
            2,
            k,
            |s, _| {
                let c = 2.0 * PI + 1.5 * s + 0.2;
                diag(c, c)
            },
            |_, _| diag(1.5, 1.5),
        )?,
    ];
    for f in random_families(opts.families, k, opts.seed ^ 0x5157)? {
        if f.index_plus != f.index_minus {
            out.push(f.family);
        }
    }
    Ok(out)
}

/// Crossing forms of operators against those of return maps.
pub fn verify_sign_lemma(opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("sign-lemma");
    for family in sign_lemma_families(opts)? {
        match verify_crossing_sign_lemma_with(&family, opts.tolerance) {
            Ok(r) => {
                let r = r.require_crossing()?;
                report.record(r.max_relative_difference, true);
            }
            Err(Error::AxiomViolation { .. }) => report.record(f64::INFINITY, false),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// The index properties on random paths, one report per property.
pub fn verify_axioms(opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    czengine::AXIOMS
        .iter()
        .map(|name| czengine::check_axiom(name, opts.paths, opts.seed))
        .collect()
}

/// Orbifold Morse homology of every spec, the gradient floor, and the
/// tetrahedral downstairs flow counts and hypothetical weights.
pub fn verify_morse(_opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("morse");
    for spec in GroupSpec::standard_suite() {
        let f = build_invariant_morse(&spec)?;
        let invariance = f.invariance_defect(500);
        gradient_floor_scan(&f, SCAN_POINTS)?;
        match orbifold_complex(&spec) {
            Ok(c) => report.record_named(spec.to_string(), invariance, c.ranks == [1, 0, 1]),
            Err(Error::HomologyMismatch(_)) => {
                report.record_named(spec.to_string(), invariance, false)
            }
            Err(e) => return Err(e),
        }
    }
    let t = GroupSpec::BinaryTetrahedral;
    let f = build_invariant_morse(&t)?;
    let crit = find_critical_points(&f)?;
    let fe = count_flow_lines(&f, &crit, PointKind::Face, PointKind::Edge)?;
    let ev = count_flow_lines(&f, &crit, PointKind::Edge, PointKind::Vertex)?;
    let h = hypothetical_differential(&t)?;
    for (label, got, want) in [
        ("T F->E downstairs", fe.downstairs as i64, 1),
        ("T E->V downstairs", ev.downstairs as i64, 1),
        ("T upper weight", h.upper_weight as i64, 3),
        ("T lower weight", h.lower_weight as i64, 2),
        ("T magnitude", h.magnitude as i64, 6),
    ] {
        report.record_named(label, (got - want).abs() as f64, got == want);
    }
    Ok(report)
}

/// Morse-index against Conley-Zehnder differences for every spec.
pub fn verify_seifert(_opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("seifert");
    for spec in GroupSpec::standard_suite() {
        match seifert_index_check(&spec) {
            Ok(r) => {
                for _ in 0..r.pairs_checked {
                    report.record(0.0, true);
                }
            }
            Err(Error::IndexCorrespondenceFailure { .. }) => {
                report.record_named(spec.to_string(), 1.0, false)
            }
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Dynkin vertex count, class count and stable degree-zero rank agree.
pub fn verify_mckay(_opts: &VerifyOptions) -> Result<VerificationReport> {
    let mut report = VerificationReport::new("mckay");
    for spec in GroupSpec::standard_suite() {
        let r = mckay_check(&spec)?;
        let residual = (r.dynkin_vertices as f64 - r.classes_minus_one as f64).abs()
            + (r.degree_zero_rank as f64 - r.classes_minus_one as f64).abs();
        report.record_named(spec.to_string(), residual, r.consistent);
    }
    Ok(report)
}

/// Runs one suite by name, or every suite for `"all"`.
pub fn run_check(name: &str, opts: &VerifyOptions) -> Result<Vec<VerificationReport>> {
    match name {
        "monotonicity" => Ok(vec![verify_monotonicity_all(opts)?]),
        "cz-engine" => Ok(vec![verify_cz_engine(opts)?]),
        "spectral-flow" => Ok(vec![verify_spectral_flow(opts)?]),
        "axioms" => verify_axioms(opts),
        "sign-lemma" => Ok(vec![verify_sign_lemma(opts)?]),
        "morse" => Ok(vec![verify_morse(opts)?]),
        "seifert" => Ok(vec![verify_seifert(opts)?]),
        "mckay" => Ok(vec![verify_mckay(opts)?]),
        "all" => {
            let parts: Vec<Vec<VerificationReport>> = CHECKS
                .par_iter()
                .map(|c| run_check(c, opts))
                .collect::<Result<_>>()?;
            Ok(parts.into_iter().flatten().collect())
        }
        _ => Err(Error::InvalidInput(format!("unknown check {name}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cheap_suites_pass() {
        let opts = VerifyOptions {
            n_max: 2,
            ..VerifyOptions::default()
        };
        for name in ["monotonicity", "seifert", "mckay", "morse"] {
            for r in run_check(name, &opts).unwrap() {
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn small_spectral_suites_pass() {
        let opts = VerifyOptions {
            families: 3,
            ..VerifyOptions::default()
        };
        let flow = verify_spectral_flow(&opts).unwrap();
        assert_eq!(flow.instances, 4);
        assert!(flow.passed(), "{flow:?}");
        let sign = verify_sign_lemma(&opts).unwrap();
        assert!(sign.passed(), "{sign:?}");
    }

    #[test]
    fn unknown_check_is_rejected() {
        assert!(run_check("nope", &VerifyOptions::default()).is_err());
    }
}
