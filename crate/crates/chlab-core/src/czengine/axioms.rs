//! Randomized checks of the characterizing properties of the
//! Conley-Zehnder index on paths with nondegenerate endpoints.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::crossing::cz_crossing_form;
use super::linalg::{j0, minus_identity, pairwise, rot2, sigma_min, sym, symplectic_sum, Mat};
use super::path::{solve_path, SymmetricPath, SymplecticPath};
use super::rotation::maslov_loop;
use crate::error::{Error, Result};
use crate::report::VerificationReport;

/// Smallest `σ_min(Φ(1) − Id)` accepted for a random path.
pub const MIN_ENDPOINT_SIGMA: f64 = 1e-3;
/// Largest entry of `Φ(t)` accepted for a random path.
pub const MAX_PATH_ENTRY: f64 = 12.0;
/// Tighter growth bound for properties whose generators scale with `|Φ|²`.
const MAX_CONJUGATED_ENTRY: f64 = 4.0;
/// Smallest number of paths per property.
pub const MIN_PATHS: usize = 50;

const MAX_ATTEMPTS: usize = 200;

/// Names of the checked properties in report order.
pub const AXIOMS: [&str; 8] = [
    "homotopy",
    "naturality",
    "product",
    "inverse",
    "determinant",
    "zero",
    "signature",
    "loop",
];

fn random_symmetric(rng: &mut ChaCha8Rng, dim: usize, scale: f64) -> Mat {
    let m = Mat::from_fn(dim, dim, |_, _| rng.random_range(-scale..scale));
    sym(&m)
}

/// A random generator `S(t) = C₀ + C₁ cos 2πt + D₁ sin 2πt`; `C₀` carries
/// a random multiple of the identity so that the paths wind.
#[derive(Debug, Clone)]
pub struct RandomLoop {
    c0: Mat,
    c1: Mat,
    d1: Mat,
}

impl RandomLoop {
    fn draw(rng: &mut ChaCha8Rng, dim: usize, amplitude: f64) -> Self {
        let spin = rng.random_range(-4.0 * PI..4.0 * PI) * amplitude;
        Self {
            c0: random_symmetric(rng, dim, 6.0 * amplitude) + Mat::identity(dim, dim) * spin,
            c1: random_symmetric(rng, dim, 3.0 * amplitude),
            d1: random_symmetric(rng, dim, 3.0 * amplitude),
        }
    }

    /// `S(t)`.
    pub fn at(&self, t: f64) -> Mat {
        let (s, c) = (2.0 * PI * t).sin_cos();
        &self.c0 + &self.c1 * c + &self.d1 * s
    }

    fn path(&self) -> Result<SymmetricPath> {
        let me = self.clone();
        SymmetricPath::from_fn(self.c0.nrows(), move |t| me.at(t))
    }
}

/// A random path with its index, drawn until the endpoint is comfortably
/// nondegenerate and the crossings are regular.
pub struct RandomInstance {
    /// The generator.
    pub generator: RandomLoop,
    /// The symplectic path.
    pub path: SymplecticPath,
    /// Its index by the crossing form.
    pub index: i64,
}

/// Draws a random instance in `Sp(2n)`.
pub fn random_instance(rng: &mut ChaCha8Rng, n: usize) -> Result<RandomInstance> {
    random_instance_bounded(rng, n, MAX_PATH_ENTRY)
}

/// Draws a random instance in `Sp(2n)` whose entries stay below `bound`.
pub fn random_instance_bounded(
    rng: &mut ChaCha8Rng,
    n: usize,
    bound: f64,
) -> Result<RandomInstance> {
    for _ in 0..MAX_ATTEMPTS {
        let generator = RandomLoop::draw(rng, 2 * n, (bound / MAX_PATH_ENTRY).sqrt());
        let path = solve_path(&generator.path()?)?;
        if sigma_min(&minus_identity(path.endpoint())) < MIN_ENDPOINT_SIGMA
            || path.samples().iter().any(|p| p.amax() > bound)
        {
            continue;
        }
        match cz_crossing_form(&path) {
            Ok(index) => {
                return Ok(RandomInstance {
                    generator,
                    path,
                    index,
                })
            }
            Err(e) if e.is_numeric() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidInput(
        "could not draw a regular random path".into(),
    ))
}

fn symplectic_inverse(m: &Mat) -> Mat {
    let j = j0(m.nrows());
    -(&j * m.transpose() * &j)
}

/// Runs `attempt` until it yields a residual without a numerical
/// degeneracy; returns `(residual, holds)`.
fn with_retries(
    rng: &mut ChaCha8Rng,
    mut attempt: impl FnMut(&mut ChaCha8Rng) -> Result<(f64, bool)>,
) -> Result<(f64, bool)> {
    for _ in 0..MAX_ATTEMPTS {
        match attempt(rng) {
            Ok(r) => return Ok(r),
            Err(e) if e.is_numeric() => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::InvalidInput("too many degenerate instances".into()))
}

fn dims(rng: &mut ChaCha8Rng) -> usize {
    rng.random_range(1..=2)
}

fn check_homotopy(rng: &mut ChaCha8Rng) -> Result<(f64, bool)> {
    let n = dims(rng);
    let base = random_instance(rng, n)?;
    let b = random_symmetric(rng, 2 * n, 1.0);
    let delta = rng.random_range(0.3..1.0);
    let g = base.generator.clone();
    let j = j0(2 * n);
    let moved = SymmetricPath::from_fn(2 * n, move |t| {
        let rho = delta * (PI * t).sin().powi(2);
        let rho_dot = delta * PI * (2.0 * PI * t).sin();
        let e_inv = (&j * &b * (-rho)).exp();
        sym(&(&b * rho_dot + e_inv.transpose() * g.at(t) * &e_inv))
    })?;
    let index = cz_crossing_form(&solve_path(&moved)?)?;
    let residual = (index - base.index).abs() as f64;
    Ok((residual, residual == 0.0))
}

fn check_naturality(rng: &mut ChaCha8Rng) -> Result<(f64, bool)> {
    let n = dims(rng);
    let base = random_instance_bounded(rng, n, MAX_CONJUGATED_ENTRY)?;
    let j = j0(2 * n);
    let n0 = (&j * random_symmetric(rng, 2 * n, 0.3)).exp();
    let c = random_symmetric(rng, 2 * n, 0.6);
    let (jc, n0c) = (&j * &c, n0.clone());
    let conj = move |t: f64| (&jc * t).exp() * &n0c;
    let (phi, g, conj2, c2) = (
        base.path.clone(),
        base.generator.clone(),
        conj.clone(),
        c.clone(),
    );
    let generator = SymmetricPath::from_fn(2 * n, move |t| {
        let nt = conj2(t);
        let n_inv = symplectic_inverse(&nt);
        let psi = &nt * phi.eval(t) * &n_inv;
        let psi_inv = symplectic_inverse(&psi);
        sym(&(&c2 + n_inv.transpose() * g.at(t) * &n_inv - psi_inv.transpose() * &c2 * psi_inv))
    })?;
    let phi = base.path.clone();
    let psi = SymplecticPath::from_evaluator(generator, move |t| {
        let nt = conj(t);
        &nt * phi.eval(t) * symplectic_inverse(&nt)
    })?;
    let index = cz_crossing_form(&psi)?;
    let residual = (index - base.index).abs() as f64;
    Ok((residual, residual == 0.0))
}

fn check_product(rng: &mut ChaCha8Rng) -> Result<(f64, bool)> {
    let (n1, n2) = (dims(rng), dims(rng));
    let a = random_instance(rng, n1)?;
    let b = random_instance(rng, n2)?;
    let (ga, gb) = (a.generator.clone(), b.generator.clone());
    let sum = SymmetricPath::from_fn(2 * (n1 + n2), move |t| symplectic_sum(&ga.at(t), &gb.at(t)))?;
    let index = cz_crossing_form(&solve_path(&sum)?)?;
    let residual = (index - a.index - b.index).abs() as f64;
    Ok((residual, residual == 0.0))
}

fn check_inverse(rng: &mut ChaCha8Rng) -> Result<(f64, bool)> {
    let n = dims(rng);
    let base = random_instance_bounded(rng, n, MAX_CONJUGATED_ENTRY)?;
    let (phi, g) = (base.path.clone(), base.generator.clone());
    let generator = SymmetricPath::from_fn(2 * n, move |t| {
        let p = phi.eval(t);
        sym(&(-(p.transpose() * g.at(t) * p)))
    })?;
    let phi = base.path.clone();
    let inv = SymplecticPath::from_evaluator(generator, move |t| symplectic_inverse(&phi.eval(t)))?;
    let index = cz_crossing_form(&inv)?;
    let residual = (index + base.index).abs() as f64;
    Ok((residual, residual == 0.0))
}

fn check_determinant(rng: &mut ChaCha8Rng) -> Result<(f64, bool)> {
    let n = dims(rng);
    let base = random_instance(rng, n)?;
    let parity = if (n as i64 - base.index).rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    };
    let sign = base.path.endpoint_det().signum();
    let residual = (parity - sign).abs() / 2.0;
    Ok((residual, residual == 0.0))
}

fn check_zero(rng: &mut ChaCha8Rng) -> Result<(f64, bool)> {
    let n = dims(rng);
    let mut d = Mat::zeros(2 * n, 2 * n);
    for i in 0..n {
        d[(i, i)] = rng.random_range(0.2..3.0);
        d[(n + i, n + i)] = -rng.random_range(0.2..3.0);
    }
    let j = j0(2 * n);
    let nm = (&j * random_symmetric(rng, 2 * n, 0.7)).exp();
    let s = sym(&(nm.transpose() * d * &nm));
    let index = cz_crossing_form(&solve_path(&SymmetricPath::constant(s)?)?)?;
    let residual = index.abs() as f64;
    Ok((residual, residual == 0.0))
}

fn check_signature(rng: &mut ChaCha8Rng) -> Result<(f64, bool)> {
    let n = dims(rng);
    let mut s = random_symmetric(rng, 2 * n, 4.0);
    let norm = s.clone().symmetric_eigenvalues().amax();
    let target = rng.random_range(0.2..0.95) * 2.0 * PI;
    s *= target / norm;
    let (sig, min_abs) = super::linalg::signature(&s);
    if min_abs < 1e-3 {
        return Err(Error::IrregularCrossing {
            t: 0.0,
            eigenvalue: min_abs,
        });
    }
    let index = cz_crossing_form(&solve_path(&SymmetricPath::constant(s)?)?)?;
    let residual = (2 * index - sig).abs() as f64;
    Ok((residual, residual == 0.0))
}

fn check_loop(rng: &mut ChaCha8Rng) -> Result<(f64, bool)> {
    let n = dims(rng);
    let base = random_instance(rng, n)?;
    let ks: Vec<i64> = (0..n).map(|_| rng.random_range(-2..=2)).collect();
    let rotations = {
        let ks = ks.clone();
        move |t: f64| {
            let blocks: Vec<Mat> = ks.iter().map(|&k| rot2(2.0 * PI * k as f64 * t)).collect();
            pairwise(&blocks)
        }
    };
    let s_l = pairwise(
        &ks.iter()
            .map(|&k| Mat::identity(2, 2) * (2.0 * PI * k as f64))
            .collect::<Vec<_>>(),
    );
    let g = base.generator.clone();
    let rot = rotations.clone();
    let generator = SymmetricPath::from_fn(2 * n, move |t| {
        let l = rot(t);
        sym(&(&s_l + &l * g.at(t) * l.transpose()))
    })?;
    let index = cz_crossing_form(&solve_path(&generator)?)?;
    let samples: Vec<Mat> = (0..=1024).map(|i| rotations(i as f64 / 1024.0)).collect();
    let maslov = maslov_loop(&samples)?;
    let expected = base.index + 2 * ks.iter().sum::<i64>();
    let residual = ((index - expected).abs() + (maslov - ks.iter().sum::<i64>()).abs()) as f64;
    Ok((residual, residual == 0.0))
}

/// Runs one named property on `paths` random instances.
pub fn check_axiom(name: &str, paths: usize, seed: u64) -> Result<VerificationReport> {
    let check: fn(&mut ChaCha8Rng) -> Result<(f64, bool)> = match name {
        "homotopy" => check_homotopy,
        "naturality" => check_naturality,
        "product" => check_product,
        "inverse" => check_inverse,
        "determinant" => check_determinant,
        "zero" => check_zero,
        "signature" => check_signature,
        "loop" => check_loop,
        _ => return Err(Error::InvalidInput(format!("unknown property {name}"))),
    };
    let salt = AXIOMS.iter().position(|a| *a == name).unwrap_or(0) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (salt.wrapping_mul(0x9E37_79B9_7F4A_7C15)));
    let mut report = VerificationReport::new(name);
    for _ in 0..paths {
        let (residual, ok) = with_retries(&mut rng, check)?;
        report.record(residual, ok);
    }
    Ok(report)
}

/// Runs every property on at least [`MIN_PATHS`] random paths each and
/// fails with [`Error::AxiomViolation`] on the first property with a
/// failing instance.
pub fn cz_axiom_suite(paths: usize, seed: u64) -> Result<Vec<VerificationReport>> {
    if paths < MIN_PATHS {
        return Err(Error::InvalidInput(format!(
            "{paths} paths per property; at least {MIN_PATHS} required"
        )));
    }
    let mut reports = Vec::with_capacity(AXIOMS.len());
    for name in AXIOMS {
        let report = check_axiom(name, paths, seed)?;
        if !report.passed() {
            return Err(Error::AxiomViolation {
                axiom: name.to_string(),
                detail: format!(
                    "{} of {} instances failed, max residual {}",
                    report.failures.len(),
                    report.instances,
                    report.max_residual
                ),
            });
        }
        reports.push(report);
    }
    Ok(reports)
}
