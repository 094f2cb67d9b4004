//! Sampled paths of symmetric matrices and the symplectic paths they generate.

use std::fmt;
use std::sync::Arc;

use super::linalg::{asymmetry, j0, symplectic_defect, Mat};
use crate::error::{Error, Result};

/// Minimum number of grid samples of a path.
pub const MIN_SAMPLES: usize = 512;
/// Samples per unit of `|S|∞` used to size the grid.
pub const SAMPLES_PER_UNIT_NORM: f64 = 150.0;
/// Largest number of grid samples of a path.
pub const MAX_SAMPLES: usize = 200_000;
/// Largest admissible symplecticity defect.
pub const DRIFT_TOL: f64 = 1e-8;
/// Largest admissible asymmetry of a sample.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// A matrix-valued function of one real variable.
pub type MatFn = Arc<dyn Fn(f64) -> Mat + Send + Sync>;

/// A path `t ↦ S(t)` of symmetric matrices on `[0, 1]` with a uniform grid of
/// samples and an evaluator for off-grid times.
#[derive(Clone)]
pub struct SymmetricPath {
    dim: usize,
    samples: Vec<Mat>,
    eval: MatFn,
}

impl fmt::Debug for SymmetricPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymmetricPath")
            .field("dim", &self.dim)
            .field("samples", &self.samples.len())
            .finish()
    }
}

impl SymmetricPath {
    /// Samples `f` on a grid sized from its largest norm.
    pub fn from_fn(dim: usize, f: impl Fn(f64) -> Mat + Send + Sync + 'static) -> Result<Self> {
        let probe = (0..=MIN_SAMPLES)
            .map(|i| f(i as f64 / MIN_SAMPLES as f64).amax() * dim as f64)
            .fold(0.0, f64::max);
        let count = MIN_SAMPLES.max((SAMPLES_PER_UNIT_NORM * probe).ceil() as usize) + 1;
        Self::with_samples(dim, count, f)
    }

    /// Samples `f` on `count` uniform grid points.
    pub fn with_samples(
        dim: usize,
        count: usize,
        f: impl Fn(f64) -> Mat + Send + Sync + 'static,
    ) -> Result<Self> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("dimension {dim} is not even")));
        }
        if count > MAX_SAMPLES {
            return Err(Error::InvalidInput(format!(
                "{count} samples; at most {MAX_SAMPLES} allowed"
            )));
        }
        if count < MIN_SAMPLES {
            return Err(Error::InvalidInput(format!(
                "{count} samples; at least {MIN_SAMPLES} required"
            )));
        }
        let samples: Vec<Mat> = (0..count)
            .map(|i| f(i as f64 / (count - 1) as f64))
            .collect();
        for (i, s) in samples.iter().enumerate() {
            if s.nrows() != dim || s.ncols() != dim {
                return Err(Error::InvalidInput("sample has wrong shape".into()));
            }
            if asymmetry(s) > SYMMETRY_TOL {
                return Err(Error::InvalidInput(format!("sample {i} is not symmetric")));
            }
        }
        Ok(Self {
            dim,
            samples,
            eval: Arc::new(f),
        })
    }

    /// The constant path `S(t) = s`.
    pub fn constant(s: Mat) -> Result<Self> {
        let dim = s.nrows();
        Self::from_fn(dim, move |_| s.clone())
    }

    /// Phase-space dimension `2n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of grid samples.
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    /// Always false; paths have at least [`MIN_SAMPLES`] samples.
    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Grid time of sample `i`.
    pub fn time(&self, i: usize) -> f64 {
        i as f64 / (self.samples.len() - 1) as f64
    }

    /// Grid samples.
    pub fn samples(&self) -> &[Mat] {
        &self.samples
    }

    /// `S(t)` at an arbitrary time.
    pub fn at(&self, t: f64) -> Mat {
        (self.eval)(t)
    }

    /// Shared evaluator.
    pub fn evaluator(&self) -> MatFn {
        self.eval.clone()
    }
}

/// A sampled path `Φ: [0, 1] → Sp(2n)` with `Φ(0) = Id` and its generator.
#[derive(Clone)]
pub struct SymplecticPath {
    generator: SymmetricPath,
    samples: Vec<Mat>,
    drift: f64,
    exact: Option<MatFn>,
}

impl fmt::Debug for SymplecticPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymplecticPath")
            .field("dim", &self.dim())
            .field("samples", &self.samples.len())
            .field("drift", &self.drift)
            .finish()
    }
}

fn rk4_step(s: &MatFn, j: &Mat, t: f64, h: f64, phi: &Mat) -> Mat {
    let f = |tt: f64, y: &Mat| j * s(tt) * y;
    let k1 = f(t, phi);
    let k2 = f(t + h / 2.0, &(phi + &k1 * (h / 2.0)));
    let k3 = f(t + h / 2.0, &(phi + &k2 * (h / 2.0)));
    let k4 = f(t + h, &(phi + &k3 * h));
    phi + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0)
}

/// Integrates `Φ̇ = J₀SΦ`, `Φ(0) = Id` with the classical fourth-order
/// Runge-Kutta method on the grid of `s`.
///
/// Symplecticity is monitored, not enforced.
pub fn solve_path(s: &SymmetricPath) -> Result<SymplecticPath> {
    let dim = s.dim();
    let j = j0(dim);
    let eval = s.evaluator();
    let h = 1.0 / (s.len() - 1) as f64;
    let mut samples = Vec::with_capacity(s.len());
    let mut phi = Mat::identity(dim, dim);
    samples.push(phi.clone());
    let mut drift: f64 = 0.0;
    for i in 0..s.len() - 1 {
        phi = rk4_step(&eval, &j, s.time(i), h, &phi);
        drift = drift.max(symplectic_defect(&phi));
        samples.push(phi.clone());
    }
    if drift > DRIFT_TOL {
        return Err(Error::DriftExceeded { drift });
    }
    Ok(SymplecticPath {
        generator: s.clone(),
        samples,
        drift,
        exact: None,
    })
}

impl SymplecticPath {
    /// Builds a path from an exact evaluator `t ↦ Φ(t)` sampled on the grid of
    /// its generator.
    pub fn from_evaluator(
        generator: SymmetricPath,
        exact: impl Fn(f64) -> Mat + Send + Sync + 'static,
    ) -> Result<Self> {
        let samples: Vec<Mat> = (0..generator.len())
            .map(|i| exact(generator.time(i)))
            .collect();
        let drift = samples.iter().map(symplectic_defect).fold(0.0, f64::max);
        if drift > DRIFT_TOL {
            return Err(Error::DriftExceeded { drift });
        }
        let dim = generator.dim();
        if (&samples[0] - Mat::identity(dim, dim)).amax() > 1e-12 {
            return Err(Error::InvalidInput(
                "path does not start at the identity".into(),
            ));
        }
        Ok(Self {
            generator,
            samples,
            drift,
            exact: Some(Arc::new(exact)),
        })
    }

    /// Attaches an exact evaluator used for off-grid refinement.
    pub fn with_exact(mut self, exact: impl Fn(f64) -> Mat + Send + Sync + 'static) -> Self {
        self.exact = Some(Arc::new(exact));
        self
    }

    /// Phase-space dimension `2n`.
    pub fn dim(&self) -> usize {
        self.generator.dim()
    }

    /// The generating symmetric path.
    pub fn generator(&self) -> &SymmetricPath {
        &self.generator
    }

    /// Grid samples of `Φ`.
    pub fn samples(&self) -> &[Mat] {
        &self.samples
    }

    /// Grid time of sample `i`.
    pub fn time(&self, i: usize) -> f64 {
        self.generator.time(i)
    }

    /// Largest symplecticity defect over the grid.
    pub fn drift(&self) -> f64 {
        self.drift
    }

    /// `Φ(1)`.
    pub fn endpoint(&self) -> &Mat {
        self.samples.last().expect("paths are nonempty")
    }

    /// `det(Φ(1) − Id)`.
    pub fn endpoint_det(&self) -> f64 {
        super::linalg::minus_identity(self.endpoint()).determinant()
    }

    /// True when `|det(Φ(1) − Id)|` exceeds the degeneracy tolerance.
    pub fn is_nondegenerate(&self) -> bool {
        self.endpoint_det().abs() > super::crossing::ENDPOINT_DET_TOL
    }

    /// `Φ(t)` at an arbitrary time: exact when available, otherwise one
    /// Runge-Kutta step from the nearest grid sample below `t`.
    pub fn eval(&self, t: f64) -> Mat {
        if let Some(e) = &self.exact {
            return e(t);
        }
        let t = t.clamp(0.0, 1.0);
        let m = self.samples.len() - 1;
        let i = ((t * m as f64).floor() as usize).min(m);
        let h = t - self.time(i);
        if h.abs() < 1e-15 {
            return self.samples[i].clone();
        }
        rk4_step(
            &self.generator.evaluator(),
            &j0(self.dim()),
            self.time(i),
            h,
            &self.samples[i],
        )
    }

    /// `Φ̇(t) = J₀S(t)Φ(t)`.
    pub fn velocity(&self, t: f64) -> Mat {
        j0(self.dim()) * self.generator.at(t) * self.eval(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::czengine::linalg::rot2;

    #[test]
    fn zero_generator_gives_identity() {
        let p = solve_path(&SymmetricPath::constant(Mat::zeros(2, 2)).unwrap()).unwrap();
        for s in p.samples() {
            assert!((s - Mat::identity(2, 2)).amax() < 1e-15);
        }
    }

    #[test]
    fn scalar_generator_gives_rotation() {
        let c = 4.5;
        let p = solve_path(&SymmetricPath::constant(Mat::identity(2, 2) * c).unwrap()).unwrap();
        for i in (0..p.samples().len()).step_by(37) {
            let t = p.time(i);
            assert!((&p.samples()[i] - rot2(c * t)).amax() < 1e-10);
        }
        assert!((p.eval(0.123_456) - rot2(c * 0.123_456)).amax() < 1e-10);
    }

    #[test]
    fn hyperbolic_generator_gives_cosh_sinh_blocks() {
        let s = Mat::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, -1.0, -1.0]));
        let p = solve_path(&SymmetricPath::constant(s).unwrap()).unwrap();
        let e = p.endpoint();
        let (ch, sh) = (1f64.cosh(), 1f64.sinh());
        for i in 0..2 {
            assert!((e[(i, i)] - ch).abs() < 1e-10);
            assert!((e[(i, i + 2)] - sh).abs() < 1e-10);
            assert!((e[(i + 2, i)] - sh).abs() < 1e-10);
        }
        assert!(p.drift() < 1e-12);
    }

    #[test]
    fn rejects_asymmetric_samples() {
        let r = SymmetricPath::constant(Mat::from_row_slice(2, 2, &[0.0, 1.0, 0.0, 0.0]));
        assert!(matches!(r, Err(Error::InvalidInput(_))));
    }

    #[test]
    fn coarse_grid_triggers_drift_error() {
        let s = SymmetricPath::with_samples(2, 512, |_| Mat::identity(2, 2) * 400.0).unwrap();
        assert!(matches!(solve_path(&s), Err(Error::DriftExceeded { .. })));
    }
}
