//! Spectral flow of the asymptotic operators `A_s = −J₀∂_t − S_s(t)` on loops
//! `S¹ = ℝ/ℤ → ℝ^{2n}`, truncated to Fourier modes `|k| ≤ K`.
//!
//! The truncation uses the orthonormal basis `{1, √2 cos 2πkt, √2 sin 2πkt}`
//! tensored with the standard basis of `ℝ^{2n}`. Entries of the `S`-part are
//! assembled from the Fourier coefficients `C[m] = ∫S cos 2πmt` and
//! `D[m] = ∫S sin 2πmt`, computed by uniform quadrature, which is exact for
//! trigonometric polynomials of low degree.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::linalg::{j0, signature, sym, sym_eigenvalues, Mat};
use super::path::{solve_path, SymmetricPath};
use crate::error::{Error, Result};

/// Smallest admissible truncation order.
pub const MIN_MODES: usize = 32;
/// Endpoint operators with smallest singular value below this are degenerate.
pub const ENDPOINT_SIGMA_TOL: f64 = 1e-6;
/// Interior grid eigenvalues below this are ambiguous.
pub const TRACKING_TOL: f64 = 1e-8;
/// Eigenvalues below this at a located crossing span the kernel.
pub const KERNEL_TOL: f64 = 1e-6;
/// Largest admissible relative discrepancy between the two crossing forms.
pub const SIGN_LEMMA_TOL: f64 = 1e-4;
/// Default number of parameter steps for the eigenvalue scan.
pub const DEFAULT_STEPS: usize = 32;

const ROOT_TOL: f64 = 1e-13;
const CLUSTER_TOL: f64 = 1e-7;
const FD_STEP: f64 = 1e-4;

/// A family `(s, t) ↦ S_s(t)`.
pub type FamilyFn = Arc<dyn Fn(f64, f64) -> Mat + Send + Sync>;

/// A family of asymptotic operators `A_s`, `s ∈ [−1, 1]`, with its
/// `s`-derivative.
#[derive(Clone)]
pub struct AsymptoticFamily {
    dim: usize,
    modes: usize,
    s_fn: FamilyFn,
    ds_fn: FamilyFn,
}

impl fmt::Debug for AsymptoticFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AsymptoticFamily")
            .field("dim", &self.dim)
            .field("modes", &self.modes)
            .finish()
    }
}

impl AsymptoticFamily {
    /// A family from `S_s(t)` and `∂_s S_s(t)`.
    pub fn new(
        dim: usize,
        modes: usize,
        s_fn: impl Fn(f64, f64) -> Mat + Send + Sync + 'static,
        ds_fn: impl Fn(f64, f64) -> Mat + Send + Sync + 'static,
    ) -> Result<Self> {
        if dim == 0 || !dim.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!("dimension {dim} is not even")));
        }
        if modes == 0 {
            return Err(Error::InvalidInput(
                "at least one Fourier mode required".into(),
            ));
        }
        Ok(Self {
            dim,
            modes,
            s_fn: Arc::new(s_fn),
            ds_fn: Arc::new(ds_fn),
        })
    }

    /// The straight-line family from `S_{−1} = plus` to `S_{+1} = minus`.
    pub fn interpolating(
        dim: usize,
        modes: usize,
        plus: impl Fn(f64) -> Mat + Send + Sync + 'static,
        minus: impl Fn(f64) -> Mat + Send + Sync + 'static,
    ) -> Result<Self> {
        let plus: Arc<dyn Fn(f64) -> Mat + Send + Sync> = Arc::new(plus);
        let minus: Arc<dyn Fn(f64) -> Mat + Send + Sync> = Arc::new(minus);
        let (p2, m2) = (plus.clone(), minus.clone());
        Self::new(
            dim,
            modes,
            move |s, t| plus(t) * ((1.0 - s) / 2.0) + minus(t) * ((1.0 + s) / 2.0),
            move |_, t| (m2(t) - p2(t)) * 0.5,
        )
    }

    /// The same family truncated to a different number of modes.
    pub fn with_modes(&self, modes: usize) -> Self {
        Self {
            modes,
            ..self.clone()
        }
    }

    /// Phase-space dimension `2n`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Truncation order `K`.
    pub fn modes(&self) -> usize {
        self.modes
    }

    /// Size `2n(2K + 1)` of the truncated operator.
    pub fn size(&self) -> usize {
        self.dim * (2 * self.modes + 1)
    }

    /// `S_s(t)`.
    pub fn generator(&self, s: f64, t: f64) -> Mat {
        (self.s_fn)(s, t)
    }

    /// The loop `t ↦ S_s(t)` as a sampled path.
    pub fn loop_at(&self, s: f64) -> Result<SymmetricPath> {
        let f = self.s_fn.clone();
        SymmetricPath::from_fn(self.dim, move |t| sym(&f(s, t)))
    }

    /// The truncated operator `A_s`.
    pub fn operator(&self, s: f64) -> Mat {
        let f = self.s_fn.clone();
        kinetic_part(self.dim, self.modes) - galerkin(self.dim, self.modes, |t| f(s, t))
    }

    /// The truncated derivative `∂_s A_s = −∂_s S_s`.
    pub fn operator_derivative(&self, s: f64) -> Mat {
        let f = self.ds_fn.clone();
        -galerkin(self.dim, self.modes, |t| f(s, t))
    }
}

fn block(k: usize, cos: bool) -> usize {
    if k == 0 {
        0
    } else if cos {
        2 * k - 1
    } else {
        2 * k
    }
}

/// Matrix of `−J₀∂_t` in the truncated basis.
fn kinetic_part(dim: usize, modes: usize) -> Mat {
    let j = j0(dim);
    let size = dim * (2 * modes + 1);
    let mut a = Mat::zeros(size, size);
    for k in 1..=modes {
        let w = 2.0 * PI * k as f64;
        let (c, s) = (block(k, true) * dim, block(k, false) * dim);
        for i in 0..dim {
            for l in 0..dim {
                a[(s + i, c + l)] += w * j[(i, l)];
                a[(c + i, s + l)] -= w * j[(i, l)];
            }
        }
    }
    a
}

/// Matrix of multiplication by the loop `g` in the truncated basis.
fn galerkin(dim: usize, modes: usize, g: impl Fn(f64) -> Mat) -> Mat {
    let top = 2 * modes;
    let q = 4 * modes + 64;
    let mut c = vec![Mat::zeros(dim, dim); top + 1];
    let mut d = vec![Mat::zeros(dim, dim); top + 1];
    for i in 0..q {
        let t = i as f64 / q as f64;
        let gt = sym(&g(t)) / q as f64;
        for m in 0..=top {
            let (sn, cs) = (2.0 * PI * m as f64 * t).sin_cos();
            c[m] += &gt * cs;
            d[m] += &gt * sn;
        }
    }
    let dd = |m: i64| -> Mat {
        if m >= 0 {
            d[m as usize].clone()
        } else {
            -&d[(-m) as usize]
        }
    };
    let size = dim * (2 * modes + 1);
    let mut p = Mat::zeros(size, size);
    let mut put = |bi: usize, bj: usize, m: &Mat| {
        p.view_mut((bi * dim, bj * dim), (dim, dim)).copy_from(m);
    };
    put(0, 0, &c[0]);
    for b in 1..=modes {
        let cb = &c[b] * SQRT_2;
        let db = &d[b] * SQRT_2;
        put(0, block(b, true), &cb);
        put(block(b, true), 0, &cb);
        put(0, block(b, false), &db);
        put(block(b, false), 0, &db);
    }
    for a in 1..=modes {
        for b in 1..=modes {
            let diff = a.abs_diff(b);
            put(block(a, true), block(b, true), &(&c[diff] + &c[a + b]));
            put(block(a, false), block(b, false), &(&c[diff] - &c[a + b]));
            let mixed = &d[a + b] - dd(a as i64 - b as i64);
            put(block(a, true), block(b, false), &mixed);
            put(block(b, false), block(a, true), &mixed);
        }
    }
    sym(&p)
}

/// Net eigenvalue crossings through zero on one parameter step.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralEvent {
    /// Start of the step.
    pub s_start: f64,
    /// End of the step.
    pub s_end: f64,
    /// Eigenvalues going from negative to positive minus those going back.
    pub net: i64,
    /// Sorted positions of the eigenvalues that changed sign.
    pub indices: Vec<usize>,
}

/// Spectral flow with the steps on which eigenvalues crossed zero.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralFlowReport {
    /// Net number of eigenvalues crossing from negative to positive.
    pub flow: i64,
    /// Truncation order used.
    pub modes: usize,
    /// Parameter grid points evaluated.
    pub steps: usize,
    /// Steps with sign changes.
    pub events: Vec<SpectralEvent>,
}

fn scan_point(
    family: &AsymptoticFamily,
    s: f64,
    h: f64,
    endpoint: bool,
) -> Result<(f64, Vec<f64>)> {
    let op_eigs = |s: f64| sym_eigenvalues(&family.operator(s));
    if endpoint {
        let ev = op_eigs(s);
        let sigma = ev.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
        if sigma < ENDPOINT_SIGMA_TOL {
            return Err(Error::EndpointDegenerate { s, sigma });
        }
        return Ok((s, ev));
    }
    for shift in [0.0, 0.37, -0.29, 0.17] {
        let sp = s + shift * h;
        let ev = op_eigs(sp);
        if ev.iter().all(|x| x.abs() >= TRACKING_TOL) {
            return Ok((sp, ev));
        }
    }
    Err(Error::TrackingAmbiguity { s })
}

/// Spectral flow of the family over `[−1, 1]` using `steps` parameter steps.
pub fn spectral_flow_report(family: &AsymptoticFamily, steps: usize) -> Result<SpectralFlowReport> {
    if family.modes() < MIN_MODES {
        return Err(Error::InvalidInput(format!(
            "truncation order {} below {MIN_MODES}",
            family.modes()
        )));
    }
    let steps = steps.max(2);
    let h = 2.0 / steps as f64;
    let mut points = Vec::with_capacity(steps + 1);
    for i in 0..=steps {
        let s = -1.0 + h * i as f64;
        points.push(scan_point(family, s, h, i == 0 || i == steps)?);
    }
    let mut flow = 0;
    let mut events = Vec::new();
    for w in points.windows(2) {
        let ((s0, e0), (s1, e1)) = (&w[0], &w[1]);
        let mut net = 0;
        let mut indices = Vec::new();
        for (k, (a, b)) in e0.iter().zip(e1).enumerate() {
            if (*a < 0.0) != (*b < 0.0) {
                net += if *a < 0.0 { 1 } else { -1 };
                indices.push(k);
            }
        }
        if !indices.is_empty() {
            flow += net;
            events.push(SpectralEvent {
                s_start: *s0,
                s_end: *s1,
                net,
                indices,
            });
        }
    }
    Ok(SpectralFlowReport {
        flow,
        modes: family.modes(),
        steps,
        events,
    })
}

/// Spectral flow of the family over `[−1, 1]`.
pub fn spectral_flow(family: &AsymptoticFamily) -> Result<i64> {
    spectral_flow_report(family, DEFAULT_STEPS).map(|r| r.flow)
}

/// Both crossing forms at one crossing of the family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignLemmaCrossing {
    /// Parameter of the crossing.
    pub s: f64,
    /// Dimension of `ker A_s`.
    pub kernel_dim: usize,
    /// Signature of `⟨η, ∂_s A η⟩` on the kernel.
    pub signature_operator: i64,
    /// Signature of `ω₀(v, ∂_s Ψ v)` on `ker(Ψ_s − Id)`, `Ψ_s = Φ_s(1)`.
    pub signature_return_map: i64,
    /// `|Q_A + Q_Ψ| / max(|Q_A|, |Q_Ψ|)` in the Frobenius norm.
    pub relative_difference: f64,
}

/// Outcome of the crossing sign comparison over a family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SignLemmaReport {
    /// One entry per crossing.
    pub crossings: Vec<SignLemmaCrossing>,
    /// Largest relative discrepancy.
    pub max_relative_difference: f64,
}

impl SignLemmaReport {
    /// Fails with [`Error::NoCrossingFound`] when the family has no crossing.
    pub fn require_crossing(self) -> Result<Self> {
        if self.crossings.is_empty() {
            Err(Error::NoCrossingFound)
        } else {
            Ok(self)
        }
    }
}

/// Sorted eigenvalue `k` of `A_s`.
fn eigen_k(family: &AsymptoticFamily, s: f64, k: usize) -> f64 {
    sym_eigenvalues(&family.operator(s))[k]
}

/// Root of the sorted eigenvalue `k` in `[a, b]` by safeguarded secant steps.
fn locate_root(family: &AsymptoticFamily, k: usize, mut a: f64, mut b: f64) -> f64 {
    let mut fa = eigen_k(family, a, k);
    let mut fb = eigen_k(family, b, k);
    for _ in 0..200 {
        if b - a < ROOT_TOL {
            break;
        }
        let secant = b - fb * (b - a) / (fb - fa);
        let mid = 0.5 * (a + b);
        let width = b - a;
        let m = if secant.is_finite() && secant > a + 0.01 * width && secant < b - 0.01 * width {
            secant
        } else {
            mid
        };
        let fm = eigen_k(family, m, k);
        if fm == 0.0 {
            return m;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
            fb = fm;
        }
        // Alternate with bisection so that one-sided convergence still shrinks.
        let mid = 0.5 * (a + b);
        let fmid = eigen_k(family, mid, k);
        if fmid == 0.0 {
            return mid;
        }
        if (fmid < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fmid;
        } else {
            b = mid;
            fb = fmid;
        }
    }
    0.5 * (a + b)
}

fn return_map(family: &AsymptoticFamily, s: f64) -> Result<Mat> {
    Ok(solve_path(&family.loop_at(s)?)?.endpoint().clone())
}

/// Compares, at every crossing of the family, the crossing form of the
/// operators with that of the return maps `Ψ_s = Φ_s(1)`.
///
/// The two quadratic forms agree up to sign; a discrepancy above
/// [`SIGN_LEMMA_TOL`] or equal signatures raise
/// [`Error::AxiomViolation`]. A family without crossings yields an empty
/// report.
pub fn verify_crossing_sign_lemma(family: &AsymptoticFamily) -> Result<SignLemmaReport> {
    verify_crossing_sign_lemma_with(family, SIGN_LEMMA_TOL)
}

/// [`verify_crossing_sign_lemma`] with a custom relative tolerance.
pub fn verify_crossing_sign_lemma_with(
    family: &AsymptoticFamily,
    tolerance: f64,
) -> Result<SignLemmaReport> {
    let scan = spectral_flow_report(family, DEFAULT_STEPS)?;
    let mut roots: Vec<f64> = Vec::new();
    for ev in &scan.events {
        for &k in &ev.indices {
            roots.push(locate_root(family, k, ev.s_start, ev.s_end));
        }
    }
    roots.sort_by(f64::total_cmp);
    roots.dedup_by(|a, b| (*a - *b).abs() < CLUSTER_TOL);

    let dim = family.dim();
    let j = j0(dim);
    let mut crossings = Vec::new();
    for s in roots {
        let eig = sym(&family.operator(s)).symmetric_eigen();
        let kernel: Vec<usize> = (0..eig.eigenvalues.len())
            .filter(|&i| eig.eigenvalues[i].abs() < KERNEL_TOL)
            .collect();
        if kernel.is_empty() {
            return Err(Error::TrackingAmbiguity { s });
        }
        let mut eta = Mat::zeros(family.size(), kernel.len());
        for (c, &i) in kernel.iter().enumerate() {
            eta.set_column(c, &eig.eigenvectors.column(i));
        }
        let q_a = sym(&(eta.transpose() * family.operator_derivative(s) * &eta));

        // η(0) from the coefficients: constant plus √2 times the cosines.
        let mut v = eta.rows(0, dim).into_owned();
        for k in 1..=family.modes() {
            v += eta.rows(block(k, true) * dim, dim) * SQRT_2;
        }
        let psi_prime =
            (return_map(family, s + FD_STEP)? - return_map(family, s - FD_STEP)?) / (2.0 * FD_STEP);
        let q_psi = sym(&(-(v.transpose() * &j * psi_prime * &v)));

        let (sig_a, _) = signature(&q_a);
        let (sig_psi, _) = signature(&q_psi);
        let scale = q_a.norm().max(q_psi.norm());
        let rel = (&q_a + &q_psi).norm() / scale;
        if rel.is_nan() || rel >= tolerance || sig_a != -sig_psi {
            return Err(Error::AxiomViolation {
                axiom: "crossing sign".into(),
                detail: format!(
                    "at s = {s:.9}: signatures {sig_a} and {sig_psi}, relative difference {rel:.3e}"
                ),
            });
        }
        crossings.push(SignLemmaCrossing {
            s,
            kernel_dim: kernel.len(),
            signature_operator: sig_a,
            signature_return_map: sig_psi,
            relative_difference: rel,
        });
    }
    let max_relative_difference = crossings
        .iter()
        .map(|c| c.relative_difference)
        .fold(0.0, f64::max);
    Ok(SignLemmaReport {
        crossings,
        max_relative_difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(a: f64, b: f64) -> Mat {
        Mat::from_row_slice(2, 2, &[a, 0.0, 0.0, b])
    }

    fn negative_count(m: &Mat) -> usize {
        sym_eigenvalues(m).iter().filter(|&&x| x < 0.0).count()
    }

    #[test]
    fn galerkin_matches_direct_integration() {
        let (dim, k) = (2, 3);
        let g = |t: f64| {
            let (sn, cs) = (2.0 * PI * t).sin_cos();
            Mat::from_row_slice(
                2,
                2,
                &[
                    1.0 + cs,
                    0.5 * sn,
                    0.5 * sn,
                    -0.3 + 0.7 * (4.0 * PI * t).cos(),
                ],
            )
        };
        let p = galerkin(dim, k, g);
        let basis = |b: usize, t: f64| -> f64 {
            if b == 0 {
                1.0
            } else if b % 2 == 1 {
                SQRT_2 * (2.0 * PI * b.div_ceil(2) as f64 * t).cos()
            } else {
                SQRT_2 * (2.0 * PI * (b / 2) as f64 * t).sin()
            }
        };
        let steps = 4000;
        for bi in 0..(2 * k + 1) {
            for bj in 0..(2 * k + 1) {
                for i in 0..dim {
                    for j in 0..dim {
                        let direct: f64 = (0..steps)
                            .map(|q| {
                                let t = (q as f64 + 0.5) / steps as f64;
                                basis(bi, t) * basis(bj, t) * g(t)[(i, j)]
                            })
                            .sum::<f64>()
                            / steps as f64;
                        let entry = p[(bi * dim + i, bj * dim + j)];
                        assert!((entry - direct).abs() < 1e-9, "{bi} {bj} {i} {j}");
                    }
                }
            }
        }
    }

    #[test]
    fn negative_counts_of_reference_operators() {
        let k = 8;
        let f =
            AsymptoticFamily::interpolating(2, k, |_| diag(1.0, 1.0), |_| diag(1.0, -1.0)).unwrap();
        assert_eq!(negative_count(&f.operator(-1.0)), 2 * k + 2);
        assert_eq!(negative_count(&f.operator(1.0)), 2 * k + 1);
    }

    #[test]
    fn operator_is_symmetric_and_matches_constant_loop_spectrum() {
        let k = 4;
        let c = 1.3;
        let f = AsymptoticFamily::interpolating(2, k, move |_| diag(c, c), move |_| diag(c, c))
            .unwrap();
        let ev = sym_eigenvalues(&f.operator(0.0));
        let mut expected = vec![-c, -c];
        for m in 1..=k {
            let w = 2.0 * PI * m as f64;
            expected.extend([w - c, w - c, -w - c, -w - c]);
        }
        expected.sort_by(f64::total_cmp);
        for (a, b) in ev.iter().zip(&expected) {
            assert!((a - b).abs() < 1e-10);
        }
    }

    #[test]
    fn reference_family_has_flow_one() {
        let f = AsymptoticFamily::interpolating(2, 32, |_| diag(1.0, 1.0), |_| diag(1.0, -1.0))
            .unwrap();
        assert_eq!(spectral_flow(&f).unwrap(), 1);
    }

    #[test]
    fn low_truncation_is_rejected() {
        let f =
            AsymptoticFamily::interpolating(2, 8, |_| diag(1.0, 1.0), |_| diag(1.0, -1.0)).unwrap();
        assert!(matches!(spectral_flow(&f), Err(Error::InvalidInput(_))));
    }

    #[test]
    fn degenerate_endpoint_is_reported() {
        let f = AsymptoticFamily::interpolating(2, 32, |_| diag(1.0, 0.0), |_| diag(1.0, -1.0))
            .unwrap();
        assert!(matches!(
            spectral_flow(&f),
            Err(Error::EndpointDegenerate { .. })
        ));
    }

    #[test]
    fn simple_crossing_satisfies_sign_lemma() {
        let f =
            AsymptoticFamily::new(2, 32, |s, _| diag(1.0, s + 0.1), |_, _| diag(0.0, 1.0)).unwrap();
        let r = verify_crossing_sign_lemma(&f)
            .unwrap()
            .require_crossing()
            .unwrap();
        assert_eq!(r.crossings.len(), 1);
        assert_eq!(r.crossings[0].kernel_dim, 1);
        assert!((r.crossings[0].s + 0.1).abs() < 1e-9);
        assert!(r.max_relative_difference < SIGN_LEMMA_TOL);
    }

    #[test]
    fn resonance_crossing_has_two_dimensional_kernel() {
        let c = |s: f64| 2.0 * PI + 1.5 * s + 0.2;
        let f = AsymptoticFamily::new(2, 32, move |s, _| diag(c(s), c(s)), |_, _| diag(1.5, 1.5))
            .unwrap();
        let r = verify_crossing_sign_lemma(&f).unwrap();
        assert_eq!(r.crossings.len(), 1);
        assert_eq!(r.crossings[0].kernel_dim, 2);
        assert_eq!(r.crossings[0].signature_operator, -2);
        assert_eq!(r.crossings[0].signature_return_map, 2);
    }

    #[test]
    fn constant_family_has_no_crossings() {
        let f =
            AsymptoticFamily::new(2, 32, |_, _| diag(1.0, 1.0), |_, _| Mat::zeros(2, 2)).unwrap();
        let r = verify_crossing_sign_lemma(&f).unwrap();
        assert!(r.crossings.is_empty());
        assert!(matches!(r.require_crossing(), Err(Error::NoCrossingFound)));
    }
}
