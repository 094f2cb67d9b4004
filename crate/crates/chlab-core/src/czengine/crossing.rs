//! Conley-Zehnder index by the crossing form.
//!
//! `μ(Φ) = ½ Sign S(0) + Σ Sign Γ(t)` over the interior crossings
//! `t ∈ (0, 1)` where `Φ(t)` has eigenvalue one, with
//! `Γ(t)(v) = ω₀(v, Φ̇(t)v)` on `ker(Φ(t) − Id)`.

use serde::Serialize;

use super::linalg::{j0, minus_identity, signature, svd_sorted, sym, Mat};
use super::path::SymplecticPath;
use crate::error::{Error, Result};

/// Largest `|det(Φ(1) − Id)|` treated as degenerate.
pub const ENDPOINT_DET_TOL: f64 = 1e-8;
/// Width of the interval to which crossings are localized.
pub const BISECTION_TOL: f64 = 1e-10;
/// Relative singular-value threshold defining the kernel.
pub const KERNEL_REL_TOL: f64 = 1e-7;
/// Crossing-form eigenvalues below this are irregular.
pub const DEAD_ZONE: f64 = 1e-9;
/// Interior crossings closer than this to an endpoint are rejected.
pub const ENDPOINT_GUARD: f64 = 1e-6;
/// Crossings closer than this are merged.
pub const DEDUP_TOL: f64 = 1e-8;

const ZOOM_POINTS: usize = 33;
const PRUNE_RATIO: f64 = 0.75;
const START_TOL: f64 = 1e-9;

/// One interior crossing of a symplectic path.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingRecord {
    /// Crossing time.
    pub t: f64,
    /// `dim ker(Φ(t) − Id)`.
    pub kernel_dim: usize,
    /// Signature of the crossing form.
    pub signature: i64,
}

/// Full output of the crossing-form computation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrossingAnalysis {
    /// The Conley-Zehnder index.
    pub index: i64,
    /// `Sign S(0)`.
    pub initial_signature: i64,
    /// Interior crossings in increasing time.
    pub crossings: Vec<CrossingRecord>,
}

struct Candidate {
    t: f64,
    forced: bool,
}

fn det_minus_id(path: &SymplecticPath, t: f64) -> f64 {
    minus_identity(&path.eval(t)).determinant()
}

fn smallest_sv(path: &SymplecticPath, t: f64) -> f64 {
    super::linalg::sigma_min(&minus_identity(&path.eval(t)))
}

fn bisect_sign(path: &SymplecticPath, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    while b - a > BISECTION_TOL {
        let m = 0.5 * (a + b);
        let fm = det_minus_id(path, m);
        if fm == 0.0 {
            return m;
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// Recursively localizes local minima of `σ_min(Φ(t) − Id)` and sign changes
/// of `det(Φ(t) − Id)` inside `[a, b]`.
fn zoom(path: &SymplecticPath, a: f64, b: f64, out: &mut Vec<Candidate>) {
    let ts: Vec<f64> = (0..ZOOM_POINTS)
        .map(|i| a + (b - a) * i as f64 / (ZOOM_POINTS - 1) as f64)
        .collect();
    if b - a < BISECTION_TOL {
        out.push(Candidate {
            t: 0.5 * (a + b),
            forced: false,
        });
        return;
    }
    let sv: Vec<f64> = ts.iter().map(|&t| smallest_sv(path, t)).collect();
    let det: Vec<f64> = ts.iter().map(|&t| det_minus_id(path, t)).collect();
    for i in 0..ZOOM_POINTS - 1 {
        if det[i] != 0.0 && det[i + 1] != 0.0 && (det[i] > 0.0) != (det[i + 1] > 0.0) {
            out.push(Candidate {
                t: bisect_sign(path, ts[i], ts[i + 1], det[i]),
                forced: true,
            });
        }
    }
    for i in 0..ZOOM_POINTS {
        let left = if i > 0 { sv[i - 1] } else { f64::INFINITY };
        let right = if i + 1 < ZOOM_POINTS {
            sv[i + 1]
        } else {
            f64::INFINITY
        };
        if sv[i] > left || sv[i] > right {
            continue;
        }
        let neighbour = [left, right]
            .into_iter()
            .filter(|x| x.is_finite())
            .fold(0.0, f64::max);
        if sv[i] > PRUNE_RATIO * neighbour {
            continue;
        }
        let lo = ts[i.saturating_sub(1)];
        let hi = ts[(i + 1).min(ZOOM_POINTS - 1)];
        zoom(path, lo, hi, out);
    }
}

/// Kernel basis of `Φ(t) − Id` as columns.
fn kernel_basis(phi: &Mat, forced: bool) -> Option<Mat> {
    let m = minus_identity(phi);
    let (values, v) = svd_sorted(&m);
    let scale = values[0].max(1.0);
    let dim = values
        .iter()
        .filter(|&&s| s < KERNEL_REL_TOL * scale)
        .count();
    let dim = if forced { dim.max(1) } else { dim };
    if dim == 0 {
        return None;
    }
    let cols = v.ncols();
    Some(v.columns(cols - dim, dim).into_owned())
}

/// Signature of the crossing form `Γ(t)` on the kernel basis `k`.
fn crossing_signature(path: &SymplecticPath, t: f64, k: &Mat) -> Result<i64> {
    let j = j0(path.dim());
    let phi_dot = path.velocity(t);
    let gamma = sym(&(-(k.transpose() * j * phi_dot * k)));
    let (sig, min_abs) = signature(&gamma);
    if min_abs < DEAD_ZONE {
        return Err(Error::IrregularCrossing {
            t,
            eigenvalue: min_abs,
        });
    }
    Ok(sig)
}

/// Computes the crossings of a path and its Conley-Zehnder index.
pub fn analyze_crossings(path: &SymplecticPath) -> Result<CrossingAnalysis> {
    let end_det = path.endpoint_det();
    if end_det.abs() <= ENDPOINT_DET_TOL {
        return Err(Error::DegenerateEndpoint { det: end_det });
    }
    let (initial_signature, min_abs) = signature(&path.generator().at(0.0));
    if min_abs < DEAD_ZONE {
        return Err(Error::IrregularCrossing {
            t: 0.0,
            eigenvalue: min_abs,
        });
    }

    let samples = path.samples();
    let m = samples.len();
    let sv: Vec<f64> = samples
        .iter()
        .map(|p| super::linalg::sigma_min(&minus_identity(p)))
        .collect();
    let det: Vec<f64> = samples
        .iter()
        .map(|p| minus_identity(p).determinant())
        .collect();
    let mut candidates = Vec::new();
    for i in 1..m - 1 {
        if det[i] != 0.0 && det[i + 1] != 0.0 && (det[i] > 0.0) != (det[i + 1] > 0.0) {
            candidates.push(Candidate {
                t: bisect_sign(path, path.time(i), path.time(i + 1), det[i]),
                forced: true,
            });
        }
        if sv[i] <= sv[i - 1]
            && sv[i] <= sv[i + 1]
            && sv[i] <= PRUNE_RATIO * sv[i - 1].max(sv[i + 1])
        {
            zoom(path, path.time(i - 1), path.time(i + 1), &mut candidates);
        }
    }
    candidates.sort_by(|a, b| a.t.total_cmp(&b.t));
    let mut merged: Vec<Candidate> = Vec::new();
    for c in candidates {
        // Φ(0) = Id is not an interior crossing.
        if c.t < START_TOL {
            continue;
        }
        match merged.last_mut() {
            Some(last) if c.t - last.t < DEDUP_TOL => {
                if c.forced && !last.forced {
                    *last = c;
                }
            }
            _ => merged.push(c),
        }
    }

    let mut crossings = Vec::new();
    for c in merged {
        let Some(k) = kernel_basis(&path.eval(c.t), c.forced) else {
            continue;
        };
        if c.t < ENDPOINT_GUARD || 1.0 - c.t < ENDPOINT_GUARD {
            return Err(Error::CrossingNearEndpoint { t: c.t });
        }
        crossings.push(CrossingRecord {
            t: c.t,
            kernel_dim: k.ncols(),
            signature: crossing_signature(path, c.t, &k)?,
        });
    }
    let total: i64 = crossings.iter().map(|c| c.signature).sum();
    Ok(CrossingAnalysis {
        index: initial_signature / 2 + total,
        initial_signature,
        crossings,
    })
}

/// The Conley-Zehnder index of a path with nondegenerate endpoint.
pub fn cz_crossing_form(path: &SymplecticPath) -> Result<i64> {
    analyze_crossings(path).map(|a| a.index)
}
