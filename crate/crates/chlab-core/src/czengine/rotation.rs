//! Rotation-number route to the Conley-Zehnder index of paths in `Sp(2)` and
//! the Maslov index of loops of symplectic matrices.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::linalg::Mat;
use super::path::SymplecticPath;
use crate::error::{Error, Result};

/// Largest admissible angle increment between consecutive samples.
pub const MAX_UNWRAP_STEP: f64 = PI / 2.0;
/// Trace margin separating elliptic from hyperbolic endpoints.
pub const TRACE_MARGIN: f64 = 1e-9;

/// Rotation number and index of a path in `Sp(2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RotationIndex {
    /// Total rotation in units of full turns.
    pub rotation: f64,
    /// `⌊θ⌋ + ⌈θ⌉`, or `2θ` for hyperbolic endpoints.
    pub index: i64,
}

fn unwrap_total(vectors: impl Iterator<Item = (f64, f64)>) -> Result<f64> {
    let mut total = 0.0;
    let mut prev: Option<(f64, f64)> = None;
    for (step, (x, y)) in vectors.enumerate() {
        if let Some((px, py)) = prev {
            let inc = (px * y - py * x).atan2(px * x + py * y);
            if inc.abs() > MAX_UNWRAP_STEP {
                return Err(Error::UnwrapFailure {
                    step,
                    increment: inc,
                });
            }
            total += inc;
        }
        prev = Some((x, y));
    }
    Ok(total)
}

fn column(m: &Mat, v: &[f64; 2]) -> (f64, f64) {
    (
        m[(0, 0)] * v[0] + m[(0, 1)] * v[1],
        m[(1, 0)] * v[0] + m[(1, 1)] * v[1],
    )
}

/// Rotation number and Conley-Zehnder index of a path in `Sp(2)` with
/// nondegenerate endpoint.
///
/// Hyperbolic endpoints use a real eigenvector `v` of `Φ(1)`; the angle swept
/// by `Φ(t)v` is a multiple of half a turn. Elliptic endpoints are conjugated
/// to a rotation `R(φ)` by `P` and the angle of `P⁻¹Φ(t)P e₁` is unwrapped.
pub fn rotation_cz_sp2(path: &SymplecticPath) -> Result<RotationIndex> {
    if path.dim() != 2 {
        return Err(Error::InvalidInput(
            "rotation route needs a path in Sp(2)".into(),
        ));
    }
    let end = path.endpoint();
    if path.endpoint_det().abs() <= super::crossing::ENDPOINT_DET_TOL {
        return Err(Error::DegenerateEndpoint {
            det: path.endpoint_det(),
        });
    }
    let tr = end.trace();
    if tr.abs() > 2.0 + TRACE_MARGIN {
        let disc = (tr * tr / 4.0 - 1.0).sqrt();
        let lambda = tr / 2.0 + disc;
        // (Φ − λ)v = 0 for v orthogonal to a nonzero row of Φ − λ.
        let (a, b) = (end[(0, 0)] - lambda, end[(0, 1)]);
        let (c, d) = (end[(1, 0)], end[(1, 1)] - lambda);
        let v = if a.hypot(b) >= c.hypot(d) {
            [-b, a]
        } else {
            [-d, c]
        };
        let total = unwrap_total(path.samples().iter().map(|m| column(m, &v)))?;
        let rotation = (total / PI).round() / 2.0;
        return Ok(RotationIndex {
            rotation,
            index: (2.0 * rotation).round() as i64,
        });
    }
    if tr.abs() > 2.0 - TRACE_MARGIN {
        return Err(Error::DegenerateEndpoint {
            det: path.endpoint_det(),
        });
    }
    // Elliptic: eigenvalue e^{iφ} with eigenvector w = u + iv.
    let half = tr / 2.0;
    let im = (1.0 - half * half).sqrt();
    let lambda = Complex64::new(half, im);
    let (a, b) = (
        Complex64::new(end[(0, 0)], 0.0) - lambda,
        Complex64::new(end[(0, 1)], 0.0),
    );
    let w = if a.norm() + b.norm() > 1e-12 {
        [-b, a]
    } else {
        let (c, d) = (
            Complex64::new(end[(1, 0)], 0.0),
            Complex64::new(end[(1, 1)], 0.0) - lambda,
        );
        [-d, c]
    };
    let (u, v) = ([w[0].re, w[1].re], [w[0].im, w[1].im]);
    // Φ(u + iv) = e^{iφ}(u + iv) gives Φ[u, −v] = [u, −v]R(φ) with the sign of
    // det[u, −v] fixing orientation; otherwise conjugate.
    let mut p = Mat::from_row_slice(2, 2, &[u[0], -v[0], u[1], -v[1]]);
    if p.determinant() < 0.0 {
        p = Mat::from_row_slice(2, 2, &[u[0], v[0], u[1], v[1]]);
    }
    let p_inv = p
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::DegenerateRotation("singular eigenbasis".into()))?;
    let total = unwrap_total(
        path.samples()
            .iter()
            .map(|m| column(&(&p_inv * m * &p), &[1.0, 0.0])),
    )?;
    let rotation = total / (2.0 * PI);
    Ok(RotationIndex {
        rotation,
        index: (rotation.floor() + rotation.ceil()) as i64,
    })
}

/// Maslov index of a loop `L: [0, 1] → Sp(2n)` given by samples with
/// `L(0) = L(1)`: the winding number of `det(X + iY)` where `[X; Y]` are the
/// first `n` columns of the orthogonal polar factor.
pub fn maslov_loop(samples: &[Mat]) -> Result<i64> {
    let first = samples
        .first()
        .ok_or_else(|| Error::InvalidInput("empty loop".into()))?;
    let last = samples.last().expect("nonempty");
    if (first - last).amax() > 1e-8 * first.amax().max(1.0) {
        return Err(Error::InvalidInput("loop is not closed".into()));
    }
    let n = first.nrows() / 2;
    let phases = samples.iter().map(|m| {
        let svd = m.clone().svd(true, true);
        let u = svd.u.expect("requested") * svd.v_t.expect("requested");
        let mut z = nalgebra::DMatrix::<Complex64>::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                z[(i, j)] = Complex64::new(u[(i, j)], u[(n + i, j)]);
            }
        }
        let d = z.determinant();
        (d.re, d.im)
    });
    let total = unwrap_total(phases)?;
    Ok((total / (2.0 * PI)).round() as i64)
}
