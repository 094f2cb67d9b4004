//! Linearized Reeb flow near a fibre over a critical point of a Morse
//! function on the base, for the perturbed contact form `(1 + εf)λ`.
//!
//! In a trivialization along the fibre the linearized flow is generated by
//! `S(t) = (2/f_ε)Id − (ε/f_ε²) R(2t/f_ε) H R(2t/f_ε)ᵀ`, `f_ε = 1 + εf`,
//! where `H` is the Hessian at the critical point. Its solution is
//! `Φ(t) = R(2t/f_ε) exp(−tε/f_ε² J₀H)`.

use std::f64::consts::PI;

use super::linalg::{j0, rot2, Mat};
use super::path::{solve_path, SymmetricPath, SymplecticPath};
use crate::error::{Error, Result};
use crate::orbits::{covering_multiplicity, ReebOrbit};

/// Largest admissible perturbation parameter.
pub const MAX_EPSILON: f64 = 1e-2;

/// Normal-form Hessian at a critical point of the given Morse index on a
/// surface: `Id`, `diag(1, −1)` or `−Id`.
pub fn morse_hessian(index: u32) -> Result<Mat> {
    match index {
        0 => Ok(Mat::identity(2, 2)),
        1 => Ok(Mat::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])),
        2 => Ok(-Mat::identity(2, 2)),
        _ => Err(Error::InvalidInput(format!(
            "no Morse index {index} on a surface"
        ))),
    }
}

/// The index `4k + ind − 1` of the `k`-th iterate of a fibre over a critical
/// point of Morse index `ind`.
pub fn expected_local_cz(index: u32, k: u32) -> i64 {
    4 * k as i64 + index as i64 - 1
}

/// Local-model path over `turns` fibre periods, reparametrized to `[0, 1]`.
///
/// `f_value` is the value of the Morse function at the critical point and
/// `hessian` its Hessian.
pub fn local_model_path_turns(
    f_value: f64,
    hessian: &Mat,
    eps: f64,
    turns: f64,
) -> Result<SymplecticPath> {
    if !(eps > 0.0 && eps <= MAX_EPSILON) {
        return Err(Error::InvalidInput(format!(
            "epsilon {eps} outside (0, {MAX_EPSILON}]"
        )));
    }
    if turns.is_nan() || turns <= 0.0 {
        return Err(Error::InvalidInput("turns must be positive".into()));
    }
    if hessian.shape() != (2, 2) || hessian.determinant().abs() < 1e-12 {
        return Err(Error::InvalidInput(
            "Hessian must be a nondegenerate 2×2 matrix".into(),
        ));
    }
    let fe = 1.0 + eps * f_value;
    if fe <= 0.0 {
        return Err(Error::InvalidInput("perturbed form is not positive".into()));
    }
    let total = 2.0 * PI * fe * turns;
    let h = (hessian + hessian.transpose()) * 0.5;
    let hs = h.clone();
    let generator = SymmetricPath::from_fn(2, move |tau| {
        let t = total * tau;
        let r = rot2(2.0 * t / fe);
        let s = Mat::identity(2, 2) * (2.0 / fe) - &r * &hs * r.transpose() * (eps / (fe * fe));
        let s = s * total;
        (&s + s.transpose()) * 0.5
    })?;
    let jh = j0(2) * &h * (-eps / (fe * fe));
    let path = solve_path(&generator)?;
    Ok(path.with_exact(move |tau| {
        let t = total * tau;
        rot2(2.0 * t / fe) * (&jh * t).exp()
    }))
}

/// Local-model path over `k` full fibre periods.
pub fn local_model_path(f_value: f64, hessian: &Mat, eps: f64, k: u32) -> Result<SymplecticPath> {
    local_model_path_turns(f_value, hessian, eps, k as f64)
}

/// Local-model path of a Reeb orbit of the quotient: the fibre over the base
/// point traversed `k / cov` times, with `f = ind − 1`.
pub fn orbit_local_model(orbit: &ReebOrbit, eps: f64) -> Result<SymplecticPath> {
    let index = orbit.base.kind.morse_index();
    let cov = covering_multiplicity(&orbit.group, &orbit.base);
    local_model_path_turns(
        index as f64 - 1.0,
        &morse_hessian(index)?,
        eps,
        orbit.k as f64 / cov as f64,
    )
}
