//! Unit quaternions as elements of SU(2).

use std::ops::{Mul, Neg};

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

/// Tolerance for identifying two group elements (max-component distance).
pub const ELEMENT_TOL: f64 = 1e-9;

/// The quaternion `a + b·i + c·j + d·k`, identified with the SU(2) matrix
/// `[[α, −β̄], [β, ᾱ]]` where `α = a + b·i` and `β = c + d·i`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quaternion {
    /// Real part.
    pub a: f64,
    /// `i` component.
    pub b: f64,
    /// `j` component.
    pub c: f64,
    /// `k` component.
    pub d: f64,
}

/// A point of S³ ⊂ ℂ².
pub type C2 = [Complex64; 2];

impl Quaternion {
    /// Builds a quaternion from components.
    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self { a, b, c, d }
    }

    /// Identity element.
    pub const fn identity() -> Self {
        Self::new(1.0, 0.0, 0.0, 0.0)
    }

    /// Builds the element with first matrix column `(α, β)`.
    pub fn from_alpha_beta(alpha: Complex64, beta: Complex64) -> Self {
        Self::new(alpha.re, alpha.im, beta.re, beta.im)
    }

    /// Upper-left matrix entry `α`.
    pub fn alpha(&self) -> Complex64 {
        Complex64::new(self.a, self.b)
    }

    /// Lower-left matrix entry `β`.
    pub fn beta(&self) -> Complex64 {
        Complex64::new(self.c, self.d)
    }

    /// Euclidean norm of the components.
    pub fn norm(&self) -> f64 {
        (self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d).sqrt()
    }

    /// Rescales to unit norm.
    pub fn normalized(&self) -> Self {
        let r = self.norm();
        Self::new(self.a / r, self.b / r, self.c / r, self.d / r)
    }

    /// Inverse of a unit quaternion (the conjugate).
    pub fn inverse(&self) -> Self {
        Self::new(self.a, -self.b, -self.c, -self.d)
    }

    /// Matrix trace, `2a`.
    pub fn trace(&self) -> f64 {
        2.0 * self.a
    }

    /// Largest componentwise difference.
    pub fn distance(&self, other: &Self) -> f64 {
        (self.a - other.a)
            .abs()
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d - other.d).abs())
    }

    /// Equality up to [`ELEMENT_TOL`].
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.distance(other) < ELEMENT_TOL
    }

    /// Matrix action on `z ∈ ℂ²`.
    pub fn act(&self, z: &C2) -> C2 {
        let (al, be) = (self.alpha(), self.beta());
        [al * z[0] - be.conj() * z[1], be * z[0] + al.conj() * z[1]]
    }

    /// Image under the double cover SU(2) → SO(3).
    pub fn project_so3(&self) -> Matrix3<f64> {
        project_so3(self)
    }
}

impl Mul for Quaternion {
    type Output = Quaternion;
    fn mul(self, rhs: Quaternion) -> Quaternion {
        let (a1, b1) = (self.alpha(), self.beta());
        let (a2, b2) = (rhs.alpha(), rhs.beta());
        Quaternion::from_alpha_beta(a1 * a2 - b1.conj() * b2, b1 * a2 + a1.conj() * b2)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.a, -self.b, -self.c, -self.d)
    }
}

/// The rotation `P(g)` induced on S² = ℂP¹ by the Hopf map.
pub fn project_so3(g: &Quaternion) -> Matrix3<f64> {
    let (al, be) = (g.alpha(), g.beta());
    let ab = al * be;
    let acb = al.conj() * be;
    let sq_sum = al * al + be * be;
    let sq_diff = al * al - be * be;
    Matrix3::new(
        al.norm_sqr() - be.norm_sqr(),
        2.0 * ab.im,
        2.0 * ab.re,
        -2.0 * acb.im,
        sq_sum.re,
        -sq_sum.im,
        -2.0 * acb.re,
        sq_diff.im,
        sq_diff.re,
    )
}

/// The Hopf map S³ → S², `(α, β) ↦ (|α|² − |β|², −2 Im(ᾱβ), −2 Re(ᾱβ))`.
pub fn hopf(z: &C2) -> Vector3<f64> {
    let w = z[0].conj() * z[1];
    Vector3::new(z[0].norm_sqr() - z[1].norm_sqr(), -2.0 * w.im, -2.0 * w.re)
}

/// A point of the Hopf fibre over `p ∈ S²`.
pub fn hopf_lift(p: &Vector3<f64>) -> C2 {
    let p = p.normalize();
    if p.x <= -1.0 + 1e-14 {
        return [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
    }
    let alpha = ((1.0 + p.x) / 2.0).sqrt();
    let beta = -Complex64::new(p.z, p.y) / (2.0 * alpha);
    [Complex64::new(alpha, 0.0), beta]
}
