//! Small dense linear-algebra helpers for symplectic computations.
//!
//! Phase space ℝ^{2n} uses coordinates `(x₁, …, xₙ, y₁, …, yₙ)` with
//! `J₀ = [[0, −I], [I, 0]]` and `ω₀(u, w) = −uᵀJ₀w`.

use nalgebra::DMatrix;

/// Dense real matrix.
pub type Mat = DMatrix<f64>;

/// The standard complex structure on ℝ^{dim}.
pub fn j0(dim: usize) -> Mat {
    assert!(dim.is_multiple_of(2), "phase space dimension must be even");
    let n = dim / 2;
    let mut j = Mat::zeros(dim, dim);
    for i in 0..n {
        j[(i, n + i)] = -1.0;
        j[(n + i, i)] = 1.0;
    }
    j
}

/// `ω₀(u, w) = −uᵀJ₀w`.
pub fn omega0(u: &Mat, w: &Mat) -> f64 {
    let j = j0(u.nrows());
    -(u.transpose() * j * w)[(0, 0)]
}

/// The rotation `exp(θJ₀)` of ℝ².
pub fn rot2(theta: f64) -> Mat {
    let (s, c) = theta.sin_cos();
    Mat::from_row_slice(2, 2, &[c, -s, s, c])
}

/// Symmetric part `(M + Mᵀ)/2`.
pub fn sym(m: &Mat) -> Mat {
    (m + m.transpose()) * 0.5
}

/// Largest entry of `|M − Mᵀ|`.
pub fn asymmetry(m: &Mat) -> f64 {
    (m - m.transpose()).amax()
}

/// Symplecticity defect `|ΦᵀJ₀Φ − J₀|∞ / max(1, |Φ|∞²)`.
pub fn symplectic_defect(phi: &Mat) -> f64 {
    let j = j0(phi.nrows());
    let scale = phi.amax().max(1.0);
    (phi.transpose() * &j * phi - j).amax() / (scale * scale)
}

/// Sorted eigenvalues of a symmetric matrix.
pub fn sym_eigenvalues(m: &Mat) -> Vec<f64> {
    let mut v: Vec<f64> = sym(m).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Signature `#positive − #negative` of a symmetric matrix and its smallest
/// absolute eigenvalue.
pub fn signature(m: &Mat) -> (i64, f64) {
    let ev = sym_eigenvalues(m);
    let sig = ev.iter().map(|&x| if x > 0.0 { 1 } else { -1 }).sum();
    let min_abs = ev.iter().map(|x| x.abs()).fold(f64::INFINITY, f64::min);
    (sig, min_abs)
}

/// Singular values in descending order with the matching right singular
/// vectors as columns.
pub fn svd_sorted(m: &Mat) -> (Vec<f64>, Mat) {
    let svd = m.clone().svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let values = idx.iter().map(|&i| svd.singular_values[i]).collect();
    let mut v = Mat::zeros(m.ncols(), idx.len());
    for (c, &i) in idx.iter().enumerate() {
        v.set_column(c, &v_t.row(i).transpose());
    }
    (values, v)
}

/// Smallest singular value.
pub fn sigma_min(m: &Mat) -> f64 {
    m.singular_values()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// `Φ − Id`.
pub fn minus_identity(phi: &Mat) -> Mat {
    phi - Mat::identity(phi.nrows(), phi.ncols())
}

/// Permutation taking `(x¹, y¹) ⊕ (x², y²)` coordinates to `(x¹, x², y¹, y²)`.
fn interleave_index(i: usize, n1: usize, n2: usize) -> usize {
    if i < n1 {
        i
    } else if i < 2 * n1 {
        i - n1 + n1 + n2
    } else if i < 2 * n1 + n2 {
        i - 2 * n1 + n1
    } else {
        i - 2 * n1 - n2 + 2 * n1 + n2
    }
}

/// Symplectic direct sum of `a ∈ Mat(2n₁)` and `b ∈ Mat(2n₂)` in the
/// interleaved coordinates `(x¹, x², y¹, y²)`.
pub fn symplectic_sum(a: &Mat, b: &Mat) -> Mat {
    let (n1, n2) = (a.nrows() / 2, b.nrows() / 2);
    let dim = a.nrows() + b.nrows();
    let mut block = Mat::zeros(dim, dim);
    block.view_mut((0, 0), (2 * n1, 2 * n1)).copy_from(a);
    block
        .view_mut((2 * n1, 2 * n1), (2 * n2, 2 * n2))
        .copy_from(b);
    let mut out = Mat::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            out[(interleave_index(i, n1, n2), interleave_index(j, n1, n2))] = block[(i, j)];
        }
    }
    out
}

/// Block-diagonal embedding of `n` copies of a 2×2 matrix acting on each
/// `(xᵢ, yᵢ)` pair.
pub fn pairwise(blocks: &[Mat]) -> Mat {
    let n = blocks.len();
    let mut out = Mat::zeros(2 * n, 2 * n);
    for (i, b) in blocks.iter().enumerate() {
        out[(i, i)] = b[(0, 0)];
        out[(i, n + i)] = b[(0, 1)];
        out[(n + i, i)] = b[(1, 0)];
        out[(n + i, n + i)] = b[(1, 1)];
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j0_squares_to_minus_identity() {
        let j = j0(4);
        assert!((&j * &j + Mat::identity(4, 4)).amax() < 1e-15);
    }

    #[test]
    fn rotation_is_exp_of_j0() {
        let r = rot2(0.7);
        assert!(((j0(2) * 0.7).exp() - &r).amax() < 1e-14);
        assert!(symplectic_defect(&r) < 1e-15);
    }

    #[test]
    fn symplectic_sum_preserves_symplecticity() {
        let a = (j0(2) * Mat::from_row_slice(2, 2, &[1.0, 0.3, 0.3, -2.0])).exp();
        let b = (j0(4)
            * Mat::from_fn(4, 4, |i, j| ((i + j) as f64).sin() + (i * j) as f64 * 0.1)
                .symmetric_part())
        .exp();
        let s = symplectic_sum(&a, &b);
        assert!(symplectic_defect(&s) < 1e-12);
        assert!(symplectic_defect(&b) < 1e-12);
    }

    #[test]
    fn omega_matches_inner_product_convention() {
        let u = Mat::from_column_slice(2, 1, &[1.0, 2.0]);
        let w = Mat::from_column_slice(2, 1, &[-0.5, 3.0]);
        let lhs = omega0(&u, &(j0(2) * &w));
        let rhs = (u.transpose() * &w)[(0, 0)];
        assert!((lhs - rhs).abs() < 1e-15);
    }
}
