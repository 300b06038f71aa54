//! Thin helpers over `nalgebra` for the complex linear algebra used by the
//! encoders and metrics.

use nalgebra::{DMatrix, DVector};
pub use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

#[inline]
pub fn c64(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn split(a: &CMatrix) -> (DMatrix<f64>, DMatrix<f64>) {
    (a.map(|z| z.re), a.map(|z| z.im))
}

fn join(re: &DMatrix<f64>, im: &DMatrix<f64>) -> CMatrix {
    CMatrix::from_fn(re.nrows(), re.ncols(), |i, j| c64(re[(i, j)], im[(i, j)]))
}

/// Complex product `a * b` evaluated with four real GEMMs.
///
/// nalgebra's generic complex product does not hit the blocked real kernel,
/// which makes the large SH-matrix products noticeably slower.
pub fn matmul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.ncols(), b.nrows(), "matmul shape mismatch");
    let (ar, ai) = split(a);
    let (br, bi) = split(b);
    let re = &ar * &br - &ai * &bi;
    let im = &ar * &bi + &ai * &br;
    join(&re, &im)
}

/// `aᴴ * b` without materialising the adjoint as a complex matrix.
pub fn adjoint_mul(a: &CMatrix, b: &CMatrix) -> CMatrix {
    assert_eq!(a.nrows(), b.nrows(), "adjoint_mul shape mismatch");
    let (ar, ai) = split(a);
    let (br, bi) = split(b);
    let art = ar.transpose();
    let ait = ai.transpose();
    let re = &art * &br + &ait * &bi;
    let im = &art * &bi - &ait * &br;
    join(&re, &im)
}

/// `aᴴ diag(w) a` for a real nonnegative weight vector.
pub fn weighted_gram(a: &CMatrix, w: &[f64]) -> CMatrix {
    assert_eq!(a.nrows(), w.len());
    let scaled = CMatrix::from_fn(a.nrows(), a.ncols(), |i, j| a[(i, j)] * w[i]);
    adjoint_mul(a, &scaled)
}

/// Solves `A X = B` for Hermitian positive-definite `A` via Cholesky.
pub fn solve_hpd(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let chol = a
        .clone()
        .cholesky()
        .ok_or_else(|| Error::RankDeficient("matrix is not Hermitian positive definite".into()))?;
    Ok(chol.solve(b))
}

pub fn solve_hpd_vec(a: &CMatrix, b: &CVector) -> Result<CVector> {
    let chol = a
        .clone()
        .cholesky()
        .ok_or_else(|| Error::RankDeficient("matrix is not Hermitian positive definite".into()))?;
    Ok(chol.solve(b))
}

/// Orthonormal basis of the column space of `a`, keeping singular vectors
/// whose singular value exceeds `rel_tol * σ_max`.
pub fn column_space(a: &CMatrix, rel_tol: f64) -> CMatrix {
    let svd = a.clone().svd(true, false);
    let u = svd.u.expect("left singular vectors requested");
    let smax = svd.singular_values.iter().cloned().fold(0.0_f64, f64::max);
    let keep: Vec<usize> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s > rel_tol * smax && s > 0.0)
        .map(|(i, _)| i)
        .collect();
    CMatrix::from_fn(u.nrows(), keep.len(), |i, j| u[(i, keep[j])])
}

pub fn is_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn frob_norm_sq(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

pub fn norm_sq(v: impl IntoIterator<Item = C64>) -> f64 {
    v.into_iter().map(|z| z.norm_sqr()).sum()
}

/// Largest absolute entrywise difference.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}
