use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

use super::channel_count;

fn binomial_sqrt(n: usize, k: usize) -> f64 {
    // √C(n, k) via a running product; C(120, 60) ≈ 1e35 is well within range
    let k = k.min(n - k);
    let mut c = 1.0f64;
    for i in 0..k {
        c = c * (n - i) as f64 / (i + 1) as f64;
    }
    c.sqrt()
}

/// Wigner little-d block `d^j(β)` as a `(2j+1)²` row-major table indexed
/// `[(m'+j)(2j+1) + (m+j)]`.
///
/// Each entry is seeded in closed form at `j₀ = max(|m|, |m'|)` and carried
/// up to `j` with the three-term recurrence in `j`, which stays stable to
/// high orders where the explicit factorial sum loses all precision.
pub fn wigner_small_d(j: usize, beta: f64) -> Vec<f64> {
    let dim = 2 * j + 1;
    let mut out = vec![0.0; dim * dim];
    let (s, c) = (beta / 2.0).sin_cos();
    let cb = beta.cos();
    let ji = j as i64;
    for mp in -ji..=ji {
        for m in -ji..=ji {
            let j0 = mp.abs().max(m.abs());
            let seed = |mp: i64, m: i64| -> f64 {
                let j0u = j0 as usize;
                let pw = |a: i64, b: i64| c.powi(a as i32) * s.powi(b as i32);
                if m == j0 {
                    binomial_sqrt(2 * j0u, (j0 + mp) as usize) * pw(j0 + mp, j0 - mp)
                } else if mp == j0 {
                    let sign = if (j0 - m) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * binomial_sqrt(2 * j0u, (j0 + m) as usize) * pw(j0 + m, j0 - m)
                } else if m == -j0 {
                    let sign = if (j0 + mp) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * binomial_sqrt(2 * j0u, (j0 - mp) as usize) * pw(j0 - mp, j0 + mp)
                } else {
                    // mp == -j0
                    binomial_sqrt(2 * j0u, (j0 - m) as usize) * pw(j0 - m, j0 + m)
                }
            };
            let mut prev2 = 0.0;
            let mut prev1 = seed(mp, m);
            for jj in (j0 + 1)..=ji {
                let jf = jj as f64;
                let (mf, mpf) = (m as f64, mp as f64);
                let mm = if m * mp == 0 { 0.0 } else { mf * mpf / (jf * (jf - 1.0)) };
                let lead = jf * (2.0 * jf - 1.0) / ((jf * jf - mf * mf) * (jf * jf - mpf * mpf)).sqrt();
                let mut next = (cb - mm) * prev1;
                if jj - 2 >= j0 {
                    let jm = jf - 1.0;
                    let back = ((jm * jm - mf * mf) * (jm * jm - mpf * mpf)).sqrt() / (jm * (2.0 * jf - 1.0));
                    next -= back * prev2;
                }
                prev2 = prev1;
                prev1 = lead * next;
            }
            out[(mp + ji) as usize * dim + (m + ji) as usize] = prev1;
        }
    }
    out
}

/// Block-diagonal Wigner-D matrix for the zyz rotation `Rz(α) Ry(β) Rz(γ)`,
/// entries `D^n_{mm'} = e^{-imα} d^n_{mm'}(β) e^{-im'γ}` in ACN order.
///
/// If `f` has coefficients `f_nm`, then `D f` are the coefficients of the
/// rotated function `f(R⁻¹ Ω)`.
pub fn wigner_d_euler(alpha: f64, beta: f64, gamma: f64, order: usize) -> CMatrix {
    let k = channel_count(order);
    let mut d = CMatrix::zeros(k, k);
    for n in 0..=order {
        let small = wigner_small_d(n, beta);
        let dim = 2 * n + 1;
        let ni = n as i64;
        let base = n * n + n;
        for m in -ni..=ni {
            for mp in -ni..=ni {
                let v = small[(m + ni) as usize * dim + (mp + ni) as usize];
                let phase = C64::from_polar(1.0, -(m as f64) * alpha - (mp as f64) * gamma);
                d[((base as i64 + m) as usize, (base as i64 + mp) as usize)] = phase * v;
            }
        }
    }
    d
}

/// Head-rotation operator `D(Δφ, Δθ, 0)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RotationOp {
    pub delta_phi: f64,
    pub delta_theta: f64,
    pub order: usize,
    pub matrix: CMatrix,
}

/// Builds `D(Δφ, Δθ, 0)` up to `order`.
pub fn wigner_d(delta_phi: f64, delta_theta: f64, order: usize) -> RotationOp {
    RotationOp { delta_phi, delta_theta, order, matrix: wigner_d_euler(delta_phi, delta_theta, 0.0, order) }
}

impl RotationOp {
    pub fn is_identity(&self) -> bool {
        self.delta_phi == 0.0 && self.delta_theta == 0.0
    }

    /// The 3×3 rotation `R = Rz(Δφ) Ry(Δθ)` this operator represents.
    pub fn rotation_matrix(&self) -> [[f64; 3]; 3] {
        super::rotation_matrix_zyz(self.delta_phi, self.delta_theta, 0.0)
    }

    /// The inverse rotation; its matrix is the adjoint. The angle fields are
    /// negated, which is exact for pure azimuthal or pure tilt rotations.
    pub fn inverse(&self) -> RotationOp {
        RotationOp {
            delta_phi: -self.delta_phi,
            delta_theta: -self.delta_theta,
            order: self.order,
            matrix: self.matrix.adjoint(),
        }
    }

    fn check(&self, len: usize) -> Result<()> {
        if len != channel_count(self.order) {
            return Err(Error::dim(format!(
                "rotation of order {} applied to {} channels",
                self.order, len
            )));
        }
        Ok(())
    }

    /// `D v`.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.check(v.len())?;
        if self.is_identity() {
            return Ok(v.to_vec());
        }
        Ok(self.block_mul(v, false))
    }

    /// `Dᵀ v`, the counter-rotation applied to tilde-form Ambisonics.
    pub fn apply_transpose(&self, v: &[C64]) -> Result<Vec<C64>> {
        self.check(v.len())?;
        if self.is_identity() {
            return Ok(v.to_vec());
        }
        Ok(self.block_mul(v, true))
    }

    /// `D X` for a channels × columns matrix.
    pub fn apply_matrix(&self, x: &CMatrix) -> Result<CMatrix> {
        self.check(x.nrows())?;
        if self.is_identity() {
            return Ok(x.clone());
        }
        Ok(crate::linalg::matmul(&self.matrix, x))
    }

    /// `Dᵀ X` for a channels × columns matrix.
    pub fn apply_transpose_matrix(&self, x: &CMatrix) -> Result<CMatrix> {
        self.check(x.nrows())?;
        if self.is_identity() {
            return Ok(x.clone());
        }
        Ok(crate::linalg::matmul(&self.matrix.transpose(), x))
    }

    fn block_mul(&self, v: &[C64], transpose: bool) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for n in 0..=self.order {
            let lo = n * n;
            let hi = lo + 2 * n + 1;
            for (i, o) in out.iter_mut().enumerate().take(hi).skip(lo) {
                *o = (lo..hi)
                    .map(|j| if transpose { self.matrix[(j, i)] } else { self.matrix[(i, j)] } * v[j])
                    .sum();
            }
        }
        out
    }
}
