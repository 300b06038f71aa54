use std::f64::consts::PI;

use rayon::prelude::*;

use super::{Direction, DirectionGrid};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

/// ACN channel index `n² + n + m`.
pub fn acn_index(n: usize, m: i64) -> Result<usize> {
    if m.unsigned_abs() as usize > n {
        return Err(Error::ShIndex { n: n as i64, m });
    }
    Ok(((n * n + n) as i64 + m) as usize)
}

/// Inverse of [`acn_index`].
pub fn acn_inverse(index: usize) -> (usize, i64) {
    let n = (index as f64).sqrt() as usize;
    // guard against floating rounding at perfect squares
    let n = if (n + 1) * (n + 1) <= index { n + 1 } else if n * n > index { n - 1 } else { n };
    (n, index as i64 - (n * n + n) as i64)
}

/// Number of channels `(N+1)²` for order `N`.
pub fn channel_count(order: usize) -> usize {
    (order + 1) * (order + 1)
}

/// Order `N` such that `(N+1)² == channels`, if any.
pub fn order_from_channels(channels: usize) -> Option<usize> {
    let n = (channels as f64).sqrt().round() as usize;
    (n >= 1 && n * n == channels).then(|| n - 1)
}

/// Fully normalized associated Legendre values `P̄_nm(cos θ)` for `0 ≤ m ≤ n ≤ N`,
/// including the Condon–Shortley phase and the `1/√(2π)` azimuthal factor, so
/// that `Y_nm = P̄_nm e^{imφ}`. Stored at `n(n+1)/2 + m`.
fn normalized_legendre(order: usize, cos_t: f64, sin_t: f64) -> Vec<f64> {
    let tri = |n: usize, m: usize| n * (n + 1) / 2 + m;
    let mut p = vec![0.0; (order + 1) * (order + 2) / 2];
    p[0] = 1.0 / (4.0 * PI).sqrt();
    for m in 1..=order {
        let mf = m as f64;
        p[tri(m, m)] = -((2.0 * mf + 1.0) / (2.0 * mf)).sqrt() * sin_t * p[tri(m - 1, m - 1)];
    }
    for m in 0..order {
        p[tri(m + 1, m)] = (2.0 * m as f64 + 3.0).sqrt() * cos_t * p[tri(m, m)];
    }
    for m in 0..=order {
        let mf = m as f64;
        for n in (m + 2)..=order {
            let nf = n as f64;
            let a = ((4.0 * nf * nf - 1.0) / (nf * nf - mf * mf)).sqrt();
            let b = (((nf - 1.0) * (nf - 1.0) - mf * mf) / (4.0 * (nf - 1.0) * (nf - 1.0) - 1.0)).sqrt();
            p[tri(n, m)] = a * (cos_t * p[tri(n - 1, m)] - b * p[tri(n - 2, m)]);
        }
    }
    p
}

/// `Y_nm(θ, φ)` for all channels up to `order`, in ACN order.
pub fn sh_vector(dir: &Direction, order: usize) -> Vec<C64> {
    let (st, ct) = dir.theta.sin_cos();
    let p = normalized_legendre(order, ct, st);
    let mut out = vec![C64::new(0.0, 0.0); channel_count(order)];
    for n in 0..=order {
        let base = n * n + n;
        for m in 0..=n {
            let e = C64::from_polar(1.0, m as f64 * dir.phi);
            let y = e * p[n * (n + 1) / 2 + m];
            out[base + m] = y;
            if m > 0 {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                out[base - m] = y.conj() * sign;
            }
        }
    }
    out
}

/// The SH matrix `Y` of a grid: `Q × (N+1)²`, row `q` holds `Y_nm(Ω_q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ShMatrix {
    pub order: usize,
    pub entries: CMatrix,
}

impl ShMatrix {
    pub fn channels(&self) -> usize {
        channel_count(self.order)
    }

    pub fn rows(&self) -> usize {
        self.entries.nrows()
    }

    /// Column `acn` as a vector of length Q (`y_nm` in the paper's notation).
    pub fn column(&self, acn: usize) -> Vec<C64> {
        self.entries.column(acn).iter().copied().collect()
    }

    /// The same matrix restricted to orders `0..=order`.
    pub fn truncated(&self, order: usize) -> ShMatrix {
        let order = order.min(self.order);
        ShMatrix { order, entries: self.entries.columns(0, channel_count(order)).into_owned() }
    }
}

/// Evaluates the SH basis on every grid direction.
pub fn sh_matrix(grid: &DirectionGrid, order: usize) -> ShMatrix {
    let k = channel_count(order);
    let rows: Vec<Vec<C64>> = grid.directions().par_iter().map(|d| sh_vector(d, order)).collect();
    let entries = CMatrix::from_fn(rows.len(), k, |q, j| rows[q][j]);
    ShMatrix { order, entries }
}
