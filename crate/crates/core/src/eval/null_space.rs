use serde::Serialize;

use super::db10;
use crate::array::{FrequencyGrid, SteeringMatrix};
use crate::error::{Error, Result};
use crate::linalg::{column_space, norm_sq, CMatrix, CVector, C64};
use crate::sh::{acn_inverse, channel_count, sh_matrix, DirectionGrid};

/// Encodability threshold TH.
pub const THRESHOLD_DB: f64 = -10.0;
pub const DEFAULT_SVD_REL_TOL: f64 = 1e-3;

/// Fraction of `y` lying in the null space of `Vᴴ`, in dB.
///
/// The row space of `Vᴴ` is spanned by the left singular vectors of `Vᴴ`
/// with `σ > tol · σ_max`; the rest is the numerical null space `V₀`.
pub fn null_space_metric(v: &SteeringMatrix, y: &[C64], svd_rel_tol: f64) -> Result<f64> {
    let basis = column_space(&v.entries.adjoint(), svd_rel_tol);
    null_space_with_basis(&basis, y)
}

fn null_space_with_basis(basis: &CMatrix, y: &[C64]) -> Result<f64> {
    if basis.nrows() != y.len() {
        return Err(Error::dim(format!("target of length {} for {} directions", y.len(), basis.nrows())));
    }
    let total = norm_sq(y.iter().copied());
    if total == 0.0 {
        return Err(Error::Undefined("null-space metric of a zero target".into()));
    }
    let y = CVector::from_column_slice(y);
    let residual = &y - basis * (basis.adjoint() * &y);
    Ok(db10(norm_sq(residual.iter().copied()) / total).min(0.0))
}

/// `ξ_null` per bin and SH channel.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NullSpaceReport {
    pub freqs: Vec<f64>,
    /// `(n, m)` of each channel column.
    pub channels: Vec<(usize, i64)>,
    /// `values[bin][channel]` in dB.
    pub values: Vec<Vec<f64>>,
    pub threshold_db: f64,
    pub svd_rel_tol: f64,
}

impl NullSpaceReport {
    /// Channels with `ξ_null ≤ TH` at a bin.
    pub fn encodable_count(&self, bin: usize) -> usize {
        self.values[bin].iter().filter(|&&v| v <= self.threshold_db).count()
    }
}

/// `ξ_null` for every channel up to `order` at every bin.
pub fn null_space_report(
    vs: &[SteeringMatrix],
    grid: &DirectionGrid,
    freqs: &FrequencyGrid,
    order: usize,
    svd_rel_tol: f64,
) -> Result<NullSpaceReport> {
    if !(svd_rel_tol > 0.0 && svd_rel_tol < 1.0) {
        return Err(Error::input(format!("svd_rel_tol must be in (0, 1), got {svd_rel_tol}")));
    }
    if vs.len() != freqs.len() {
        return Err(Error::dim("steering matrices do not match the frequency grid"));
    }
    use rayon::prelude::*;
    let y = sh_matrix(grid, order).entries;
    let k = channel_count(order);
    let values: Result<Vec<Vec<f64>>> = vs
        .par_iter()
        .map(|v| {
            let basis = column_space(&v.entries.adjoint(), svd_rel_tol);
            (0..k)
                .map(|c| null_space_with_basis(&basis, y.column(c).as_slice()))
                .collect()
        })
        .collect();
    Ok(NullSpaceReport {
        freqs: freqs.bins(),
        channels: (0..k).map(acn_inverse).collect(),
        values: values?,
        threshold_db: THRESHOLD_DB,
        svd_rel_tol,
    })
}
