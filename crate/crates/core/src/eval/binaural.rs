use serde::Serialize;

use crate::array::{EncodingFilter, SteeringMatrix};
use crate::error::{Error, Result};
use crate::hrtf::{CrossfadeSpec, Ear, HrtfSet, HrtfSh};
use crate::linalg::{matmul, CMatrix};
use crate::sh::{wigner_d, RotationOp};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EarErrors {
    /// Complex NMSE `ε_Bin`.
    pub bin: f64,
    /// Magnitude NMSE `ε_Bin^Mag`.
    pub mag: f64,
    /// `(1 − α) ε_Bin + α ε_Bin^Mag`.
    pub comb: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinauralErrorRow {
    pub freq: f64,
    pub alpha: f64,
    pub left: EarErrors,
    pub right: EarErrors,
}

impl BinauralErrorRow {
    pub fn ear(&self, ear: Ear) -> &EarErrors {
        match ear {
            Ear::Left => &self.left,
            Ear::Right => &self.right,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BinauralErrorReport {
    /// `(Δφ, Δθ)` in degrees.
    pub rotation_deg: (f64, f64),
    pub rows: Vec<BinauralErrorRow>,
}

/// Binaural reproduction errors of `h_nm` through the array encoder.
///
/// The reproduction at bin `k` is `(D h_nm)ᵀ C̃ᴴ V` over the grid and is
/// compared with `h_ref`, which must already hold the reference HRTFs for
/// the rotated head (see [`crate::hrtf::reference_set`]).
pub fn binaural_errors(
    h_nm: &HrtfSh,
    filter: &EncodingFilter,
    vs: &[SteeringMatrix],
    h_ref: &HrtfSet,
    rotation: Option<&RotationOp>,
    fade: &CrossfadeSpec,
) -> Result<BinauralErrorReport> {
    let order = filter.order;
    if h_nm.order < order {
        return Err(Error::dim(format!("HRTF order {} below filter order {order}", h_nm.order)));
    }
    if h_nm.bins() != filter.bins() || vs.len() != filter.bins() || h_ref.bins() != filter.bins() {
        return Err(Error::dim("HRTF, filter, steering and reference bins differ"));
    }
    if vs.iter().any(|v| v.directions() != h_ref.directions()) {
        return Err(Error::dim("steering directions do not match the reference grid"));
    }
    let h = h_nm.truncated(order);
    let (h, rot_deg) = match rotation {
        Some(r) if !r.is_identity() => {
            let r = if r.order == order { r.clone() } else { wigner_d(r.delta_phi, r.delta_theta, order) };
            (h.rotated(&r)?, (r.delta_phi.to_degrees(), r.delta_theta.to_degrees()))
        }
        _ => (h, (0.0, 0.0)),
    };
    let freqs = filter.freqs.bins();
    let rows: Result<Vec<BinauralErrorRow>> = vs
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let alpha = fade.alpha(freqs[j]);
            // row vector of reproduced ear responses over directions: h_nmᵀ C̃ᴴ V
            let e = filter.reproduction(j, v);
            let ear = |coeffs: &CMatrix, reference: &CMatrix| -> Result<EarErrors> {
                let hc = coeffs.column(j).transpose().into_owned();
                let p = matmul(&CMatrix::from_row_slice(1, hc.len(), hc.as_slice()), &e);
                let r = reference.column(j);
                let denom = r.norm_squared();
                if denom == 0.0 {
                    return Err(Error::Undefined(format!("reference HRTF is zero at bin {j}")));
                }
                let (mut eb, mut em) = (0.0, 0.0);
                for (x, y) in p.iter().zip(r.iter()) {
                    eb += (x - y).norm_sqr();
                    em += (x.norm() - y.norm()).powi(2);
                }
                let (eb, em) = (eb / denom, em / denom);
                Ok(EarErrors { bin: eb, mag: em, comb: (1.0 - alpha) * eb + alpha * em })
            };
            Ok(BinauralErrorRow {
                freq: freqs[j],
                alpha,
                left: ear(&h.left, &h_ref.left)?,
                right: ear(&h.right, &h_ref.right)?,
            })
        })
        .collect();
    Ok(BinauralErrorReport { rotation_deg: rot_deg, rows: rows? })
}
