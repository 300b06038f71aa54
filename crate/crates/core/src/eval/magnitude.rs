use serde::Serialize;

use super::db10;
use crate::array::{EncodingFilter, SteeringMatrix};
use crate::error::{Error, Result};
use crate::sh::{acn_inverse, sh_matrix, DirectionGrid};

/// Effective and ideal channel magnitudes per bin.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MagnitudeReport {
    pub freqs: Vec<f64>,
    pub channels: Vec<(usize, i64)>,
    /// `ξ_mag = 10 log10 ‖c_nmᴴ V‖²`, `[bin][channel]`.
    pub xi_mag: Vec<Vec<f64>>,
    /// `ξ_ideal = 10 log10 ‖y_nm‖²` per channel (frequency independent).
    pub xi_ideal: Vec<f64>,
}

impl MagnitudeReport {
    /// `ξ_ideal − ξ_mag` in dB.
    pub fn attenuation(&self, bin: usize, channel: usize) -> f64 {
        self.xi_ideal[channel] - self.xi_mag[bin][channel]
    }
}

pub fn magnitude_metrics(filter: &EncodingFilter, vs: &[SteeringMatrix], grid: &DirectionGrid) -> Result<MagnitudeReport> {
    if vs.len() != filter.bins() {
        return Err(Error::dim(format!("{} steering matrices for {} filter bins", vs.len(), filter.bins())));
    }
    if let Some(v) = vs.iter().find(|v| v.directions() != grid.len()) {
        return Err(Error::dim(format!("steering has {} directions, grid {}", v.directions(), grid.len())));
    }
    let y = sh_matrix(grid, filter.order).entries;
    let k = filter.channels();
    let xi_ideal = (0..k).map(|c| db10(y.column(c).norm_squared())).collect();
    let xi_mag = vs
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let gains = filter.effective_gains(j, v);
            (0..k).map(|c| db10(gains.row(c).norm_squared())).collect()
        })
        .collect();
    Ok(MagnitudeReport {
        freqs: filter.freqs.bins(),
        channels: (0..k).map(acn_inverse).collect(),
        xi_mag,
        xi_ideal,
    })
}
