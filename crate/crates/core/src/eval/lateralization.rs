use rayon::prelude::*;
use serde::Serialize;

use super::{ild, itd, ErbBank, ErbSpec};
use crate::array::{steering_matrices, ArrayGeometry, EncodingFilter, FrequencyGrid};
use crate::error::{Error, Result};
use crate::hrtf::{HrtfModel, HrtfSh};
use crate::linalg::{matmul, CMatrix};
use crate::render::{delay_spectrum, spectrum_to_time};
use crate::sh::{sh_matrix, wigner_d, Direction, DirectionGrid, RotationOp};

/// A binaural reproduction chain that can be probed with single plane waves.
pub trait BinauralMethod: Sync {
    /// Ear spectra for unit plane waves from each direction:
    /// `dirs.len() × bins` per ear.
    fn responses(&self, dirs: &[Direction], freqs: &FrequencyGrid) -> Result<(CMatrix, CMatrix)>;
}

fn inverse_rotated(dirs: &[Direction], rotation: Option<&RotationOp>) -> Vec<Direction> {
    match rotation {
        Some(rot) if !rot.is_identity() => {
            let r = rot.rotation_matrix();
            let inv = [[r[0][0], r[1][0], r[2][0]], [r[0][1], r[1][1], r[2][1]], [r[0][2], r[1][2], r[2][2]]];
            dirs.iter().map(|d| d.rotated(&inv)).collect()
        }
        _ => dirs.to_vec(),
    }
}

fn rotated_coeffs(h: &HrtfSh, order: usize, rotation: Option<&RotationOp>) -> Result<HrtfSh> {
    let h = h.truncated(order);
    match rotation {
        Some(r) if !r.is_identity() => h.rotated(&wigner_d(r.delta_phi, r.delta_theta, h.order)),
        _ => Ok(h),
    }
}

/// Direct HRTF lookup for a (possibly rotated) head.
pub struct ReferenceMethod<'a> {
    pub model: &'a dyn HrtfModel,
    pub rotation: Option<RotationOp>,
}

impl BinauralMethod for ReferenceMethod<'_> {
    fn responses(&self, dirs: &[Direction], freqs: &FrequencyGrid) -> Result<(CMatrix, CMatrix)> {
        self.model.evaluate(&inverse_rotated(dirs, self.rotation.as_ref()), freqs)
    }
}

/// Ideal order-limited Ambisonics rendered with SH-domain HRTFs.
pub struct IdealAmbisonicsMethod {
    pub hrtf: HrtfSh,
    pub order: usize,
    pub rotation: Option<RotationOp>,
}

impl BinauralMethod for IdealAmbisonicsMethod {
    fn responses(&self, dirs: &[Direction], freqs: &FrequencyGrid) -> Result<(CMatrix, CMatrix)> {
        self.hrtf.check_bins(freqs)?;
        let h = rotated_coeffs(&self.hrtf, self.order, self.rotation.as_ref())?;
        // ã_nm of a unit plane wave is Y_nm(Ω), so p = Σ h_nm Y_nm(Ω)
        let y = sh_matrix(&DirectionGrid::uniform("probe", dirs.to_vec())?, h.order).entries;
        Ok((matmul(&y, &h.left), matmul(&y, &h.right)))
    }
}

/// Array capture, ASM encoding and SH-domain HRTF rendering.
pub struct AsmMethod {
    pub geometry: ArrayGeometry,
    pub filter: EncodingFilter,
    pub hrtf: HrtfSh,
    pub rotation: Option<RotationOp>,
    pub sound_speed: f64,
}

impl BinauralMethod for AsmMethod {
    fn responses(&self, dirs: &[Direction], freqs: &FrequencyGrid) -> Result<(CMatrix, CMatrix)> {
        self.hrtf.check_bins(freqs)?;
        if self.filter.bins() != freqs.len() {
            return Err(Error::dim("filter bins do not match the frequency grid"));
        }
        let h = rotated_coeffs(&self.hrtf, self.filter.order, self.rotation.as_ref())?;
        let probe = DirectionGrid::uniform("probe", dirs.to_vec())?;
        let vs = steering_matrices(&self.geometry, &probe, freqs, self.sound_speed)?;
        let mut left = CMatrix::zeros(dirs.len(), freqs.len());
        let mut right = CMatrix::zeros(dirs.len(), freqs.len());
        for (j, v) in vs.iter().enumerate() {
            let e = self.filter.reproduction(j, v);
            let pl = e.transpose() * h.left.column(j);
            let pr = e.transpose() * h.right.column(j);
            left.column_mut(j).copy_from(&pl);
            right.column_mut(j).copy_from(&pr);
        }
        Ok((left, right))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepOptions {
    /// Number of azimuths, evenly spaced from 0°.
    pub azimuths: usize,
    /// Colatitude of the probing plane waves, radians.
    pub theta: f64,
    /// Bulk delay applied before the inverse DFT so that acausal parts of
    /// the responses do not wrap around; defaults to `nfft / 8`.
    pub bulk_delay: Option<usize>,
    pub erb: ErbSpec,
}

impl Default for SweepOptions {
    fn default() -> Self {
        Self { azimuths: 360, theta: std::f64::consts::FRAC_PI_2, bulk_delay: None, erb: ErbSpec::default() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LateralizationRow {
    pub azimuth_deg: f64,
    pub itd: f64,
    pub itd_ref: f64,
    pub itd_error: f64,
    pub ild: f64,
    pub ild_ref: f64,
    pub ild_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LateralizationReport {
    pub rotation_deg: f64,
    pub rows: Vec<LateralizationRow>,
}

/// ITD and ILD of `method` against `reference` for plane waves on a ring of
/// azimuths.
pub fn lateralization_sweep(
    method: &dyn BinauralMethod,
    reference: &dyn BinauralMethod,
    freqs: &FrequencyGrid,
    rotation_deg: f64,
    opts: &SweepOptions,
) -> Result<LateralizationReport> {
    let bank = ErbBank::new(opts.erb)?;
    let step = 360.0 / opts.azimuths as f64;
    let az: Vec<f64> = (0..opts.azimuths).map(|i| i as f64 * step).collect();
    let dirs: Vec<Direction> = az.iter().map(|a| Direction::new(opts.theta, a.to_radians())).collect::<Result<_>>()?;
    let (ml, mr) = method.responses(&dirs, freqs)?;
    let (rl, rr) = reference.responses(&dirs, freqs)?;
    let delay = delay_spectrum(freqs.nfft, opts.bulk_delay.unwrap_or(freqs.nfft / 8) as f64);
    let fs = freqs.sample_rate;
    let cues = |l: &CMatrix, r: &CMatrix, i: usize| -> Result<(f64, f64)> {
        let to_ir = |m: &CMatrix| -> Result<Vec<f64>> {
            let spec: Vec<_> = m.row(i).iter().zip(&delay).map(|(a, b)| a * b).collect();
            spectrum_to_time(&spec, freqs.nfft)
        };
        let (xl, xr) = (to_ir(l)?, to_ir(r)?);
        Ok((itd(&xl, &xr, fs)?, ild(&xl, &xr, fs, &bank)?.mean_db))
    };
    let rows: Result<Vec<LateralizationRow>> = (0..dirs.len())
        .into_par_iter()
        .map(|i| {
            let (t, l) = cues(&ml, &mr, i)?;
            let (tr, lr) = cues(&rl, &rr, i)?;
            Ok(LateralizationRow {
                azimuth_deg: az[i],
                itd: t,
                itd_ref: tr,
                itd_error: (t - tr).abs(),
                ild: l,
                ild_ref: lr,
                ild_error: (l - lr).abs(),
            })
        })
        .collect();
    Ok(LateralizationReport { rotation_deg, rows: rows? })
}
