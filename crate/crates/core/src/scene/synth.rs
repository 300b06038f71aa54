use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::plane_wave::check_source;
use super::{NoiseModel, PlaneWaveScene};
use crate::array::{steering_matrices, ArrayGeometry, FrequencyGrid, MicSpectra, SteeringMatrix};
use crate::error::{Error, Result};
use crate::hrtf::HrtfSet;
use crate::linalg::{CMatrix, C64};
use crate::render::{delay_spectrum, spectrum_to_time, BinauralSpectra, StereoBuffer};
use crate::sh::DirectionGrid;

/// Snapping distance above which a wave is reported.
pub const SNAP_WARNING_DEG: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SnapWarning {
    pub wave: usize,
    pub angle_deg: f64,
}

/// Assignment of scene waves to their nearest grid directions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SnapReport {
    pub grid: String,
    pub indices: Vec<usize>,
    pub max_angle_deg: f64,
    pub warnings: Vec<SnapWarning>,
}

pub fn snap_scene(scene: &PlaneWaveScene, grid: &DirectionGrid) -> SnapReport {
    let snapped: Vec<(usize, f64)> =
        scene.waves.par_iter().map(|w| grid.nearest(&w.direction)).map(|(i, a)| (i, a.to_degrees())).collect();
    let warnings = snapped
        .iter()
        .enumerate()
        .filter(|(_, s)| s.1 > SNAP_WARNING_DEG)
        .map(|(wave, s)| SnapWarning { wave, angle_deg: s.1 })
        .collect();
    SnapReport {
        grid: grid.name.clone(),
        indices: snapped.iter().map(|s| s.0).collect(),
        max_angle_deg: snapped.iter().fold(0.0, |m, s| m.max(s.1)),
        warnings,
    }
}

fn add_noise(x: &mut CMatrix, noise: &NoiseModel) {
    if noise.variance > 0.0 {
        *x += noise.spectra(x.nrows(), x.ncols());
    }
}

/// `x(k) = V(k) s(k) + n(k)` with the array response evaluated at the exact
/// wave directions.
pub fn mic_spectra(
    scene: &PlaneWaveScene,
    geom: &ArrayGeometry,
    freqs: &FrequencyGrid,
    sound_speed: f64,
    noise: &NoiseModel,
    source: Option<&[C64]>,
) -> Result<MicSpectra> {
    check_source(freqs, source)?;
    let mut x = CMatrix::zeros(geom.len(), freqs.len());
    if !scene.is_empty() {
        let grid = DirectionGrid::uniform("scene", scene.waves.iter().map(|w| w.direction).collect())?;
        let vs = steering_matrices(geom, &grid, freqs, sound_speed)?;
        let s = scene.wave_spectra(freqs, source)?;
        for (j, v) in vs.iter().enumerate() {
            let col = &v.entries * s.column(j);
            x.column_mut(j).copy_from(&col);
        }
    }
    add_noise(&mut x, noise);
    Ok(MicSpectra::new(x))
}

/// Wave spectra summed per grid direction, `Q × bins`.
fn grid_amplitudes(
    scene: &PlaneWaveScene,
    snap: &SnapReport,
    q: usize,
    freqs: &FrequencyGrid,
    source: Option<&[C64]>,
) -> Result<CMatrix> {
    let s = scene.wave_spectra(freqs, source)?;
    let mut out = CMatrix::zeros(q, freqs.len());
    for (w, &idx) in snap.indices.iter().enumerate() {
        let mut row = out.row_mut(idx);
        row += s.row(w);
    }
    Ok(out)
}

/// Fast variant of [`mic_spectra`] for large scenes: waves are snapped to
/// the directions of `grid`, whose steering matrices `vs` are reused.
pub fn mic_spectra_on_grid(
    scene: &PlaneWaveScene,
    vs: &[SteeringMatrix],
    grid: &DirectionGrid,
    freqs: &FrequencyGrid,
    noise: &NoiseModel,
    source: Option<&[C64]>,
) -> Result<(MicSpectra, SnapReport)> {
    check_source(freqs, source)?;
    if vs.len() != freqs.len() || vs.iter().any(|v| v.directions() != grid.len()) {
        return Err(Error::dim("steering matrices do not match the grid and frequencies"));
    }
    let snap = snap_scene(scene, grid);
    let s = grid_amplitudes(scene, &snap, grid.len(), freqs, source)?;
    let mics = vs.first().map_or(0, |v| v.mics());
    let mut x = CMatrix::zeros(mics, freqs.len());
    for (j, v) in vs.iter().enumerate() {
        let col = &v.entries * s.column(j);
        x.column_mut(j).copy_from(&col);
    }
    add_noise(&mut x, noise);
    Ok((MicSpectra::new(x), snap))
}

/// Ideal ear signals of a scene together with the snapping record.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceBinaural {
    pub spectra: BinauralSpectra,
    pub snap: SnapReport,
}

/// `p^{l,r}(k) = h^{l,r}(k)ᵀ s(k)` with every wave snapped to the HRTF grid.
pub fn reference_binaural(scene: &PlaneWaveScene, hrtf: &HrtfSet, source: Option<&[C64]>) -> Result<ReferenceBinaural> {
    let freqs = &hrtf.freqs;
    check_source(freqs, source)?;
    let snap = snap_scene(scene, &hrtf.grid);
    let s = grid_amplitudes(scene, &snap, hrtf.directions(), freqs, source)?;
    let ear = |h: &CMatrix| -> Vec<C64> {
        (0..freqs.len()).map(|j| h.column(j).iter().zip(s.column(j).iter()).map(|(a, b)| a * b).sum()).collect()
    };
    Ok(ReferenceBinaural { spectra: BinauralSpectra::new(*freqs, ear(&hrtf.left), ear(&hrtf.right))?, snap })
}

/// Impulse response of the row `q` of each per-channel `Q × bins` response,
/// circularly delayed by `bulk` samples.
fn row_impulse(resp: &CMatrix, q: usize, shift: &[C64], nfft: usize) -> Result<Vec<f64>> {
    let spec: Vec<C64> = resp.row(q).iter().zip(shift).map(|(a, b)| a * b).collect();
    spectrum_to_time(&spec, nfft)
}

/// Sums per-direction impulse responses over the waves of a scene in the
/// time domain. Wave delays are rounded to whole samples.
fn accumulate(
    scene: &PlaneWaveScene,
    snap: &SnapReport,
    responses: &[&CMatrix],
    freqs: &FrequencyGrid,
    bulk_delay: usize,
) -> Result<Vec<Vec<f64>>> {
    let nfft = freqs.nfft;
    let shift = delay_spectrum(nfft, bulk_delay as f64);
    let fs = freqs.sample_rate;
    let len = (scene.max_delay() * fs).round() as usize + nfft;
    let mut used: Vec<usize> = snap.indices.clone();
    used.sort_unstable();
    used.dedup();
    let irs: HashMap<usize, Vec<Vec<f64>>> = used
        .par_iter()
        .map(|&q| Ok((q, responses.iter().map(|r| row_impulse(r, q, &shift, nfft)).collect::<Result<Vec<_>>>()?)))
        .collect::<Result<_>>()?;
    responses
        .par_iter()
        .enumerate()
        .map(|(c, _)| {
            let mut out = vec![0.0; len];
            for (w, &q) in scene.waves.iter().zip(&snap.indices) {
                let start = (w.delay * fs).round() as usize;
                for (o, h) in out[start..start + nfft].iter_mut().zip(&irs[&q][c]) {
                    *o += w.gain * h;
                }
            }
            Ok(out)
        })
        .collect()
}

/// Binaural room impulse response of a scene through an (effective) HRTF
/// set: each wave contributes its snapped direction's response, scaled and
/// delayed.
#[derive(Debug, Clone, PartialEq)]
pub struct Brir {
    pub audio: StereoBuffer,
    /// Samples of bulk delay added to keep acausal filter parts.
    pub latency: usize,
    pub snap: SnapReport,
}

pub fn scene_brir(scene: &PlaneWaveScene, set: &HrtfSet, bulk_delay: usize) -> Result<Brir> {
    if (set.freqs.sample_rate - scene.fs).abs() > 1e-9 {
        return Err(Error::input(format!("scene at {} Hz, HRTF set at {} Hz", scene.fs, set.freqs.sample_rate)));
    }
    if bulk_delay >= set.freqs.nfft {
        return Err(Error::input(format!("bulk delay {bulk_delay} must be below nfft {}", set.freqs.nfft)));
    }
    let snap = snap_scene(scene, &set.grid);
    let mut ch = accumulate(scene, &snap, &[&set.left, &set.right], &set.freqs, bulk_delay)?;
    let right = ch.pop().expect("two channels");
    let left = ch.pop().expect("two channels");
    Ok(Brir { audio: StereoBuffer { sample_rate: scene.fs, left, right }, latency: bulk_delay, snap })
}

/// Microphone impulse responses of a scene, one per microphone, from
/// steering matrices on `grid`.
pub fn mic_impulse_responses(
    scene: &PlaneWaveScene,
    vs: &[SteeringMatrix],
    grid: &DirectionGrid,
    freqs: &FrequencyGrid,
    bulk_delay: usize,
) -> Result<(Vec<Vec<f64>>, SnapReport)> {
    if vs.len() != freqs.len() || vs.iter().any(|v| v.directions() != grid.len()) {
        return Err(Error::dim("steering matrices do not match the grid and frequencies"));
    }
    if (freqs.sample_rate - scene.fs).abs() > 1e-9 {
        return Err(Error::input(format!("scene at {} Hz, grid at {} Hz", scene.fs, freqs.sample_rate)));
    }
    let mics = vs.first().map_or(0, |v| v.mics());
    let per_mic: Vec<CMatrix> = (0..mics)
        .map(|m| CMatrix::from_fn(grid.len(), freqs.len(), |q, j| vs[j].entries[(m, q)]))
        .collect();
    let refs: Vec<&CMatrix> = per_mic.iter().collect();
    let snap = snap_scene(scene, grid);
    Ok((accumulate(scene, &snap, &refs, freqs, bulk_delay)?, snap))
}

impl SnapReport {
    pub fn has_warnings(&self) -> bool {
        !self.warnings.is_empty()
    }
}

