use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::render::time_to_spectrum;

/// ERB filterbank layout: `bands` centre frequencies evenly spaced on the
/// ERB-number scale between `f_lo` and `f_hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ErbSpec {
    pub bands: usize,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Default for ErbSpec {
    fn default() -> Self {
        Self { bands: 42, f_lo: 20.0, f_hi: 8000.0 }
    }
}

/// Rounded-exponential magnitude responses on the ERB scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ErbBank {
    pub spec: ErbSpec,
    pub centers: Vec<f64>,
}

fn erb_number(f: f64) -> f64 {
    21.4 * (1.0 + 0.00437 * f).log10()
}

fn erb_number_inv(e: f64) -> f64 {
    (10f64.powf(e / 21.4) - 1.0) / 0.00437
}

/// Equivalent rectangular bandwidth at `f` Hz.
pub fn erb_width(f: f64) -> f64 {
    24.7 * (0.00437 * f + 1.0)
}

impl ErbBank {
    pub fn new(spec: ErbSpec) -> Result<Self> {
        if spec.bands < 2 || !(spec.f_lo > 0.0 && spec.f_lo < spec.f_hi) {
            return Err(Error::input(format!("invalid ERB bank {spec:?}")));
        }
        let (e0, e1) = (erb_number(spec.f_lo), erb_number(spec.f_hi));
        let step = (e1 - e0) / (spec.bands - 1) as f64;
        let centers = (0..spec.bands).map(|i| erb_number_inv(e0 + step * i as f64)).collect();
        Ok(Self { spec, centers })
    }

    /// `|H_i(f)| = (1 + p g) e^{−p g}` with `p = 4 f_c / ERB(f_c)`, `g = |f − f_c| / f_c`.
    pub fn response(&self, band: usize, f: f64) -> f64 {
        let fc = self.centers[band];
        let p = 4.0 * fc / erb_width(fc);
        let g = (f - fc).abs() / fc;
        (1.0 + p * g) * (-p * g).exp()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IldResult {
    /// Mean over bands, dB.
    pub mean_db: f64,
    pub bands_db: Vec<f64>,
}

/// Interaural level difference `10 log10(E_l / E_r)` per ERB band with
/// `E = Σ_f |H_i(f)| |X(f)|²`, and its mean over bands.
pub fn ild(left: &[f64], right: &[f64], fs: f64, bank: &ErbBank) -> Result<IldResult> {
    if left.len() != right.len() {
        return Err(Error::dim(format!("ear buffers of {} and {} samples", left.len(), right.len())));
    }
    if !(fs >= 16_000.0) {
        return Err(Error::input(format!("sample rate {fs} below 16 kHz")));
    }
    let nfft = left.len().next_power_of_two().max(2);
    let xl = time_to_spectrum(left, nfft);
    let xr = time_to_spectrum(right, nfft);
    let freqs: Vec<f64> = (0..xl.len()).map(|k| k as f64 * fs / nfft as f64).collect();
    let mut bands_db = Vec::with_capacity(bank.centers.len());
    for b in 0..bank.centers.len() {
        let (mut el, mut er) = (0.0, 0.0);
        for (k, &f) in freqs.iter().enumerate() {
            let w = bank.response(b, f);
            el += w * xl[k].norm_sqr();
            er += w * xr[k].norm_sqr();
        }
        if el == 0.0 || er == 0.0 {
            return Err(Error::Undefined(format!("zero energy in ERB band {b}")));
        }
        bands_db.push(10.0 * (el / er).log10());
    }
    let mean_db = bands_db.iter().sum::<f64>() / bands_db.len() as f64;
    Ok(IldResult { mean_db, bands_db })
}
