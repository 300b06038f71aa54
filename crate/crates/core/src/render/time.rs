use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use super::BinauralSpectra;
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Two-channel real buffer.
#[derive(Debug, Clone, PartialEq)]
pub struct StereoBuffer {
    pub sample_rate: f64,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

impl StereoBuffer {
    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn peak(&self) -> f64 {
        self.left.iter().chain(&self.right).fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Filtered audio plus the bookkeeping of the optional normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct RenderedAudio {
    pub audio: StereoBuffer,
    /// Gain applied by peak normalization (1 when not requested).
    pub gain: f64,
    /// True when the un-normalized output exceeds full scale.
    pub clipped: bool,
}

/// Inverse real DFT of a one-sided spectrum of `nfft/2 + 1` bins.
///
/// The spectrum is completed Hermitian-symmetrically, so the imaginary
/// parts of the DC and Nyquist bins are ignored.
pub fn spectrum_to_time(bins: &[C64], nfft: usize) -> Result<Vec<f64>> {
    if bins.len() != nfft / 2 + 1 || nfft % 2 != 0 {
        return Err(Error::dim(format!("{} bins do not match nfft {nfft}", bins.len())));
    }
    let mut full = vec![C64::new(0.0, 0.0); nfft];
    full[0] = C64::new(bins[0].re, 0.0);
    full[nfft / 2] = C64::new(bins[nfft / 2].re, 0.0);
    for k in 1..nfft / 2 {
        full[k] = bins[k];
        full[nfft - k] = bins[k].conj();
    }
    FftPlanner::new().plan_fft_inverse(nfft).process(&mut full);
    let scale = 1.0 / nfft as f64;
    let peak = full.iter().fold(0.0f64, |m, z| m.max(z.re.abs()));
    let residue = full.iter().fold(0.0f64, |m, z| m.max(z.im.abs()));
    debug_assert!(residue <= 1e-12 * peak.max(1.0) * nfft as f64, "imaginary residue {residue}");
    Ok(full.into_iter().map(|z| z.re * scale).collect())
}

/// One-sided forward DFT of `x` zero-padded (or truncated) to `nfft`.
pub fn time_to_spectrum(x: &[f64], nfft: usize) -> Vec<C64> {
    let mut buf: Vec<C64> = (0..nfft).map(|i| C64::new(x.get(i).copied().unwrap_or(0.0), 0.0)).collect();
    FftPlanner::new().plan_fft_forward(nfft).process(&mut buf);
    buf.truncate(nfft / 2 + 1);
    buf
}

/// `exp(−i 2π f τ)` on the bins of a grid, `τ` in samples.
pub fn delay_spectrum(nfft: usize, delay_samples: f64) -> Vec<C64> {
    (0..=nfft / 2)
        .map(|k| C64::from_polar(1.0, -2.0 * std::f64::consts::PI * k as f64 * delay_samples / nfft as f64))
        .collect()
}

struct Ola {
    block: usize,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    ir_spectrum: Vec<C64>,
}

impl Ola {
    fn new(ir: &[f64]) -> Self {
        let block = ir.len().next_power_of_two().max(64);
        let n = 2 * block;
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let ifft = planner.plan_fft_inverse(n);
        let mut h: Vec<C64> = (0..n).map(|i| C64::new(ir.get(i).copied().unwrap_or(0.0), 0.0)).collect();
        fft.process(&mut h);
        Self { block, fft, ifft, ir_spectrum: h }
    }

    fn run(&self, x: &[f64], ir_len: usize) -> Vec<f64> {
        let n = 2 * self.block;
        let out_len = (x.len() + ir_len).saturating_sub(1);
        let mut out = vec![0.0; out_len + n];
        let mut buf = vec![C64::new(0.0, 0.0); n];
        for (b, chunk) in x.chunks(self.block).enumerate() {
            buf.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
            for (z, &v) in buf.iter_mut().zip(chunk) {
                z.re = v;
            }
            self.fft.process(&mut buf);
            for (z, h) in buf.iter_mut().zip(&self.ir_spectrum) {
                *z *= h;
            }
            self.ifft.process(&mut buf);
            let start = b * self.block;
            for (o, z) in out[start..start + n].iter_mut().zip(&buf) {
                *o += z.re / n as f64;
            }
        }
        out.truncate(out_len);
        out
    }
}

/// Linear convolution by block overlap-add; output length
/// `x.len() + ir.len() − 1`.
pub fn ola_convolve(x: &[f64], ir: &[f64]) -> Vec<f64> {
    if x.is_empty() || ir.is_empty() {
        return vec![];
    }
    Ola::new(ir).run(x, ir.len())
}

/// Filters a mono source with the binaural impulse responses of `b`
/// (length `nfft` each). The output has `source.len() + nfft − 1` samples
/// per ear. With `normalize`, both ears are scaled by one gain so the
/// peak is 0.99 of full scale.
pub fn filter_audio(source: &[f64], b: &BinauralSpectra, normalize: bool) -> Result<RenderedAudio> {
    let nfft = b.freqs.nfft;
    let irl = spectrum_to_time(&b.left, nfft)?;
    let irr = spectrum_to_time(&b.right, nfft)?;
    let (left, right) = rayon::join(|| ola_convolve(source, &irl), || ola_convolve(source, &irr));
    let mut audio = StereoBuffer { sample_rate: b.freqs.sample_rate, left, right };
    let peak = audio.peak();
    let clipped = peak > 1.0;
    let mut gain = 1.0;
    if normalize && peak > 0.0 {
        gain = 0.99 / peak;
        audio.left.iter_mut().chain(audio.right.iter_mut()).for_each(|x| *x *= gain);
    }
    Ok(RenderedAudio { audio, gain, clipped })
}

impl BinauralSpectra {
    /// Stereo impulse responses of length `nfft`.
    pub fn to_time(&self) -> Result<StereoBuffer> {
        Ok(StereoBuffer {
            sample_rate: self.freqs.sample_rate,
            left: spectrum_to_time(&self.left, self.freqs.nfft)?,
            right: spectrum_to_time(&self.right, self.freqs.nfft)?,
        })
    }
}
