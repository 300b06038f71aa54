use std::path::Path;

use hound::{SampleFormat, WavSpec, WavWriter};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WavFormat {
    Pcm24,
    Float32,
}

/// Outcome of a WAV write.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavInfo {
    pub frames: usize,
    /// Samples that exceeded full scale and were clamped (PCM only).
    pub clipped_samples: usize,
}

/// Writes equally long channels as an interleaved WAV file.
pub fn write_wav(path: &Path, channels: &[&[f64]], sample_rate: u32, format: WavFormat) -> Result<WavInfo> {
    let frames = channels.first().map(|c| c.len()).unwrap_or(0);
    if channels.is_empty() || channels.iter().any(|c| c.len() != frames) {
        return Err(Error::dim("WAV channels must be nonempty and equally long"));
    }
    let spec = match format {
        WavFormat::Pcm24 => WavSpec {
            channels: channels.len() as u16,
            sample_rate,
            bits_per_sample: 24,
            sample_format: SampleFormat::Int,
        },
        WavFormat::Float32 => WavSpec {
            channels: channels.len() as u16,
            sample_rate,
            bits_per_sample: 32,
            sample_format: SampleFormat::Float,
        },
    };
    let mut w = WavWriter::create(path, spec)?;
    let full = (1i32 << 23) - 1;
    let mut clipped = 0;
    for i in 0..frames {
        for c in channels {
            let v = c[i];
            match format {
                WavFormat::Pcm24 => {
                    if v.abs() > 1.0 {
                        clipped += 1;
                    }
                    w.write_sample((v.clamp(-1.0, 1.0) * full as f64).round() as i32)?;
                }
                WavFormat::Float32 => w.write_sample(v as f32)?,
            }
        }
    }
    w.finalize()?;
    Ok(WavInfo { frames, clipped_samples: clipped })
}

/// Reads a WAV file into per-channel buffers scaled to [−1, 1].
pub fn read_wav(path: &Path) -> Result<(u32, Vec<Vec<f64>>)> {
    let mut r = hound::WavReader::open(path)?;
    let spec = r.spec();
    let n = spec.channels as usize;
    let samples: Vec<f64> = match spec.sample_format {
        SampleFormat::Float => r.samples::<f32>().map(|s| s.map(f64::from)).collect::<std::result::Result<_, _>>()?,
        SampleFormat::Int => {
            let scale = (1i64 << (spec.bits_per_sample - 1)) as f64;
            r.samples::<i32>().map(|s| s.map(|v| v as f64 / scale)).collect::<std::result::Result<_, _>>()?
        }
    };
    let mut out = vec![Vec::with_capacity(samples.len() / n.max(1)); n];
    for (i, s) in samples.into_iter().enumerate() {
        out[i % n].push(s);
    }
    Ok((spec.sample_rate, out))
}
