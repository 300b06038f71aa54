use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One-sided DFT frequency grid `f_j = j fs / nfft`, `j = 0..=nfft/2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrequencyGrid {
    pub sample_rate: f64,
    pub nfft: usize,
}

impl FrequencyGrid {
    pub fn new(sample_rate: f64, nfft: usize) -> Result<Self> {
        if !(sample_rate > 0.0 && sample_rate.is_finite()) {
            return Err(Error::input(format!("sample rate {sample_rate} must be positive")));
        }
        if nfft < 2 || nfft % 2 != 0 {
            return Err(Error::input(format!("nfft {nfft} must be even and at least 2")));
        }
        Ok(Self { sample_rate, nfft })
    }

    pub fn len(&self) -> usize {
        self.nfft / 2 + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn freq(&self, bin: usize) -> f64 {
        bin as f64 * self.sample_rate / self.nfft as f64
    }

    pub fn bins(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.freq(j)).collect()
    }

    pub fn nyquist(&self) -> f64 {
        self.sample_rate / 2.0
    }

    /// Wavenumber `k = 2πf / c` of a bin.
    pub fn wavenumber(&self, bin: usize, sound_speed: f64) -> f64 {
        2.0 * std::f64::consts::PI * self.freq(bin) / sound_speed
    }
}
