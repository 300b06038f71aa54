use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};

/// White sensor noise `n(k)`, i.i.d. over microphones and bins.
///
/// Each bin draws from its own ChaCha stream keyed by `(seed, bin)`, so the
/// values do not depend on evaluation order or thread count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
pub struct NoiseModel {
    /// `σ_n²`, the per-bin complex variance.
    pub variance: f64,
    pub seed: u64,
}

impl NoiseModel {
    pub fn new(variance: f64, seed: u64) -> Result<Self> {
        if !(variance >= 0.0) || !variance.is_finite() {
            return Err(Error::input(format!("noise variance {variance} must be finite and ≥ 0")));
        }
        Ok(Self { variance, seed })
    }

    pub fn silent() -> Self {
        Self::default()
    }

    fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }

    /// Circular complex Gaussian noise for one bin; `real` bins (DC and
    /// Nyquist) get real noise of the same variance.
    pub fn bin(&self, mics: usize, bin: usize, real: bool) -> Vec<C64> {
        if self.variance == 0.0 {
            return vec![C64::new(0.0, 0.0); mics];
        }
        let mut rng = self.rng(bin as u64);
        (0..mics)
            .map(|_| {
                let a: f64 = rng.sample(StandardNormal);
                let b: f64 = rng.sample(StandardNormal);
                if real {
                    C64::new(a * self.variance.sqrt(), 0.0)
                } else {
                    C64::new(a, b) * (self.variance / 2.0).sqrt()
                }
            })
            .collect()
    }

    /// Noise for every bin of a one-sided grid, `mics × bins`.
    pub fn spectra(&self, mics: usize, bins: usize) -> CMatrix {
        let mut out = CMatrix::zeros(mics, bins);
        if self.variance == 0.0 {
            return out;
        }
        for j in 0..bins {
            let real = j == 0 || j + 1 == bins;
            out.column_mut(j).iter_mut().zip(self.bin(mics, j, real)).for_each(|(o, v)| *o = v);
        }
        out
    }

    /// White Gaussian time-domain noise with per-sample variance `σ_n²`,
    /// one stream per channel.
    pub fn time(&self, channels: usize, len: usize) -> Vec<Vec<f64>> {
        let sd = self.variance.sqrt();
        (0..channels)
            .map(|c| {
                if sd == 0.0 {
                    return vec![0.0; len];
                }
                let mut rng = self.rng(u64::MAX - c as u64);
                (0..len).map(|_| sd * rng.sample::<f64, _>(StandardNormal)).collect()
            })
            .collect()
    }
}
