use serde::{Deserialize, Serialize};

use super::{HrtfSh, Variant};
use crate::array::FrequencyGrid;
use crate::error::{Error, Result};
use crate::linalg::C64;

/// Linear transition `α(f)` from 0 at `f_min` to 1 at `f_max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossfadeSpec {
    pub f_min: f64,
    pub f_max: f64,
}

impl Default for CrossfadeSpec {
    fn default() -> Self {
        Self { f_min: 800.0, f_max: 1300.0 }
    }
}

impl CrossfadeSpec {
    pub fn new(f_min: f64, f_max: f64) -> Result<Self> {
        let s = Self { f_min, f_max };
        if !(f_min > 0.0 && f_min < f_max && f_max.is_finite()) {
            return Err(Error::input(format!("crossfade needs 0 < f_min < f_max, got {f_min}, {f_max}")));
        }
        Ok(s)
    }

    pub fn validate(&self, freqs: &FrequencyGrid) -> Result<()> {
        Self::new(self.f_min, self.f_max)?;
        if self.f_max >= freqs.nyquist() {
            return Err(Error::input(format!("f_max {} is not below Nyquist {}", self.f_max, freqs.nyquist())));
        }
        Ok(())
    }

    pub fn alpha(&self, f: f64) -> f64 {
        if f <= self.f_min {
            0.0
        } else if f >= self.f_max {
            1.0
        } else {
            (f - self.f_min) / (self.f_max - self.f_min)
        }
    }

    pub fn alphas(&self, freqs: &FrequencyGrid) -> Vec<f64> {
        freqs.bins().into_iter().map(|f| self.alpha(f)).collect()
    }
}

/// `(1 − α) h_lo + α h_hi` per bin.
pub fn crossfade_combine(
    h_lo: &HrtfSh,
    h_hi: &HrtfSh,
    fade: &CrossfadeSpec,
    freqs: &FrequencyGrid,
) -> Result<HrtfSh> {
    if h_lo.order != h_hi.order {
        return Err(Error::dim(format!("crossfade of orders {} and {}", h_lo.order, h_hi.order)));
    }
    if h_lo.bins() != h_hi.bins() || h_lo.bins() != freqs.len() {
        return Err(Error::dim("crossfade operands have different bin counts"));
    }
    let mut left = h_lo.left.clone();
    let mut right = h_lo.right.clone();
    for (j, a) in fade.alphas(freqs).into_iter().enumerate() {
        if a == 0.0 {
            continue;
        }
        for (out, hi) in [(&mut left, &h_hi.left), (&mut right, &h_hi.right)] {
            let mixed = out.column(j) * C64::new(1.0 - a, 0.0) + hi.column(j) * C64::new(a, 0.0);
            out.column_mut(j).copy_from(&mixed);
        }
    }
    Ok(HrtfSh { order: h_lo.order, left, right, variant: Variant::Crossfaded, convergence: h_hi.convergence.clone() })
}
