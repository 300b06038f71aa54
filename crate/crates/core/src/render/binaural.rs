use super::ShSignal;
use crate::array::FrequencyGrid;
use crate::error::{Error, Result};
use crate::hrtf::HrtfSh;
use crate::linalg::C64;

/// Ear spectra `p^{l,r}(k)` on a one-sided frequency grid.
#[derive(Debug, Clone, PartialEq)]
pub struct BinauralSpectra {
    pub freqs: FrequencyGrid,
    pub left: Vec<C64>,
    pub right: Vec<C64>,
}

impl BinauralSpectra {
    pub fn new(freqs: FrequencyGrid, left: Vec<C64>, right: Vec<C64>) -> Result<Self> {
        if left.len() != freqs.len() || right.len() != freqs.len() {
            return Err(Error::dim(format!(
                "binaural spectra of {}/{} bins for a {}-bin grid",
                left.len(),
                right.len(),
                freqs.len()
            )));
        }
        Ok(Self { freqs, left, right })
    }

    pub fn silent(freqs: FrequencyGrid) -> Self {
        let z = vec![C64::new(0.0, 0.0); freqs.len()];
        Self { freqs, left: z.clone(), right: z }
    }

    pub fn ear(&self, ear: crate::hrtf::Ear) -> &[C64] {
        match ear {
            crate::hrtf::Ear::Left => &self.left,
            crate::hrtf::Ear::Right => &self.right,
        }
    }
}

/// `p^{l,r}(k) = h_nm^{l,r}(k)ᵀ ã_nm(k)`.
///
/// The operand of higher order is truncated to the lower one, and a plain
/// signal is reindexed to tilde form first.
pub fn render(h: &HrtfSh, a: &ShSignal, freqs: &FrequencyGrid) -> Result<BinauralSpectra> {
    if h.bins() != a.bins() || h.bins() != freqs.len() {
        return Err(Error::dim(format!("HRTF bins {}, signal bins {}, grid {}", h.bins(), a.bins(), freqs.len())));
    }
    let order = h.order.min(a.order);
    let h = h.truncated(order);
    let a = a.truncated(order).to_tilde();
    let dot = |hm: &crate::CMatrix, j: usize| -> C64 { hm.column(j).iter().zip(a.data.column(j).iter()).map(|(x, y)| x * y).sum() };
    let left = (0..freqs.len()).map(|j| dot(&h.left, j)).collect();
    let right = (0..freqs.len()).map(|j| dot(&h.right, j)).collect();
    BinauralSpectra::new(*freqs, left, right)
}
