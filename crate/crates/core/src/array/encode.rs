use super::EncodingFilter;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::render::ShSignal;
use crate::sh::{acn_inverse, order_from_channels};

/// Microphone spectra `x(k)`: `M × bins`, one column per frequency bin.
#[derive(Debug, Clone, PartialEq)]
pub struct MicSpectra {
    pub data: CMatrix,
}

impl MicSpectra {
    pub fn new(data: CMatrix) -> Self {
        Self { data }
    }

    pub fn zeros(mics: usize, bins: usize) -> Self {
        Self { data: CMatrix::zeros(mics, bins) }
    }

    pub fn mics(&self) -> usize {
        self.data.nrows()
    }

    pub fn bins(&self) -> usize {
        self.data.ncols()
    }

    pub fn bin(&self, j: usize) -> Vec<C64> {
        self.data.column(j).iter().copied().collect()
    }
}

fn tilde_source(index: usize) -> (usize, f64) {
    let (n, m) = acn_inverse(index);
    let src = ((n * n + n) as i64 - m) as usize;
    let sign = if m.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    (src, sign)
}

fn check_channels(k: usize) -> Result<()> {
    order_from_channels(k)
        .map(|_| ())
        .ok_or_else(|| Error::dim(format!("{k} channels do not form complete SH orders")))
}

/// `ã_nm = (−1)^m a_{n,−m}` on an ACN-ordered coefficient vector.
pub fn tilde_reindex(v: &[C64]) -> Result<Vec<C64>> {
    check_channels(v.len())?;
    Ok((0..v.len())
        .map(|i| {
            let (src, sign) = tilde_source(i);
            v[src] * sign
        })
        .collect())
}

/// Tilde reindexing of a matrix whose rows are SH channels.
pub(crate) fn tilde_reindex_rows(m: &CMatrix) -> Result<CMatrix> {
    check_channels(m.nrows())?;
    Ok(CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        let (src, sign) = tilde_source(i);
        m[(src, j)] * sign
    }))
}

/// Tilde reindexing of a matrix whose columns are SH channels.
pub(crate) fn tilde_reindex_cols(m: &CMatrix) -> Result<CMatrix> {
    check_channels(m.ncols())?;
    Ok(CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| {
        let (src, sign) = tilde_source(j);
        m[(i, src)] * sign
    }))
}

/// Ambisonics estimate `â_nm(k) = c_nm(k)ᴴ x(k)` for every bin.
///
/// The output is in tilde form exactly when the filter is.
pub fn encode(filter: &EncodingFilter, x: &MicSpectra) -> Result<ShSignal> {
    if x.bins() != filter.bins() {
        return Err(Error::dim(format!("{} spectra bins vs {} filter bins", x.bins(), filter.bins())));
    }
    if x.mics() != filter.mics() {
        return Err(Error::dim(format!("{} microphones vs filter for {}", x.mics(), filter.mics())));
    }
    let k = filter.channels();
    let mut out = CMatrix::zeros(k, x.bins());
    for j in 0..x.bins() {
        let c = filter.matrix(j);
        let a = c.adjoint() * x.data.column(j);
        out.column_mut(j).copy_from(&a);
    }
    ShSignal::new(filter.order, filter.tilde, out)
}
