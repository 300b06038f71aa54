use std::io::{Read, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{tilde_reindex_cols, FrequencyGrid, SteeringMatrix};
use crate::error::{Error, Result};
use crate::linalg::{is_finite, matmul, solve_hpd, CMatrix, C64};
use crate::sh::{channel_count, sh_matrix, DirectionGrid};

const MAGIC: &[u8; 8] = b"ASMFLT01";

/// Default `σ_s² / σ_n²`.
pub const DEFAULT_SNR_RATIO: f64 = 1e3;

/// Per-bin ASM encoding filters `C(k)`: `M × (N_a+1)²`, column `(n, m)` is
/// `c_nm(k)`. `tilde` marks filters stored in the reindexed form `C̃`.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodingFilter {
    pub order: usize,
    pub snr_ratio: f64,
    pub grid_name: String,
    pub freqs: FrequencyGrid,
    pub weighted: bool,
    pub tilde: bool,
    matrices: Vec<CMatrix>,
}

/// JSON header of the binary filter container.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FilterHeader {
    pub mics: usize,
    pub grid: String,
    pub order: usize,
    pub nfft: usize,
    pub fs: f64,
    pub snr_ratio: f64,
    #[serde(default)]
    pub weighted: bool,
    #[serde(default)]
    pub tilde: bool,
}

impl EncodingFilter {
    pub fn new(
        order: usize,
        snr_ratio: f64,
        grid_name: impl Into<String>,
        freqs: FrequencyGrid,
        matrices: Vec<CMatrix>,
    ) -> Result<Self> {
        if matrices.len() != freqs.len() {
            return Err(Error::dim(format!("{} filter bins for {} frequencies", matrices.len(), freqs.len())));
        }
        let k = channel_count(order);
        let m = matrices.first().map(|c| c.nrows()).unwrap_or(0);
        for (j, c) in matrices.iter().enumerate() {
            if c.ncols() != k || c.nrows() != m {
                return Err(Error::dim(format!("bin {j}: filter is {}×{}, expected {m}×{k}", c.nrows(), c.ncols())));
            }
            if !is_finite(c) {
                return Err(Error::input(format!("bin {j}: non-finite filter coefficients")));
            }
        }
        Ok(Self {
            order,
            snr_ratio,
            grid_name: grid_name.into(),
            freqs,
            weighted: false,
            tilde: false,
            matrices,
        })
    }

    pub fn mics(&self) -> usize {
        self.matrices.first().map(|c| c.nrows()).unwrap_or(0)
    }

    pub fn channels(&self) -> usize {
        channel_count(self.order)
    }

    pub fn bins(&self) -> usize {
        self.matrices.len()
    }

    /// Noise-to-signal ratio `σ_n² / σ_s²`.
    pub fn lambda(&self) -> f64 {
        1.0 / self.snr_ratio
    }

    /// Stored matrix of bin `j` (plain or tilde, per the flag).
    pub fn matrix(&self, j: usize) -> &CMatrix {
        &self.matrices[j]
    }

    pub fn matrices(&self) -> &[CMatrix] {
        &self.matrices
    }

    /// `C(k)` in plain form.
    pub fn plain_matrix(&self, j: usize) -> CMatrix {
        if self.tilde {
            tilde_reindex_cols(&self.matrices[j]).expect("complete orders")
        } else {
            self.matrices[j].clone()
        }
    }

    /// `C̃(k)` with columns `c̃_nm = (−1)^m c_{n,−m}`.
    pub fn tilde_matrix(&self, j: usize) -> CMatrix {
        if self.tilde {
            self.matrices[j].clone()
        } else {
            tilde_reindex_cols(&self.matrices[j]).expect("complete orders")
        }
    }

    /// The filter with every bin reindexed and the flag flipped.
    pub fn tilde_reindexed(&self) -> EncodingFilter {
        let mut out = self.clone();
        out.matrices = self.matrices.iter().map(|c| tilde_reindex_cols(c).expect("complete orders")).collect();
        out.tilde = !self.tilde;
        out
    }

    /// Effective reproduction `C̃ᴴ V`, `(N_a+1)² × Q`; equals `Yᵀ` for a
    /// perfect encoder.
    pub fn reproduction(&self, j: usize, v: &SteeringMatrix) -> CMatrix {
        crate::linalg::adjoint_mul(&self.tilde_matrix(j), &v.entries)
    }

    /// Effective gains `Cᴴ V`, row `(n, m)` is `c_nmᴴ V`.
    pub fn effective_gains(&self, j: usize, v: &SteeringMatrix) -> CMatrix {
        crate::linalg::adjoint_mul(&self.plain_matrix(j), &v.entries)
    }

    /// Diffuse-field encoding NMSE per channel at bin `j`,
    /// `(‖Vᴴc_nm − y_nm‖² + λ‖c_nm‖²) / ‖y_nm‖²` with `λ = σ_n²/σ_s²`.
    pub fn analytic_nmse(&self, j: usize, v: &SteeringMatrix, grid: &DirectionGrid) -> Result<Vec<f64>> {
        if v.directions() != grid.len() || v.mics() != self.mics() {
            return Err(Error::dim("steering matrix does not match the filter and grid"));
        }
        let y = sh_matrix(grid, self.order).entries;
        let c = self.plain_matrix(j);
        let g = self.effective_gains(j, v);
        let lambda = self.lambda();
        Ok((0..self.channels())
            .map(|ch| {
                let yc = y.column(ch);
                // row ch of cᴴV is the conjugate of Vᴴc_nm
                let err: f64 = g.row(ch).iter().zip(yc.iter()).map(|(a, b)| (a.conj() - b).norm_sqr()).sum();
                let reg: f64 = c.column(ch).iter().map(|z| z.norm_sqr()).sum();
                let den: f64 = yc.iter().map(|z| z.norm_sqr()).sum();
                (err + lambda * reg) / den
            })
            .collect())
    }

    pub fn header(&self) -> FilterHeader {
        FilterHeader {
            mics: self.mics(),
            grid: self.grid_name.clone(),
            order: self.order,
            nfft: self.freqs.nfft,
            fs: self.freqs.sample_rate,
            snr_ratio: self.snr_ratio,
            weighted: self.weighted,
            tilde: self.tilde,
        }
    }

    /// Writes the binary container: magic, u64 LE header length, JSON
    /// header, then each bin's `M × K` matrix row-major as LE `(re, im)` f64.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        let header = serde_json::to_vec(&self.header())?;
        w.write_all(MAGIC)?;
        w.write_all(&(header.len() as u64).to_le_bytes())?;
        w.write_all(&header)?;
        let mut buf = Vec::with_capacity(self.mics() * self.channels() * 16);
        for c in &self.matrices {
            buf.clear();
            for i in 0..c.nrows() {
                for k in 0..c.ncols() {
                    buf.extend_from_slice(&c[(i, k)].re.to_le_bytes());
                    buf.extend_from_slice(&c[(i, k)].im.to_le_bytes());
                }
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(mut r: R) -> Result<Self> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != MAGIC {
            return Err(Error::Format("not an encoding-filter file (bad magic)".into()));
        }
        let mut len = [0u8; 8];
        r.read_exact(&mut len)?;
        let len = u64::from_le_bytes(len) as usize;
        if len > 1 << 20 {
            return Err(Error::Format(format!("implausible header length {len}")));
        }
        let mut header = vec![0u8; len];
        r.read_exact(&mut header)?;
        let h: FilterHeader = serde_json::from_slice(&header)?;
        let freqs = FrequencyGrid::new(h.fs, h.nfft)?;
        let k = channel_count(h.order);
        let mut raw = vec![0u8; h.mics * k * 16];
        let mut matrices = Vec::with_capacity(freqs.len());
        for _ in 0..freqs.len() {
            r.read_exact(&mut raw)?;
            let val = |o: usize| f64::from_le_bytes(raw[o..o + 8].try_into().expect("8 bytes"));
            matrices.push(CMatrix::from_fn(h.mics, k, |i, c| {
                let o = (i * k + c) * 16;
                C64::new(val(o), val(o + 8))
            }));
        }
        let mut trailing = [0u8; 1];
        if r.read(&mut trailing)? != 0 {
            return Err(Error::Format("trailing bytes after filter data".into()));
        }
        let mut f = EncodingFilter::new(h.order, h.snr_ratio, h.grid, freqs, matrices)?;
        f.weighted = h.weighted;
        f.tilde = h.tilde;
        Ok(f)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let file = std::io::BufWriter::new(std::fs::File::create(path)?);
        self.write_to(file)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_from(std::io::BufReader::new(std::fs::File::open(path)?))
    }
}

fn design(
    vs: &[SteeringMatrix],
    grid: &DirectionGrid,
    freqs: &FrequencyGrid,
    order: usize,
    snr_ratio: f64,
    weights: Option<&[f64]>,
) -> Result<EncodingFilter> {
    if !(snr_ratio > 0.0) {
        return Err(Error::input(format!("snr_ratio must be positive, got {snr_ratio}")));
    }
    if vs.len() != freqs.len() {
        return Err(Error::dim(format!("{} steering matrices for {} bins", vs.len(), freqs.len())));
    }
    let y = sh_matrix(grid, order).entries;
    let lambda = 1.0 / snr_ratio;
    let matrices: Result<Vec<CMatrix>> = vs
        .par_iter()
        .enumerate()
        .map(|(j, v)| {
            if v.directions() != grid.len() {
                return Err(Error::dim(format!("bin {j}: steering has {} directions, grid {}", v.directions(), grid.len())));
            }
            if !is_finite(&v.entries) {
                return Err(Error::input(format!("bin {j}: non-finite steering matrix")));
            }
            let vw = match weights {
                Some(w) => CMatrix::from_fn(v.mics(), v.directions(), |i, q| v.entries[(i, q)] * w[q]),
                None => v.entries.clone(),
            };
            let mut a = matmul(&vw, &v.entries.adjoint());
            for i in 0..a.nrows() {
                a[(i, i)] += C64::new(lambda, 0.0);
            }
            let b = matmul(&vw, &y);
            solve_hpd(&a, &b)
        })
        .collect();
    let mut f = EncodingFilter::new(order, snr_ratio, grid.name.clone(), *freqs, matrices?)?;
    f.weighted = weights.is_some();
    Ok(f)
}

/// ASM filters `C = (V Vᴴ + λI)⁻¹ V Y` per bin with `λ = 1 / snr_ratio`,
/// i.e. the minimizer of `‖Vᴴ c_nm − y_nm‖² + λ‖c_nm‖²` for every channel.
pub fn asm_filter(
    vs: &[SteeringMatrix],
    grid: &DirectionGrid,
    freqs: &FrequencyGrid,
    order: usize,
    snr_ratio: f64,
) -> Result<EncodingFilter> {
    design(vs, grid, freqs, order, snr_ratio, None)
}

/// Quadrature-weighted variant `C = (V W Vᴴ + λI)⁻¹ V W Y`.
pub fn asm_filter_weighted(
    vs: &[SteeringMatrix],
    grid: &DirectionGrid,
    freqs: &FrequencyGrid,
    order: usize,
    snr_ratio: f64,
) -> Result<EncodingFilter> {
    design(vs, grid, freqs, order, snr_ratio, Some(grid.weights()))
}
