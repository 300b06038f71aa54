use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::Ear;
use crate::array::FrequencyGrid;
use crate::error::{Error, Result};
use crate::linalg::{matmul, CMatrix, C64};
use crate::sh::{channel_count, sh_matrix, DirectionGrid, RotationOp};

const MAGIC: &[u8; 8] = b"ASMHSH01";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Ls,
    Magls,
    /// Complex array-aware least squares (the low band of AA-MagLS).
    AaLs,
    AaMagls,
    Crossfaded,
}

/// Solver outcome at one frequency bin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BinConvergence {
    pub bin: usize,
    pub iterations: usize,
    pub converged: bool,
    pub objective: f64,
}

/// SH-domain HRTF `h_nm^{l,r}(k)`: two `(N+1)² × bins` coefficient matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct HrtfSh {
    pub order: usize,
    pub left: CMatrix,
    pub right: CMatrix,
    pub variant: Variant,
    /// Per-ear solver records for the iteratively solved bins.
    pub convergence: [Vec<BinConvergence>; 2],
}

#[derive(Serialize, Deserialize)]
struct Header {
    order: usize,
    variant: Variant,
    bins: usize,
}

impl HrtfSh {
    pub fn new(order: usize, left: CMatrix, right: CMatrix, variant: Variant) -> Result<Self> {
        let k = channel_count(order);
        if left.nrows() != k || right.nrows() != k || left.ncols() != right.ncols() {
            return Err(Error::dim(format!(
                "HRTF coefficients {}×{} / {}×{} for order {order}",
                left.nrows(),
                left.ncols(),
                right.nrows(),
                right.ncols()
            )));
        }
        Ok(Self { order, left, right, variant, convergence: [vec![], vec![]] })
    }

    pub fn channels(&self) -> usize {
        self.left.nrows()
    }

    pub fn bins(&self) -> usize {
        self.left.ncols()
    }

    pub fn ear(&self, ear: Ear) -> &CMatrix {
        match ear {
            Ear::Left => &self.left,
            Ear::Right => &self.right,
        }
    }

    /// Bins at which the iterative solver hit its iteration cap.
    pub fn unconverged_bins(&self) -> Vec<(Ear, usize)> {
        let mut out = vec![];
        for (ear, recs) in [Ear::Left, Ear::Right].into_iter().zip(&self.convergence) {
            out.extend(recs.iter().filter(|r| !r.converged).map(|r| (ear, r.bin)));
        }
        out
    }

    pub fn truncated(&self, order: usize) -> HrtfSh {
        if order >= self.order {
            return self.clone();
        }
        let k = channel_count(order);
        HrtfSh {
            order,
            left: self.left.rows(0, k).into_owned(),
            right: self.right.rows(0, k).into_owned(),
            variant: self.variant,
            convergence: self.convergence.clone(),
        }
    }

    /// `D h_nm` for both ears: the HRTF of a head rotated by `rot`.
    pub fn rotated(&self, rot: &RotationOp) -> Result<HrtfSh> {
        Ok(HrtfSh {
            order: self.order,
            left: rot.apply_matrix(&self.left)?,
            right: rot.apply_matrix(&self.right)?,
            variant: self.variant,
            convergence: self.convergence.clone(),
        })
    }

    /// Space-domain HRTFs on `grid`: `Q × bins` per ear, `h(Ω_q) = Σ h_nm Y_nm(Ω_q)`.
    pub fn evaluate(&self, grid: &DirectionGrid) -> (CMatrix, CMatrix) {
        let y = sh_matrix(grid, self.order).entries;
        (matmul(&y, &self.left), matmul(&y, &self.right))
    }

    /// Binary container: magic, u64 LE header length, JSON header, then the
    /// left and right matrices bin-major as LE `(re, im)` f64 pairs.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        let header = serde_json::to_vec(&Header { order: self.order, variant: self.variant, bins: self.bins() })?;
        w.write_all(MAGIC)?;
        w.write_all(&(header.len() as u64).to_le_bytes())?;
        w.write_all(&header)?;
        for m in [&self.left, &self.right] {
            let mut buf = Vec::with_capacity(m.len() * 16);
            for j in 0..m.ncols() {
                for z in m.column(j).iter() {
                    buf.extend_from_slice(&z.re.to_le_bytes());
                    buf.extend_from_slice(&z.im.to_le_bytes());
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
            return Err(Error::Format("not an SH-HRTF file (bad magic)".into()));
        }
        let mut len = [0u8; 8];
        r.read_exact(&mut len)?;
        let len = u64::from_le_bytes(len) as usize;
        if len > 1 << 20 {
            return Err(Error::Format(format!("implausible header length {len}")));
        }
        let mut header = vec![0u8; len];
        r.read_exact(&mut header)?;
        let h: Header = serde_json::from_slice(&header)?;
        let k = channel_count(h.order);
        let mut mats = Vec::with_capacity(2);
        for _ in 0..2 {
            let mut raw = vec![0u8; k * h.bins * 16];
            r.read_exact(&mut raw)?;
            let val = |o: usize| f64::from_le_bytes(raw[o..o + 8].try_into().expect("8 bytes"));
            mats.push(CMatrix::from_fn(k, h.bins, |c, j| {
                let o = (j * k + c) * 16;
                C64::new(val(o), val(o + 8))
            }));
        }
        let right = mats.pop().expect("two ears");
        let left = mats.pop().expect("two ears");
        Self::new(h.order, left, right, h.variant)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        self.write_to(std::io::BufWriter::new(std::fs::File::create(path)?))
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::read_from(std::io::BufReader::new(std::fs::File::open(path)?))
    }

    /// Checks that this set lines up with a frequency grid.
    pub fn check_bins(&self, freqs: &FrequencyGrid) -> Result<()> {
        if self.bins() != freqs.len() {
            return Err(Error::dim(format!("HRTF has {} bins, grid {}", self.bins(), freqs.len())));
        }
        Ok(())
    }
}
