use crate::array::tilde_reindex_rows;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::sh::{channel_count, RotationOp};

/// Order-limited SH coefficient stack over frequency: `(N+1)² × bins`.
///
/// `tilde` records whether the channels hold `a_nm` or the reindexed
/// `ã_nm = (−1)^m a_{n,−m}`; every transform keeps it up to date.
#[derive(Debug, Clone, PartialEq)]
pub struct ShSignal {
    pub order: usize,
    pub tilde: bool,
    pub data: CMatrix,
}

impl ShSignal {
    pub fn new(order: usize, tilde: bool, data: CMatrix) -> Result<Self> {
        if data.nrows() != channel_count(order) {
            return Err(Error::dim(format!(
                "{} channels given for order {order} (need {})",
                data.nrows(),
                channel_count(order)
            )));
        }
        Ok(Self { order, tilde, data })
    }

    pub fn zeros(order: usize, tilde: bool, bins: usize) -> Self {
        Self { order, tilde, data: CMatrix::zeros(channel_count(order), bins) }
    }

    pub fn channels(&self) -> usize {
        self.data.nrows()
    }

    pub fn bins(&self) -> usize {
        self.data.ncols()
    }

    pub fn bin(&self, j: usize) -> Vec<C64> {
        self.data.column(j).iter().copied().collect()
    }

    /// Applies the tilde reindexing and flips the flag.
    pub fn tilde_reindexed(&self) -> ShSignal {
        ShSignal {
            order: self.order,
            tilde: !self.tilde,
            data: tilde_reindex_rows(&self.data).expect("complete orders by construction"),
        }
    }

    /// The signal in tilde form, reindexing only if needed.
    pub fn to_tilde(&self) -> ShSignal {
        if self.tilde {
            self.clone()
        } else {
            self.tilde_reindexed()
        }
    }

    /// The signal in plain `a_nm` form, reindexing only if needed.
    pub fn to_plain(&self) -> ShSignal {
        if self.tilde {
            self.tilde_reindexed()
        } else {
            self.clone()
        }
    }

    /// Keeps orders `0..=order` (no-op if already at or below).
    pub fn truncated(&self, order: usize) -> ShSignal {
        if order >= self.order {
            return self.clone();
        }
        ShSignal {
            order,
            tilde: self.tilde,
            data: self.data.rows(0, channel_count(order)).into_owned(),
        }
    }

    /// Counter-rotates the sound field so that rendering with an unrotated
    /// HRTF equals rendering this signal with `D h_nm`: tilde signals get
    /// `Dᵀ ã`, plain signals the equivalent `D⁻¹ a`.
    pub fn counter_rotated(&self, rot: &RotationOp) -> Result<ShSignal> {
        let data = if self.tilde {
            rot.apply_transpose_matrix(&self.data)?
        } else {
            rot.inverse().apply_matrix(&self.data)?
        };
        Ok(ShSignal { order: self.order, tilde: self.tilde, data })
    }
}
