use nalgebra::{Cholesky, Dyn};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, C64};

/// Stopping rule of the alternating magnitude solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    pub max_iter: usize,
    pub rel_tol: f64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { max_iter: 50, rel_tol: 1e-8 }
    }
}

/// Magnitude-fitting problem `min_h ‖ |G h| − t ‖² + hᴴ R h` with a fixed
/// model matrix `G` (`Q × K`) and optional Hermitian regularizer `R`.
///
/// The normal matrix `GᴴG + R` is factored once and reused by every target
/// and every iteration.
pub struct MaglsProblem {
    g: CMatrix,
    gh: CMatrix,
    reg: Option<CMatrix>,
    chol: Cholesky<C64, Dyn>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaglsSolution {
    pub coeffs: CVector,
    pub objective: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Objective after each iteration.
    pub history: Vec<f64>,
}

impl MaglsProblem {
    pub fn new(g: CMatrix, reg: Option<CMatrix>) -> Result<Self> {
        let k = g.ncols();
        if let Some(r) = &reg {
            if r.shape() != (k, k) {
                return Err(Error::dim(format!("regularizer is {:?}, expected {k}×{k}", r.shape())));
            }
        }
        let gh = g.adjoint();
        let mut a = crate::linalg::matmul(&gh, &g);
        if let Some(r) = &reg {
            a += r;
        }
        // symmetrize against rounding so the factorization sees an exactly Hermitian matrix
        let a = (&a + a.adjoint()) * C64::new(0.5, 0.0);
        let chol = match a.clone().cholesky() {
            Some(c) => c,
            None => {
                // rank-deficient systems (e.g. fewer directions than coefficients) get a
                // vanishing ridge, which selects a near minimum-norm solution
                let scale = (0..k).map(|i| a[(i, i)].re).fold(0.0, f64::max);
                let loaded = a + CMatrix::identity(k, k) * C64::new(1e-12 * scale, 0.0);
                loaded
                    .cholesky()
                    .ok_or_else(|| Error::RankDeficient("magnitude LS normal matrix is singular".into()))?
            }
        };
        Ok(Self { g, gh, reg, chol })
    }

    pub fn model(&self) -> &CMatrix {
        &self.g
    }

    /// Complex least squares `argmin ‖G h − t‖² + hᴴ R h`.
    pub fn complex_ls(&self, target: &CVector) -> CVector {
        self.chol.solve(&(&self.gh * target))
    }

    /// `‖ |G h| − t ‖² + hᴴ R h`.
    pub fn objective(&self, h: &CVector, target_abs: &[f64]) -> f64 {
        let r = &self.g * h;
        let fit: f64 = r.iter().zip(target_abs).map(|(z, t)| (z.norm() - t).powi(2)).sum();
        fit + self.penalty(h)
    }

    fn penalty(&self, h: &CVector) -> f64 {
        match &self.reg {
            Some(reg) => (h.adjoint() * reg * h)[(0, 0)].re,
            None => 0.0,
        }
    }

    /// Phases of the model output for coefficients `h`.
    pub fn phases(&self, h: &CVector) -> Vec<f64> {
        (&self.g * h).iter().map(|z| z.arg()).collect()
    }

    /// Alternating minimization from the initial phases `phase0`: fix the
    /// phases, solve the linear problem, take the new output phases, repeat
    /// until the relative objective change drops below the tolerance.
    pub fn solve(&self, target_abs: &[f64], phase0: &[f64], opts: &SolverOptions) -> MaglsSolution {
        assert_eq!(target_abs.len(), self.g.nrows());
        assert_eq!(phase0.len(), self.g.nrows());
        let mut phase = phase0.to_vec();
        let mut history = Vec::with_capacity(opts.max_iter);
        let mut best: Option<(CVector, f64)> = None;
        let mut converged = false;
        for _ in 0..opts.max_iter.max(1) {
            let t = CVector::from_iterator(
                target_abs.len(),
                target_abs.iter().zip(&phase).map(|(&a, &p)| C64::from_polar(a, p)),
            );
            let h = self.complex_ls(&t);
            let r = &self.g * &h;
            let fit: f64 = r.iter().zip(target_abs).map(|(z, t)| (z.norm() - t).powi(2)).sum();
            let obj = fit + self.penalty(&h);
            phase = r.iter().map(|z| z.arg()).collect();
            let prev = history.last().copied();
            history.push(obj);
            if best.as_ref().map_or(true, |(_, b)| obj <= *b) {
                best = Some((h, obj));
            }
            if let Some(p) = prev {
                if (p - obj).abs() <= opts.rel_tol * p.abs().max(1e-300) {
                    converged = true;
                    break;
                }
            }
        }
        let (coeffs, objective) = best.expect("at least one iteration");
        MaglsSolution { coeffs, objective, iterations: history.len(), converged, history }
    }
}
