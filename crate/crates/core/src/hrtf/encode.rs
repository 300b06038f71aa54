use super::solver::{MaglsProblem, SolverOptions};
use super::{crossfade_combine, BinConvergence, CrossfadeSpec, Ear, HrtfSet, HrtfSh, Variant};
use crate::array::{EncodingFilter, SteeringMatrix};
use crate::error::{Error, Result};
use crate::linalg::{adjoint_mul, solve_hpd, weighted_gram, CMatrix, CVector, C64};
use crate::sh::{channel_count, sh_matrix, RotationOp};

fn column(m: &CMatrix, j: usize) -> CVector {
    m.column(j).into_owned()
}

/// Least-squares SH encoding with quadrature weights:
/// `h_nm = (Yᴴ W Y)⁻¹ Yᴴ W h` for every bin and ear.
pub fn ls_encode(h: &HrtfSet, order: usize) -> Result<HrtfSh> {
    let k = channel_count(order);
    if k > h.grid.len() {
        return Err(Error::RankDeficient(format!(
            "order {order} needs {k} coefficients but the grid has {} directions",
            h.grid.len()
        )));
    }
    let y = sh_matrix(&h.grid, order).entries;
    let gram = weighted_gram(&y, h.grid.weights());
    let chol = gram
        .clone()
        .cholesky()
        .ok_or_else(|| Error::RankDeficient(format!("SH matrix of order {order} is singular on {}", h.grid.name)))?;
    let diag: Vec<f64> = (0..k).map(|i| chol.l_dirty()[(i, i)].re).collect();
    let (lo, hi) = diag.iter().fold((f64::INFINITY, 0.0f64), |(a, b), &d| (a.min(d), b.max(d)));
    if lo < 1e-6 * hi {
        return Err(Error::RankDeficient(format!("SH matrix of order {order} is ill-conditioned on {}", h.grid.name)));
    }
    let yw = CMatrix::from_fn(y.nrows(), k, |q, c| y[(q, c)] * h.grid.weights()[q]);
    let left = solve_hpd(&gram, &adjoint_mul(&yw, &h.left))?;
    let right = solve_hpd(&gram, &adjoint_mul(&yw, &h.right))?;
    HrtfSh::new(order, left, right, Variant::Ls)
}

/// MagLS encoding with default solver settings.
pub fn magls_encode(h: &HrtfSet, order: usize, fade: &CrossfadeSpec) -> Result<HrtfSh> {
    magls_encode_with(h, order, fade, &SolverOptions::default())
}

/// MagLS: bins with `α > 0` fit only the magnitude `‖ |Y h_nm| − |h| ‖²`;
/// bins with `α = 0` keep the LS solution. The first magnitude bin starts
/// from the LS phases, later bins from the previous bin's solution.
pub fn magls_encode_with(h: &HrtfSet, order: usize, fade: &CrossfadeSpec, opts: &SolverOptions) -> Result<HrtfSh> {
    fade.validate(&h.freqs)?;
    let ls = ls_encode(h, order)?;
    let problem = MaglsProblem::new(sh_matrix(&h.grid, order).entries, None)?;
    let alphas = fade.alphas(&h.freqs);
    let run = |ear: Ear| -> (CMatrix, Vec<BinConvergence>) {
        let lsm = ls.ear(ear);
        let mut out = lsm.clone();
        let mut records = vec![];
        let mut phase: Option<Vec<f64>> = None;
        for (j, &a) in alphas.iter().enumerate() {
            if a == 0.0 {
                continue;
            }
            let target: Vec<f64> = h.ear(ear).column(j).iter().map(|z| z.norm()).collect();
            let p0 = phase.take().unwrap_or_else(|| problem.phases(&column(lsm, j)));
            let sol = problem.solve(&target, &p0, opts);
            phase = Some(problem.phases(&sol.coeffs));
            records.push(BinConvergence {
                bin: j,
                iterations: sol.iterations,
                converged: sol.converged,
                objective: sol.objective,
            });
            out.column_mut(j).copy_from(&sol.coeffs);
        }
        (out, records)
    };
    let ((left, lrec), (right, rrec)) = rayon::join(|| run(Ear::Left), || run(Ear::Right));
    let mut out = HrtfSh::new(order, left, right, Variant::Magls)?;
    out.convergence = [lrec, rrec];
    Ok(out)
}

/// LS in the low band, MagLS in the high band and their crossfade.
pub fn magls_crossfaded(h: &HrtfSet, order: usize, fade: &CrossfadeSpec, opts: &SolverOptions) -> Result<HrtfSh> {
    let ls = ls_encode(h, order)?;
    let magls = magls_encode_with(h, order, fade, opts)?;
    crossfade_combine(&ls, &magls, fade, &h.freqs)
}

/// Which solution fills the `α = 0` band of AA-MagLS.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowBand {
    /// Array-agnostic quadrature LS encoding of the reference, identical to
    /// the low band of the MagLS HRTF.
    #[default]
    Ls,
    /// Complex array-aware minimizer of the binaural error.
    ComplexEq22,
}

#[derive(Debug, Clone, Default)]
pub struct AaMaglsOptions {
    pub solver: SolverOptions,
    pub low_band: LowBand,
    /// Optional MagLS encoding (same order, unrotated) used as an extra
    /// starting point at every magnitude bin; the better run is kept.
    pub magls_seed: Option<HrtfSh>,
    /// Head rotation the design is made for. The reference `h` must then
    /// hold the HRTFs of the rotated head; the returned coefficients are
    /// unrotated, so rendering with `D h_nm` reproduces the design.
    pub rotation: Option<RotationOp>,
}

/// Results of one AA-MagLS design: low band, magnitude band and their crossfade.
#[derive(Debug, Clone)]
pub struct AaDesign {
    pub low: HrtfSh,
    pub high: HrtfSh,
    pub crossfaded: HrtfSh,
}

/// Per-bin model `G = (C̃ᴴ V)ᵀ` and noise regularizer `λ C̃ᵀ conj(C̃)`.
fn bin_system(filter: &EncodingFilter, v: &SteeringMatrix, j: usize) -> Result<MaglsProblem> {
    let ct = filter.tilde_matrix(j);
    let g = filter.reproduction(j, v).transpose();
    let b = ct.map(|z| z.conj());
    let reg = adjoint_mul(&b, &b) * C64::new(filter.lambda(), 0.0);
    MaglsProblem::new(g, Some(reg))
}

fn check_inputs(h: &HrtfSet, filter: &EncodingFilter, vs: &[SteeringMatrix]) -> Result<()> {
    if filter.bins() != h.bins() || vs.len() != h.bins() {
        return Err(Error::dim(format!(
            "bins: HRTF {}, filter {}, steering {}",
            h.bins(),
            filter.bins(),
            vs.len()
        )));
    }
    if filter.grid_name != h.grid.name {
        return Err(Error::dim(format!("filter grid '{}' vs HRTF grid '{}'", filter.grid_name, h.grid.name)));
    }
    if let Some(v) = vs.iter().find(|v| v.directions() != h.grid.len() || v.mics() != filter.mics()) {
        return Err(Error::dim(format!(
            "steering matrix {}×{} does not match {} mics × {} directions",
            v.mics(),
            v.directions(),
            filter.mics(),
            h.grid.len()
        )));
    }
    Ok(())
}

fn unrotate(m: CMatrix, rotation: Option<&RotationOp>) -> Result<CMatrix> {
    match rotation {
        Some(rot) if !rot.is_identity() => rot.inverse().apply_matrix(&m),
        _ => Ok(m),
    }
}

fn rotate(m: &CMatrix, rotation: Option<&RotationOp>) -> Result<CMatrix> {
    match rotation {
        Some(rot) if !rot.is_identity() => rot.apply_matrix(m),
        _ => Ok(m.clone()),
    }
}

/// Complex array-aware encoding: per bin and ear,
/// `argmin σ_s²‖h_nmᵀ C̃ᴴ V − hᵀ‖² + σ_n²‖h_nmᵀ C̃ᴴ‖²`.
pub fn aa_ls_encode(
    h: &HrtfSet,
    filter: &EncodingFilter,
    vs: &[SteeringMatrix],
    rotation: Option<&RotationOp>,
) -> Result<HrtfSh> {
    check_inputs(h, filter, vs)?;
    let k = filter.channels();
    let mut left = CMatrix::zeros(k, h.bins());
    let mut right = CMatrix::zeros(k, h.bins());
    for (j, v) in vs.iter().enumerate() {
        let p = bin_system(filter, v, j)?;
        left.column_mut(j).copy_from(&p.complex_ls(&column(&h.left, j)));
        right.column_mut(j).copy_from(&p.complex_ls(&column(&h.right, j)));
    }
    HrtfSh::new(filter.order, unrotate(left, rotation)?, unrotate(right, rotation)?, Variant::AaLs)
}

/// AA-MagLS with default options; returns the magnitude-band variant.
pub fn aa_magls_encode(
    h: &HrtfSet,
    filter: &EncodingFilter,
    vs: &[SteeringMatrix],
    fade: &CrossfadeSpec,
) -> Result<HrtfSh> {
    Ok(aa_magls_design(h, filter, vs, fade, &AaMaglsOptions::default())?.high)
}

/// Full AA-MagLS design.
///
/// For `α > 0` bins each ear solves
/// `min σ_s²‖ |h_nmᵀ C̃ᴴ V| − |hᵀ| ‖² + σ_n²‖h_nmᵀ C̃ᴴ‖²` by alternating
/// phase fixing and regularized least squares (σ_s² = 1, σ_n² = 1/snr).
/// The first magnitude bin starts from the phases of the complex solution,
/// later bins from the previous bin's solution.
pub fn aa_magls_design(
    h: &HrtfSet,
    filter: &EncodingFilter,
    vs: &[SteeringMatrix],
    fade: &CrossfadeSpec,
    opts: &AaMaglsOptions,
) -> Result<AaDesign> {
    fade.validate(&h.freqs)?;
    check_inputs(h, filter, vs)?;
    let rotation = opts.rotation.as_ref();
    let order = filter.order;
    let k = filter.channels();
    let seed = match &opts.magls_seed {
        Some(s) => {
            if s.order < order || s.bins() != h.bins() {
                return Err(Error::dim("MagLS seed does not match the design order or bins"));
            }
            let s = s.truncated(order);
            Some([rotate(&s.left, rotation)?, rotate(&s.right, rotation)?])
        }
        None => None,
    };
    let alphas = fade.alphas(&h.freqs);
    let mut complex = [CMatrix::zeros(k, h.bins()), CMatrix::zeros(k, h.bins())];
    let mut magnitude = [CMatrix::zeros(k, h.bins()), CMatrix::zeros(k, h.bins())];
    let mut records: [Vec<BinConvergence>; 2] = [vec![], vec![]];
    let mut phase: [Option<Vec<f64>>; 2] = [None, None];
    for (j, v) in vs.iter().enumerate() {
        let p = bin_system(filter, v, j)?;
        for ear in Ear::BOTH {
            let e = ear.index();
            let href = column(h.ear(ear), j);
            let xc = p.complex_ls(&href);
            complex[e].column_mut(j).copy_from(&xc);
            if alphas[j] == 0.0 {
                magnitude[e].column_mut(j).copy_from(&xc);
                continue;
            }
            let target: Vec<f64> = href.iter().map(|z| z.norm()).collect();
            let p0 = phase[e].take().unwrap_or_else(|| p.phases(&xc));
            let mut sol = p.solve(&target, &p0, &opts.solver);
            if let Some(s) = &seed {
                let xs = column(&s[e], j);
                let alt = p.solve(&target, &p.phases(&xs), &opts.solver);
                if alt.objective < sol.objective {
                    sol = alt;
                }
            }
            phase[e] = Some(p.phases(&sol.coeffs));
            records[e].push(BinConvergence {
                bin: j,
                iterations: sol.iterations,
                converged: sol.converged,
                objective: sol.objective,
            });
            magnitude[e].column_mut(j).copy_from(&sol.coeffs);
        }
    }
    let [cl, cr] = complex;
    let [ml, mr] = magnitude;
    let mut low = match opts.low_band {
        LowBand::ComplexEq22 => HrtfSh::new(order, unrotate(cl, rotation)?, unrotate(cr, rotation)?, Variant::AaLs)?,
        LowBand::Ls => {
            let ls = ls_encode(h, order)?;
            HrtfSh::new(order, unrotate(ls.left, rotation)?, unrotate(ls.right, rotation)?, Variant::Ls)?
        }
    };
    let mut high = HrtfSh::new(order, unrotate(ml, rotation)?, unrotate(mr, rotation)?, Variant::AaMagls)?;
    if opts.low_band == LowBand::Ls {
        // the α = 0 bins of the magnitude variant follow the chosen low band
        for (j, &a) in alphas.iter().enumerate() {
            if a == 0.0 {
                let (l, r) = (low.left.column(j).into_owned(), low.right.column(j).into_owned());
                high.left.column_mut(j).copy_from(&l);
                high.right.column_mut(j).copy_from(&r);
            }
        }
    }
    high.convergence = records;
    low.convergence = [vec![], vec![]];
    let crossfaded = crossfade_combine(&low, &high, fade, &h.freqs)?;
    Ok(AaDesign { low, high, crossfaded })
}
