use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rayon::prelude::*;

use super::{ArrayGeometry, FrequencyGrid, Mount};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::sh::{rigid_sphere_radial_orders, DirectionGrid};

/// Array response `V(k)`: `M × Q`, entry `(i, q)` is microphone `i`'s
/// response to a unit plane wave arriving from grid direction `q`.
#[derive(Debug, Clone, PartialEq)]
pub struct SteeringMatrix {
    pub freq: f64,
    pub entries: CMatrix,
}

impl SteeringMatrix {
    pub fn mics(&self) -> usize {
        self.entries.nrows()
    }

    pub fn directions(&self) -> usize {
        self.entries.ncols()
    }
}

/// Series truncation `⌈ka⌉ + 10`, capped at 60.
pub fn default_truncation_order(ka: f64) -> usize {
    (ka.ceil() as usize + 10).min(60)
}

fn legendre_upto(order: usize, x: f64, out: &mut [f64]) {
    out[0] = 1.0;
    if order >= 1 {
        out[1] = x;
    }
    for n in 2..=order {
        let nf = n as f64;
        out[n] = ((2.0 * nf - 1.0) * x * out[n - 1] - (nf - 1.0) * out[n - 2]) / nf;
    }
}

/// Precomputed geometry terms shared by every frequency.
struct SteeringKernel {
    mount: Mount,
    radius: f64,
    m: usize,
    q: usize,
    /// rigid sphere: `(M·Q) × 61` table of `P_n(cos γ_iq)`, row `i·Q + q`
    legendre: Option<DMatrix<f64>>,
    /// free field: `r̂_q · r_i` in meters, row-major `i·Q + q`
    projections: Vec<f64>,
}

const MAX_TRUNCATION: usize = 60;

impl SteeringKernel {
    fn new(geom: &ArrayGeometry, grid: &DirectionGrid) -> Result<Self> {
        geom.validate()?;
        let (m, q) = (geom.len(), grid.len());
        let dirs: Vec<[f64; 3]> = grid.directions().iter().map(|d| d.unit_vector()).collect();
        match geom.mount {
            Mount::RigidSphere => {
                let mut table = DMatrix::<f64>::zeros(m * q, MAX_TRUNCATION + 1);
                let mut buf = vec![0.0; MAX_TRUNCATION + 1];
                for (i, mic) in geom.mics.iter().enumerate() {
                    let u = mic.direction().unit_vector();
                    for (j, d) in dirs.iter().enumerate() {
                        let c = (u[0] * d[0] + u[1] * d[1] + u[2] * d[2]).clamp(-1.0, 1.0);
                        legendre_upto(MAX_TRUNCATION, c, &mut buf);
                        for (n, v) in buf.iter().enumerate() {
                            table[(i * q + j, n)] = *v;
                        }
                    }
                }
                Ok(Self { mount: geom.mount, radius: geom.sphere_radius, m, q, legendre: Some(table), projections: vec![] })
            }
            Mount::FreeField => {
                let mut proj = Vec::with_capacity(m * q);
                for mic in &geom.mics {
                    let p = mic.position();
                    proj.extend(dirs.iter().map(|d| d[0] * p[0] + d[1] * p[1] + d[2] * p[2]));
                }
                Ok(Self { mount: geom.mount, radius: geom.sphere_radius, m, q, legendre: None, projections: proj })
            }
        }
    }

    fn evaluate(&self, freq: f64, sound_speed: f64, trunc: Option<usize>) -> Result<SteeringMatrix> {
        if !(freq >= 0.0 && freq.is_finite()) {
            return Err(Error::input(format!("invalid frequency {freq}")));
        }
        let k = 2.0 * PI * freq / sound_speed;
        let entries = match self.mount {
            Mount::RigidSphere => {
                let ka = k * self.radius;
                let required = ka.ceil() as usize;
                let order = trunc.unwrap_or_else(|| default_truncation_order(ka));
                if order < required {
                    return Err(Error::TruncationOrder { order, ka, required });
                }
                if order > MAX_TRUNCATION {
                    return Err(Error::input(format!("truncation order {order} exceeds {MAX_TRUNCATION}")));
                }
                let b = rigid_sphere_radial_orders(order, ka);
                let scale = |n: usize| (2 * n + 1) as f64 / (4.0 * PI);
                let mut cre = DVector::<f64>::zeros(MAX_TRUNCATION + 1);
                let mut cim = DVector::<f64>::zeros(MAX_TRUNCATION + 1);
                for (n, bn) in b.iter().enumerate() {
                    cre[n] = bn.re * scale(n);
                    cim[n] = bn.im * scale(n);
                }
                let table = self.legendre.as_ref().expect("rigid kernel");
                let re = table * cre;
                let im = table * cim;
                CMatrix::from_fn(self.m, self.q, |i, j| C64::new(re[i * self.q + j], im[i * self.q + j]))
            }
            Mount::FreeField => {
                CMatrix::from_fn(self.m, self.q, |i, j| C64::from_polar(1.0, k * self.projections[i * self.q + j]))
            }
        };
        Ok(SteeringMatrix { freq, entries })
    }
}

/// Steering matrix at one frequency.
///
/// Rigid-sphere mounts use the Legendre-addition form of the scattering
/// series, `Σ_n b_n(ka) (2n+1)/(4π) P_n(cos γ_iq)`, which equals the double
/// sum over `(n, m)` of `b_n conj(Y_nm(Ω_q)) Y_nm(Ω_i)`. Free-field mounts use
/// `exp(i k r̂_q · r_i)`.
pub fn steering_matrix(
    geom: &ArrayGeometry,
    grid: &DirectionGrid,
    freq: f64,
    sound_speed: f64,
    trunc_order: usize,
) -> Result<SteeringMatrix> {
    SteeringKernel::new(geom, grid)?.evaluate(freq, sound_speed, Some(trunc_order))
}

/// Steering matrices for every bin of `freqs` with the default truncation.
pub fn steering_matrices(
    geom: &ArrayGeometry,
    grid: &DirectionGrid,
    freqs: &FrequencyGrid,
    sound_speed: f64,
) -> Result<Vec<SteeringMatrix>> {
    let kernel = SteeringKernel::new(geom, grid)?;
    (0..freqs.len())
        .into_par_iter()
        .map(|j| kernel.evaluate(freqs.freq(j), sound_speed, None))
        .collect()
}
