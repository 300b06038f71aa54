use super::{HrtfSet, HrtfSh};
use crate::array::{steering_matrices, ArrayGeometry, FrequencyGrid, Mic, Mount};
use crate::error::{Error, Result};
use crate::linalg::{matmul, CMatrix};
use crate::sh::{sh_matrix, Direction, DirectionGrid, RotationOp};

/// Anything that can produce HRTFs for arbitrary directions.
pub trait HrtfModel: Sync {
    /// Left and right transfer functions, `dirs.len() × freqs.len()` each.
    fn evaluate(&self, dirs: &[Direction], freqs: &FrequencyGrid) -> Result<(CMatrix, CMatrix)>;
}

/// Rigid spherical head with point ears on its surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereHead {
    pub radius: f64,
    pub ears: [Direction; 2],
    pub sound_speed: f64,
}

impl Default for SphereHead {
    fn default() -> Self {
        Self {
            radius: 0.0875,
            ears: [
                Direction::from_degrees(90.0, 90.0).expect("valid"),
                Direction::from_degrees(90.0, -90.0).expect("valid"),
            ],
            sound_speed: crate::SOUND_SPEED,
        }
    }
}

fn as_grid(dirs: &[Direction]) -> Result<DirectionGrid> {
    DirectionGrid::uniform("query", dirs.to_vec())
}

impl HrtfModel for SphereHead {
    fn evaluate(&self, dirs: &[Direction], freqs: &FrequencyGrid) -> Result<(CMatrix, CMatrix)> {
        if !(self.radius > 0.0) {
            return Err(Error::input(format!("head radius must be positive, got {}", self.radius)));
        }
        let mics = self.ears.iter().map(|d| Mic { theta: d.theta, phi: d.phi, r: self.radius }).collect();
        let geom = ArrayGeometry::new(self.radius, Mount::RigidSphere, mics)?;
        let vs = steering_matrices(&geom, &as_grid(dirs)?, freqs, self.sound_speed)?;
        let q = dirs.len();
        let left = CMatrix::from_fn(q, vs.len(), |i, j| vs[j].entries[(0, i)]);
        let right = CMatrix::from_fn(q, vs.len(), |i, j| vs[j].entries[(1, i)]);
        Ok((left, right))
    }
}

/// Interpolates a tabulated set through its SH representation.
#[derive(Debug, Clone)]
pub struct ShHrtfModel {
    pub coeffs: HrtfSh,
}

impl HrtfModel for ShHrtfModel {
    fn evaluate(&self, dirs: &[Direction], freqs: &FrequencyGrid) -> Result<(CMatrix, CMatrix)> {
        self.coeffs.check_bins(freqs)?;
        let y = sh_matrix(&as_grid(dirs)?, self.coeffs.order).entries;
        Ok((matmul(&y, &self.coeffs.left), matmul(&y, &self.coeffs.right)))
    }
}

/// Rigid-sphere HRTFs on a grid, with ears at `ear_dirs` (left, right).
pub fn analytic_sphere_hrtf(
    grid: &DirectionGrid,
    freqs: &FrequencyGrid,
    head_radius: f64,
    ear_dirs: [Direction; 2],
) -> Result<HrtfSet> {
    let head = SphereHead { radius: head_radius, ears: ear_dirs, sound_speed: crate::SOUND_SPEED };
    let (left, right) = head.evaluate(grid.directions(), freqs)?;
    HrtfSet::new(grid.clone(), *freqs, left, right)
}

/// Reference set for a head rotated by `rotation`: each grid direction
/// `Ω_q` (world frame) is looked up at `R⁻¹ Ω_q` in the head frame.
pub fn reference_set(
    model: &dyn HrtfModel,
    grid: &DirectionGrid,
    freqs: &FrequencyGrid,
    rotation: Option<&RotationOp>,
) -> Result<HrtfSet> {
    let dirs: Vec<Direction> = match rotation {
        Some(rot) if !rot.is_identity() => {
            let r = rot.rotation_matrix();
            let inv = [[r[0][0], r[1][0], r[2][0]], [r[0][1], r[1][1], r[2][1]], [r[0][2], r[1][2], r[2][2]]];
            grid.directions().iter().map(|d| d.rotated(&inv)).collect()
        }
        _ => grid.directions().to_vec(),
    };
    let (left, right) = model.evaluate(&dirs, freqs)?;
    HrtfSet::new(grid.clone(), *freqs, left, right)
}
