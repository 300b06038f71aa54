use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A direction on the unit sphere.
///
/// `theta` is the colatitude measured from +z in `[0, π]`; `phi` is the
/// azimuth in `(-π, π]`, counter-clockwise from +x (so +90° is to the left
/// of a listener facing +x).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Direction {
    pub theta: f64,
    pub phi: f64,
}

fn wrap_azimuth(phi: f64) -> f64 {
    let mut p = phi.rem_euclid(2.0 * PI);
    if p > PI {
        p -= 2.0 * PI;
    }
    // rem_euclid maps -π to π, which is the closed end we want
    p
}

impl Direction {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidDirection(format!("non-finite angles ({theta}, {phi})")));
        }
        if !(-1e-12..=PI + 1e-12).contains(&theta) {
            return Err(Error::InvalidDirection(format!("colatitude {theta} outside [0, π]")));
        }
        Ok(Self { theta: theta.clamp(0.0, PI), phi: wrap_azimuth(phi) })
    }

    pub fn from_degrees(theta_deg: f64, phi_deg: f64) -> Result<Self> {
        Self::new(theta_deg.to_radians(), phi_deg.to_radians())
    }

    /// Direction of a (not necessarily normalised) nonzero vector.
    pub fn from_vector(v: [f64; 3]) -> Result<Self> {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !(r > 0.0) || !r.is_finite() {
            return Err(Error::InvalidDirection("zero-length vector".into()));
        }
        let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
        let phi = if v[0] == 0.0 && v[1] == 0.0 { 0.0 } else { v[1].atan2(v[0]) };
        Self::new(theta, phi)
    }

    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }

    pub fn dot(&self, other: &Direction) -> f64 {
        let a = self.unit_vector();
        let b = other.unit_vector();
        (a[0] * b[0] + a[1] * b[1] + a[2] * b[2]).clamp(-1.0, 1.0)
    }

    /// Great-circle angle to another direction, in radians.
    pub fn angle_to(&self, other: &Direction) -> f64 {
        self.dot(other).acos()
    }

    pub fn rotated(&self, r: &[[f64; 3]; 3]) -> Direction {
        let u = self.unit_vector();
        let v = [
            r[0][0] * u[0] + r[0][1] * u[1] + r[0][2] * u[2],
            r[1][0] * u[0] + r[1][1] * u[1] + r[1][2] * u[2],
            r[2][0] * u[0] + r[2][1] * u[1] + r[2][2] * u[2],
        ];
        Direction::from_vector(v).expect("rotation preserves length")
    }

    pub fn theta_deg(&self) -> f64 {
        self.theta.to_degrees()
    }

    pub fn phi_deg(&self) -> f64 {
        self.phi.to_degrees()
    }
}

/// Active rotation matrix `Rz(α) Ry(β) Rz(γ)`.
pub fn rotation_matrix_zyz(alpha: f64, beta: f64, gamma: f64) -> [[f64; 3]; 3] {
    fn rz(a: f64) -> [[f64; 3]; 3] {
        let (s, c) = a.sin_cos();
        [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]
    }
    fn ry(b: f64) -> [[f64; 3]; 3] {
        let (s, c) = b.sin_cos();
        [[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]]
    }
    fn mul(a: [[f64; 3]; 3], b: [[f64; 3]; 3]) -> [[f64; 3]; 3] {
        let mut out = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
            }
        }
        out
    }
    mul(mul(rz(alpha), ry(beta)), rz(gamma))
}
