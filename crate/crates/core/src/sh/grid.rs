use std::f64::consts::PI;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::Direction;
use crate::error::{Error, Result};

/// A set of directions with quadrature weights summing to 4π.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionGrid {
    pub name: String,
    directions: Vec<Direction>,
    weights: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct GridRow {
    theta: f64,
    phi: f64,
    weight: f64,
}

impl DirectionGrid {
    /// Builds a grid, checking that the weights are nonnegative and sum to
    /// 4π within 1e-9 relative.
    pub fn new(name: impl Into<String>, directions: Vec<Direction>, weights: Vec<f64>) -> Result<Self> {
        if directions.is_empty() {
            return Err(Error::InvalidGrid("grid has no directions".into()));
        }
        if directions.len() != weights.len() {
            return Err(Error::InvalidGrid(format!(
                "{} directions but {} weights",
                directions.len(),
                weights.len()
            )));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w >= 0.0)) {
            return Err(Error::InvalidGrid("weights must be finite and nonnegative".into()));
        }
        let sum: f64 = weights.iter().sum();
        if ((sum - 4.0 * PI) / (4.0 * PI)).abs() > 1e-9 {
            return Err(Error::InvalidGrid(format!("weights sum to {sum}, expected 4π")));
        }
        Ok(Self { name: name.into(), directions, weights })
    }

    /// Builds a grid with uniform weights `4π / Q`.
    pub fn uniform(name: impl Into<String>, directions: Vec<Direction>) -> Result<Self> {
        let q = directions.len().max(1);
        let w = vec![4.0 * PI / q as f64; directions.len()];
        Self::new(name, directions, w)
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// The same grid with every direction mapped through `r`.
    pub fn rotated(&self, r: &[[f64; 3]; 3], name: impl Into<String>) -> DirectionGrid {
        DirectionGrid {
            name: name.into(),
            directions: self.directions.iter().map(|d| d.rotated(r)).collect(),
            weights: self.weights.clone(),
        }
    }

    /// Index and great-circle distance of the grid point closest to `d`.
    pub fn nearest(&self, d: &Direction) -> (usize, f64) {
        let u = d.unit_vector();
        let mut best = (0, f64::NEG_INFINITY);
        for (i, g) in self.directions.iter().enumerate() {
            let v = g.unit_vector();
            let c = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
            if c > best.1 {
                best = (i, c);
            }
        }
        (best.0, best.1.clamp(-1.0, 1.0).acos())
    }

    /// Writes `theta,phi,weight` rows (radians, steradians).
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        for (d, &weight) in self.directions.iter().zip(&self.weights) {
            wr.serialize(GridRow { theta: d.theta, phi: d.phi, weight })?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(name: impl Into<String>, r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let mut dirs = Vec::new();
        let mut weights = Vec::new();
        for row in rd.deserialize() {
            let row: GridRow = row?;
            dirs.push(Direction::new(row.theta, row.phi)?);
            weights.push(row.weight);
        }
        Self::new(name, dirs, weights)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weight_sum_is_checked() {
        let d = vec![Direction::new(0.0, 0.0).unwrap(); 2];
        assert!(DirectionGrid::new("x", d.clone(), vec![1.0, 1.0]).is_err());
        assert!(DirectionGrid::new("x", d.clone(), vec![2.0 * PI, 2.0 * PI]).is_ok());
        assert!(DirectionGrid::new("x", d, vec![4.0 * PI]).is_err());
        assert!(DirectionGrid::new("x", vec![], vec![]).is_err());
    }

    #[test]
    fn csv_round_trip() {
        let g = crate::sh::lebedev_grid(26).unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("theta,phi,weight"));
        let h = DirectionGrid::read_csv(g.name.clone(), buf.as_slice()).unwrap();
        assert_eq!(g.len(), h.len());
        for (a, b) in g.directions().iter().zip(h.directions()) {
            assert!(a.angle_to(b) < 1e-12);
        }
    }

    #[test]
    fn nearest_finds_exact_point() {
        let g = crate::sh::lebedev_grid(194).unwrap();
        let (i, dist) = g.nearest(&g.directions()[17]);
        assert_eq!(i, 17);
        assert!(dist < 1e-7);
    }
}
