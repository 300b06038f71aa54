//! Lebedev–Laikov quadrature on the sphere.
//!
//! Each rule is stored as a list of generators `(code, a, b, v)`; the points
//! are the orbit of the generator under the 48-element octahedral group and
//! carry weight `4π v`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use super::lebedev_tables::TABLES;
use super::{Direction, DirectionGrid};
use crate::error::{Error, Result};

/// Point counts for which a rule is embedded.
pub fn lebedev_sizes() -> Vec<usize> {
    TABLES.iter().map(|(n, _)| *n).collect()
}

fn generator_point(code: u8, a: f64, b: f64) -> [f64; 3] {
    match code {
        1 => [1.0, 0.0, 0.0],
        2 => [0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2],
        3 => {
            let s = (1.0f64 / 3.0).sqrt();
            [s, s, s]
        }
        4 => [a, a, (1.0 - 2.0 * a * a).sqrt()],
        5 => [a, (1.0 - a * a).sqrt(), 0.0],
        6 => [a, b, (1.0 - a * a - b * b).sqrt()],
        _ => unreachable!("unknown Lebedev orbit code {code}"),
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Distinct images of `p` under coordinate permutations and sign flips.
fn octahedral_orbit(p: [f64; 3]) -> Vec<[f64; 3]> {
    let mut out: Vec<[f64; 3]> = Vec::with_capacity(48);
    for perm in PERMUTATIONS {
        for signs in 0..8u8 {
            let mut q = [0.0; 3];
            for k in 0..3 {
                let s = if signs & (1 << k) != 0 { -1.0 } else { 1.0 };
                // adding 0.0 turns -0.0 into +0.0 so duplicates compare equal
                q[k] = s * p[perm[k]] + 0.0;
            }
            if !out.iter().any(|e| e.iter().zip(&q).all(|(x, y)| (x - y).abs() < 1e-14)) {
                out.push(q);
            }
        }
    }
    out
}

/// Returns the tabulated Lebedev grid with `point_count` points.
pub fn lebedev_grid(point_count: usize) -> Result<DirectionGrid> {
    let (_, table) = TABLES
        .iter()
        .find(|(n, _)| *n == point_count)
        .ok_or(Error::UnsupportedGrid(point_count))?;
    let mut dirs = Vec::with_capacity(point_count);
    let mut weights = Vec::with_capacity(point_count);
    for &(code, a, b, v) in table.iter() {
        for p in octahedral_orbit(generator_point(code, a, b)) {
            dirs.push(Direction::from_vector(p)?);
            weights.push(4.0 * PI * v);
        }
    }
    debug_assert_eq!(dirs.len(), point_count);
    // tabulated weights carry ~1e-16 relative rounding; rescale exactly to 4π
    let sum: f64 = weights.iter().sum();
    let scale = 4.0 * PI / sum;
    weights.iter_mut().for_each(|w| *w *= scale);
    DirectionGrid::new(format!("lebedev-{point_count}"), dirs, weights)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_expands_to_its_size() {
        for n in lebedev_sizes() {
            let g = lebedev_grid(n).unwrap();
            assert_eq!(g.len(), n, "size {n}");
            let sum: f64 = g.weights().iter().sum();
            assert!((sum - 4.0 * PI).abs() < 1e-12);
        }
    }

    #[test]
    fn paper_grid_is_available() {
        assert_eq!(lebedev_grid(2702).unwrap().len(), 2702);
    }

    #[test]
    fn unsupported_size_is_an_error() {
        assert!(matches!(lebedev_grid(7), Err(Error::UnsupportedGrid(7))));
    }

    #[test]
    fn integrates_low_degree_monomials() {
        // ∫ x² dΩ = 4π/3, ∫ x²y²z² dΩ = 4π/105
        let g = lebedev_grid(194).unwrap();
        let (mut i2, mut i6) = (0.0, 0.0);
        for (d, w) in g.directions().iter().zip(g.weights()) {
            let [x, y, z] = d.unit_vector();
            i2 += w * x * x;
            i6 += w * x * x * y * y * z * z;
        }
        assert!((i2 - 4.0 * PI / 3.0).abs() < 1e-13);
        assert!((i6 - 4.0 * PI / 105.0).abs() < 1e-13);
    }

    #[test]
    fn points_are_distinct() {
        let g = lebedev_grid(2702).unwrap();
        let mut min_sep = f64::INFINITY;
        let d = g.directions();
        for i in (0..d.len()).step_by(37) {
            for j in 0..d.len() {
                if i != j {
                    min_sep = min_sep.min(d[i].angle_to(&d[j]));
                }
            }
        }
        assert!(min_sep > 1e-3);
    }
}
