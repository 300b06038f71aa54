//! Spherical-harmonic foundation: directions and quadrature grids, the
//! complex orthonormal SH basis (Condon–Shortley phase, ACN ordering),
//! Wigner-D rotations and rigid-sphere radial functions.

mod direction;
mod grid;
mod harmonics;
mod lebedev;
#[rustfmt::skip]
mod lebedev_tables;
mod radial;
mod rotation;

pub use direction::{rotation_matrix_zyz, Direction};
pub use grid::DirectionGrid;
pub use harmonics::{
    acn_index, acn_inverse, channel_count, order_from_channels, sh_matrix, sh_vector, ShMatrix,
};
pub use lebedev::{lebedev_grid, lebedev_sizes};
pub use radial::{rigid_sphere_radial, rigid_sphere_radial_orders, spherical_bessel_j, spherical_bessel_y};
pub use rotation::{wigner_d, wigner_d_euler, wigner_small_d, RotationOp};
