//! HRTF sets, SH-domain encodings (LS, MagLS, array-aware MagLS) and the
//! low/high frequency crossfade.

mod coeffs;
mod crossfade;
mod encode;
mod model;
mod set;
mod solver;

pub use coeffs::{BinConvergence, HrtfSh, Variant};
pub use crossfade::{crossfade_combine, CrossfadeSpec};
pub use encode::{
    aa_ls_encode, aa_magls_design, aa_magls_encode, ls_encode, magls_crossfaded, magls_encode, magls_encode_with, AaDesign,
    AaMaglsOptions, LowBand,
};
pub use model::{analytic_sphere_hrtf, reference_set, HrtfModel, ShHrtfModel, SphereHead};
pub use set::{Ear, HrtfSet};
pub use solver::{MaglsProblem, MaglsSolution, SolverOptions};
