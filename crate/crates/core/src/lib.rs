//! Array-aware Ambisonics encoding and HRTF preprocessing for binaural
//! reproduction from arbitrary (wearable) microphone arrays.
//!
//! The crate is organised bottom-up:
//!
//! - [`sh`]: complex spherical harmonics, Lebedev grids, Wigner-D rotations
//!   and the rigid-sphere radial terms.
//! - [`array`]: array geometry, steering matrices and the signal-independent
//!   Ambisonics Signal Matching (ASM) encoder with Tikhonov regularization.
//! - [`hrtf`]: HRTF sets, least-squares / MagLS / array-aware MagLS encoding
//!   and the low/high frequency crossfade.
//! - [`render`]: binaural rendering with head-rotation compensation and
//!   frequency/time conversion.
//! - [`eval`]: encodability, magnitude, binaural error and ITD/ILD metrics.
//! - [`scene`]: plane-wave and shoebox image-source scenes, microphone and
//!   reference binaural signal synthesis.
//!
//! All spectra follow the `e^{+iωt}` time convention of spherical acoustics,
//! which coincides with the sign convention of a forward DFT: a plane wave
//! arriving from unit direction `u` is observed at position `r` as
//! `exp(i k u·r)`, and a delay `τ` is the factor `exp(-i 2π f τ)`.

pub mod array;
pub mod error;
pub mod eval;
pub mod hrtf;
pub mod linalg;
pub mod render;
pub mod scene;
pub mod sh;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};

/// Speed of sound used throughout unless overridden, in m/s.
pub const SOUND_SPEED: f64 = 343.0;

/// Default audio sample rate in Hz.
pub const DEFAULT_SAMPLE_RATE: f64 = 48_000.0;
