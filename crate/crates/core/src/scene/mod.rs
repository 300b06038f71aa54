//! Acoustic scenes: plane-wave superpositions, shoebox rooms simulated with
//! the image method, and synthesis of microphone and reference binaural
//! signals from them.

mod noise;
mod plane_wave;
mod room;
mod synth;

pub use noise::NoiseModel;
pub use plane_wave::{PlaneWave, PlaneWaveScene, SceneFile};
pub use room::{image_source_scene, RoomSpec};
pub use synth::{
    mic_impulse_responses, mic_spectra, mic_spectra_on_grid, reference_binaural, scene_brir, snap_scene, Brir,
    ReferenceBinaural, SnapReport, SnapWarning, SNAP_WARNING_DEG,
};
