//! Microphone-array geometry, steering matrices and the ASM encoder.

mod encode;
mod filter;
mod freq;
mod geometry;
mod steering;

pub use encode::{encode, tilde_reindex, MicSpectra};
pub(crate) use encode::{tilde_reindex_cols, tilde_reindex_rows};
pub use filter::{asm_filter, asm_filter_weighted, EncodingFilter, DEFAULT_SNR_RATIO, FilterHeader};
pub use freq::FrequencyGrid;
pub use geometry::{
    caption_wearable_geometry, default_wearable_geometry, spherical_32_geometry, ArrayGeometry, Mic, Mount,
};
pub use steering::{default_truncation_order, steering_matrices, steering_matrix, SteeringMatrix};
