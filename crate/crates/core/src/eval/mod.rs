//! Objective metrics: encodability, effective magnitude, binaural errors
//! under head rotation, and ITD/ILD lateralization analysis.

mod binaural;
mod export;
mod ild;
mod itd;
mod lateralization;
mod magnitude;
mod null_space;

pub use binaural::{binaural_errors, BinauralErrorReport, BinauralErrorRow, EarErrors};
pub use export::{Report, REPORT_SCHEMA_VERSION};
pub use ild::{ild, ErbBank, ErbSpec, IldResult};
pub use itd::{itd, lowpass_zero_phase};
pub use lateralization::{
    lateralization_sweep, AsmMethod, BinauralMethod, IdealAmbisonicsMethod, LateralizationReport, LateralizationRow,
    ReferenceMethod, SweepOptions,
};
pub use magnitude::{magnitude_metrics, MagnitudeReport};
pub use null_space::{null_space_metric, null_space_report, NullSpaceReport, DEFAULT_SVD_REL_TOL, THRESHOLD_DB};

/// `10 log10(x)` with a floor at −300 dB for zero.
pub(crate) fn db10(x: f64) -> f64 {
    10.0 * x.max(1e-30).log10()
}
