//! Binaural rendering, head rotation and frequency/time conversion.

mod binaural;
mod signal;
mod time;
mod wav;

pub use binaural::{render, BinauralSpectra};
pub use signal::ShSignal;
pub use time::{delay_spectrum, filter_audio, ola_convolve, spectrum_to_time, time_to_spectrum, RenderedAudio, StereoBuffer};
pub use wav::{read_wav, write_wav, WavFormat, WavInfo};
