use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{image_source_scene, RoomSpec};
use crate::array::FrequencyGrid;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::sh::Direction;

/// A far-field plane wave: arrival direction, amplitude at the origin and
/// delay relative to the source signal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlaneWave {
    pub direction: Direction,
    pub gain: f64,
    /// Seconds.
    pub delay: f64,
}

/// A mono source reaching the array as a set of plane waves.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveScene {
    pub waves: Vec<PlaneWave>,
    /// Optional path of the mono source recording.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_audio: Option<String>,
    pub fs: f64,
}

impl PlaneWaveScene {
    pub fn new(waves: Vec<PlaneWave>, fs: f64) -> Result<Self> {
        let s = Self { waves, source_audio: None, fs };
        s.validate()?;
        Ok(s)
    }

    pub fn single(direction: Direction, fs: f64) -> Self {
        Self { waves: vec![PlaneWave { direction, gain: 1.0, delay: 0.0 }], source_audio: None, fs }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.fs > 0.0) {
            return Err(Error::input(format!("sample rate {} must be positive", self.fs)));
        }
        for (i, w) in self.waves.iter().enumerate() {
            if !w.gain.is_finite() {
                return Err(Error::input(format!("wave {i}: non-finite gain")));
            }
            if !(w.delay >= 0.0) || !w.delay.is_finite() {
                return Err(Error::input(format!("wave {i}: delay {} must be finite and ≥ 0", w.delay)));
            }
            Direction::new(w.direction.theta, w.direction.phi)?;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.waves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.waves.is_empty()
    }

    /// Latest arrival, in seconds.
    pub fn max_delay(&self) -> f64 {
        self.waves.iter().fold(0.0, |m, w| m.max(w.delay))
    }

    /// Wave amplitudes `s_q(k) = gain_q e^{−i2πf delay_q} S(k)`, `waves × bins`.
    /// `source` defaults to a unit spectrum.
    pub fn wave_spectra(&self, freqs: &FrequencyGrid, source: Option<&[C64]>) -> Result<CMatrix> {
        check_source(freqs, source)?;
        Ok(CMatrix::from_fn(self.waves.len(), freqs.len(), |q, j| {
            let w = &self.waves[q];
            let s = source.map_or(C64::new(1.0, 0.0), |s| s[j]);
            C64::from_polar(w.gain, -2.0 * std::f64::consts::PI * freqs.freq(j) * w.delay) * s
        }))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let scene: Self = serde_json::from_str(s)?;
        scene.validate()?;
        Ok(scene)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json()?)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

pub(crate) fn check_source(freqs: &FrequencyGrid, source: Option<&[C64]>) -> Result<()> {
    match source {
        Some(s) if s.len() != freqs.len() => {
            Err(Error::dim(format!("source spectrum of {} bins for a {}-bin grid", s.len(), freqs.len())))
        }
        _ => Ok(()),
    }
}

/// A scene document: either an explicit list of waves or a room to be
/// simulated.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SceneFile {
    Waves(PlaneWaveScene),
    Room { room: RoomSpec, #[serde(default = "default_fs")] fs: f64 },
}

fn default_fs() -> f64 {
    crate::DEFAULT_SAMPLE_RATE
}

impl SceneFile {
    pub fn load(path: &Path) -> Result<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
    }

    pub fn into_scene(self, sound_speed: f64) -> Result<PlaneWaveScene> {
        match self {
            SceneFile::Waves(s) => {
                s.validate()?;
                Ok(s)
            }
            SceneFile::Room { room, fs } => {
                let mut s = image_source_scene(&room, sound_speed)?;
                s.fs = fs;
                Ok(s)
            }
        }
    }
}
