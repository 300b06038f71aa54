//! Job configuration: one JSON document, environment overrides for the
//! output directory and thread count, then command-line overrides.

use std::path::{Path, PathBuf};

use asm_binaural::array::{
    caption_wearable_geometry, default_wearable_geometry, spherical_32_geometry, ArrayGeometry, DEFAULT_SNR_RATIO,
};
use asm_binaural::eval::DEFAULT_SVD_REL_TOL;
use asm_binaural::hrtf::{CrossfadeSpec, LowBand, SolverOptions};
use asm_binaural::render::WavFormat;
use asm_binaural::scene::RoomSpec;
use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

pub const CONFIG_SCHEMA_VERSION: u32 = 1;
pub const ENV_OUTPUT_DIR: &str = "ASM_BINAURAL_OUTPUT_DIR";
pub const ENV_THREADS: &str = "ASM_BINAURAL_THREADS";

/// The reproduction chains compared in the evaluation and listening test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Pipeline {
    /// High-order ideal Ambisonics with the LS HRTF (the reference).
    HoaHrtf,
    /// First-order ideal Ambisonics with the LS HRTF (the anchor).
    FoaHrtf,
    /// First-order ideal Ambisonics with the MagLS HRTF.
    FoaMagls,
    /// ASM encoding of the array with the MagLS HRTF.
    AsmMagls,
    /// ASM encoding of the array with the array-aware MagLS HRTF.
    AsmAamagls,
}

impl Pipeline {
    pub const ALL: [Pipeline; 5] =
        [Pipeline::HoaHrtf, Pipeline::FoaHrtf, Pipeline::FoaMagls, Pipeline::AsmMagls, Pipeline::AsmAamagls];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::HoaHrtf => "hoa_hrtf",
            Pipeline::FoaHrtf => "foa_hrtf",
            Pipeline::FoaMagls => "foa_magls",
            Pipeline::AsmMagls => "asm_magls",
            Pipeline::AsmAamagls => "asm_aamagls",
        }
    }

    /// Whether the chain goes through the microphone array (and therefore
    /// depends on the array and head orientation).
    pub fn uses_array(self) -> bool {
        matches!(self, Pipeline::AsmMagls | Pipeline::AsmAamagls)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum GeometryPreset {
    /// Five microphones at ±70°/±35°/0° on a 0.1 m rigid sphere.
    Wearable,
    /// Five microphones at ±80°/±40°/0° on a 0.1 m rigid sphere.
    WearableWide,
    /// 32-microphone near-uniform rigid sphere of radius 0.042 m.
    Sphere32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum RoomPreset {
    /// 8 × 6 × 4 m, rt60 0.4 s, source at (4, 3, 1.7), array at (2.6, 4.4, 1.7).
    Paper,
    /// The same geometry with the direct path only.
    Anechoic,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct JobConfig {
    pub schema_version: u32,
    /// Array geometry JSON; the preset is used when absent.
    pub geometry: Option<PathBuf>,
    pub geometry_preset: GeometryPreset,
    /// HRTF interchange directory; an analytic rigid-sphere head on a
    /// Lebedev grid of `grid_size` points is used when absent.
    pub hrtf: Option<PathBuf>,
    /// Scene JSON (plane waves or a room); the room preset is used when absent.
    pub scene: Option<PathBuf>,
    /// Mono source WAV for rendering and microphone signals.
    pub source: Option<PathBuf>,
    /// Where `render` and `evaluate` read design artifacts; defaults to
    /// `output_dir`.
    pub design_dir: Option<PathBuf>,
    pub output_dir: PathBuf,
    pub pipelines: Vec<Pipeline>,
    /// Ambisonics order `N_a` of the ASM encoder and the low-order HRTFs.
    pub order: usize,
    /// SH order of the reference (HOA) HRTF.
    pub hrtf_order: usize,
    /// Highest order reported by `analyze-array` for the null-space metric.
    pub null_space_order: usize,
    pub snr_ratio: f64,
    pub fade_min: f64,
    pub fade_max: f64,
    /// Head rotations (azimuth, degrees) evaluated by `evaluate`.
    pub rotations: Vec<f64>,
    /// Head rotations rendered by `render`; the array is yawed by the
    /// opposite angle during capture.
    pub render_rotations: Vec<f64>,
    pub fs: f64,
    pub nfft: usize,
    pub svd_rel_tol: f64,
    pub grid_size: usize,
    pub sound_speed: f64,
    pub room_preset: RoomPreset,
    pub room: Option<RoomSpec>,
    /// Azimuths in the ITD/ILD sweep.
    pub azimuths: usize,
    pub low_band: LowBand,
    pub max_iter: usize,
    pub rel_tol: f64,
    /// Samples of bulk delay added to rendered impulse responses.
    pub bulk_delay: Option<usize>,
    /// Sensor noise variance added to synthesized microphone signals.
    pub noise_variance: f64,
    pub seed: u64,
    /// Whether `scene-gen` also synthesizes microphone signals.
    pub mic_signals: bool,
    pub wav_format: WavFormat,
    pub threads: Option<usize>,
}

impl Default for JobConfig {
    fn default() -> Self {
        let solver = SolverOptions::default();
        let fade = CrossfadeSpec::default();
        Self {
            schema_version: CONFIG_SCHEMA_VERSION,
            geometry: None,
            geometry_preset: GeometryPreset::Wearable,
            hrtf: None,
            scene: None,
            source: None,
            design_dir: None,
            output_dir: PathBuf::from("out"),
            pipelines: Pipeline::ALL.to_vec(),
            order: 1,
            hrtf_order: 30,
            null_space_order: 2,
            snr_ratio: DEFAULT_SNR_RATIO,
            fade_min: fade.f_min,
            fade_max: fade.f_max,
            rotations: vec![0.0, 30.0, 60.0],
            render_rotations: vec![0.0, 60.0],
            fs: asm_binaural::DEFAULT_SAMPLE_RATE,
            nfft: 1024,
            svd_rel_tol: DEFAULT_SVD_REL_TOL,
            grid_size: 2702,
            sound_speed: asm_binaural::SOUND_SPEED,
            room_preset: RoomPreset::Paper,
            room: None,
            azimuths: 360,
            low_band: LowBand::default(),
            max_iter: solver.max_iter,
            rel_tol: solver.rel_tol,
            bulk_delay: None,
            noise_variance: 0.0,
            seed: 0,
            mic_signals: false,
            wav_format: WavFormat::Float32,
            threads: None,
        }
    }
}

/// Per-field overrides from the command line; `None` keeps the config value.
#[derive(Debug, Clone, Default, clap::Args)]
pub struct Overrides {
    /// JSON job configuration.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long)]
    pub geometry: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub geometry_preset: Option<GeometryPreset>,
    #[arg(long)]
    pub hrtf: Option<PathBuf>,
    #[arg(long)]
    pub scene: Option<PathBuf>,
    #[arg(long)]
    pub source: Option<PathBuf>,
    #[arg(long)]
    pub design_dir: Option<PathBuf>,
    #[arg(long, value_enum, value_delimiter = ',')]
    pub pipelines: Option<Vec<Pipeline>>,
    #[arg(long)]
    pub order: Option<usize>,
    #[arg(long)]
    pub hrtf_order: Option<usize>,
    #[arg(long)]
    pub snr_ratio: Option<f64>,
    #[arg(long)]
    pub fade_min: Option<f64>,
    #[arg(long)]
    pub fade_max: Option<f64>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub rotations: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub render_rotations: Option<Vec<f64>>,
    #[arg(long)]
    pub fs: Option<f64>,
    #[arg(long)]
    pub nfft: Option<usize>,
    #[arg(long)]
    pub svd_rel_tol: Option<f64>,
    #[arg(long)]
    pub grid_size: Option<usize>,
    #[arg(long, value_enum)]
    pub room_preset: Option<RoomPreset>,
    #[arg(long)]
    pub azimuths: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub mic_signals: bool,
}

impl JobConfig {
    /// Parses a config document. Relative paths are resolved against `base`.
    pub fn from_json(text: &str, base: &Path) -> CliResult<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| CliError::config(format!("config is not valid JSON: {e}")))?;
        match value.get("schema_version").and_then(|v| v.as_u64()) {
            Some(v) if v == CONFIG_SCHEMA_VERSION as u64 => {}
            Some(v) => return Err(CliError::config(format!("unsupported config schema_version {v}"))),
            None => return Err(CliError::config("config is missing schema_version")),
        }
        let mut cfg: JobConfig = serde_json::from_value(value).map_err(|e| CliError::config(e.to_string()))?;
        for p in [&mut cfg.geometry, &mut cfg.hrtf, &mut cfg.scene, &mut cfg.source, &mut cfg.design_dir]
            .into_iter()
            .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
        if cfg.output_dir.is_relative() {
            cfg.output_dir = base.join(&cfg.output_dir);
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(format!("cannot read config {}: {e}", path.display())))?;
        Self::from_json(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// Config file (or defaults), then environment, then flags.
    pub fn resolve(ov: &Overrides, env: impl Fn(&str) -> Option<String>) -> CliResult<Self> {
        let mut cfg = match &ov.config {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        if let Some(dir) = env(ENV_OUTPUT_DIR) {
            cfg.output_dir = PathBuf::from(dir);
        }
        if let Some(t) = env(ENV_THREADS) {
            let n = t.parse().map_err(|_| CliError::config(format!("{ENV_THREADS}={t} is not a thread count")))?;
            cfg.threads = Some(n);
        }
        cfg.apply(ov);
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply(&mut self, ov: &Overrides) {
        macro_rules! set {
            ($($f:ident),*) => {$(if let Some(v) = &ov.$f { self.$f = v.clone().into(); })*};
        }
        set!(output_dir, geometry_preset, pipelines, order, hrtf_order, snr_ratio, fade_min, fade_max);
        set!(rotations, render_rotations, fs, nfft, svd_rel_tol, grid_size, room_preset, azimuths, seed);
        set!(threads, geometry, hrtf, scene, source, design_dir);
        if ov.mic_signals {
            self.mic_signals = true;
        }
    }

    pub fn validate(&self) -> CliResult<()> {
        let bad = |msg: String| Err(CliError::Config(msg));
        if self.schema_version != CONFIG_SCHEMA_VERSION {
            return bad(format!("unsupported schema_version {}", self.schema_version));
        }
        for (label, p) in [("geometry", &self.geometry), ("hrtf", &self.hrtf), ("scene", &self.scene), ("source", &self.source)]
        {
            if let Some(p) = p {
                if !p.exists() {
                    return bad(format!("{label} file {} does not exist", p.display()));
                }
            }
        }
        if self.pipelines.is_empty() {
            return bad("no pipelines selected".into());
        }
        if !(self.snr_ratio > 0.0 && self.snr_ratio.is_finite()) {
            return bad(format!("snr_ratio must be positive, got {}", self.snr_ratio));
        }
        if !(self.fs > 0.0 && self.fs.is_finite()) || self.fs.fract() != 0.0 {
            return bad(format!("fs must be a positive integer rate, got {}", self.fs));
        }
        if self.nfft < 4 || self.nfft % 2 != 0 {
            return bad(format!("nfft must be even and at least 4, got {}", self.nfft));
        }
        if self.hrtf_order < self.order {
            return bad(format!("hrtf_order {} below order {}", self.hrtf_order, self.order));
        }
        if !(self.svd_rel_tol > 0.0 && self.svd_rel_tol < 1.0) {
            return bad(format!("svd_rel_tol must be in (0, 1), got {}", self.svd_rel_tol));
        }
        if !(self.sound_speed > 0.0) {
            return bad(format!("sound_speed must be positive, got {}", self.sound_speed));
        }
        if self.azimuths == 0 {
            return bad("azimuths must be positive".into());
        }
        if self.rotations.iter().chain(&self.render_rotations).any(|r| !r.is_finite()) {
            return bad("rotations must be finite".into());
        }
        if !(self.noise_variance >= 0.0) {
            return bad(format!("noise_variance must be nonnegative, got {}", self.noise_variance));
        }
        if self.threads == Some(0) {
            return bad("threads must be positive".into());
        }
        if let Some(d) = self.bulk_delay {
            if d >= self.nfft {
                return bad(format!("bulk_delay {d} must be below nfft {}", self.nfft));
            }
        }
        CrossfadeSpec::new(self.fade_min, self.fade_max).map_err(|e| CliError::config(e.to_string()))?;
        Ok(())
    }

    pub fn fade(&self) -> CrossfadeSpec {
        CrossfadeSpec { f_min: self.fade_min, f_max: self.fade_max }
    }

    pub fn solver(&self) -> SolverOptions {
        SolverOptions { max_iter: self.max_iter, rel_tol: self.rel_tol }
    }

    pub fn design_dir(&self) -> &Path {
        self.design_dir.as_deref().unwrap_or(&self.output_dir)
    }

    pub fn bulk_delay(&self) -> usize {
        self.bulk_delay.unwrap_or(self.nfft / 8)
    }

    pub fn geometry(&self) -> CliResult<ArrayGeometry> {
        match &self.geometry {
            Some(p) => ArrayGeometry::load(p).map_err(|e| CliError::config(format!("geometry {}: {e}", p.display()))),
            None => Ok(match self.geometry_preset {
                GeometryPreset::Wearable => default_wearable_geometry(),
                GeometryPreset::WearableWide => caption_wearable_geometry(),
                GeometryPreset::Sphere32 => spherical_32_geometry(0.042),
            }),
        }
    }

    pub fn room(&self) -> RoomSpec {
        match (&self.room, self.room_preset) {
            (Some(r), _) => r.clone(),
            (None, RoomPreset::Paper) => RoomSpec::paper_room(),
            (None, RoomPreset::Anechoic) => RoomSpec::anechoic(),
        }
    }

    /// Every head rotation that needs an AA-MagLS design.
    pub fn design_rotations(&self) -> Vec<f64> {
        let mut all: Vec<f64> = vec![];
        for &r in self.rotations.iter().chain(&self.render_rotations) {
            if !all.contains(&r) {
                all.push(r);
            }
        }
        all
    }
}

/// File-name tag of a rotation: `rot0`, `rot30`, `rot-60`, `rot12.5`.
pub fn rotation_tag(deg: f64) -> String {
    format!("rot{}", deg + 0.0)
}
