use std::path::PathBuf;

use asm_binaural::array::FrequencyGrid;
use asm_binaural::eval::{AsmMethod, BinauralMethod, IdealAmbisonicsMethod};
use asm_binaural::hrtf::HrtfSet;
use asm_binaural::render::{ola_convolve, read_wav, write_wav, StereoBuffer};
use asm_binaural::scene::{scene_brir, snap_scene, Brir, PlaneWaveScene};
use asm_binaural::sh::DirectionGrid;
use serde::Serialize;
use serde_json::json;

use super::{load_scene, prepare_output};
use crate::config::{rotation_tag, JobConfig, Pipeline};
use crate::error::{CliError, CliResult};
use crate::manifest::Manifest;
use crate::setup::*;

/// One rendered condition of one pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct Stimulus {
    pub name: String,
    pub pipeline: Pipeline,
    /// Head rotation applied to the HRTF (the array is yawed by the
    /// opposite angle); `None` for the array-independent pipelines.
    pub rotation_deg: Option<f64>,
}

/// The stimulus list: each ideal pipeline once, each array pipeline once
/// per render rotation.
pub fn stimuli(cfg: &JobConfig) -> Vec<Stimulus> {
    let mut out = vec![];
    for &p in Pipeline::ALL.iter().filter(|p| cfg.pipelines.contains(p) && !p.uses_array()) {
        out.push(Stimulus { name: p.name().to_string(), pipeline: p, rotation_deg: None });
    }
    for &deg in &cfg.render_rotations {
        for &p in Pipeline::ALL.iter().filter(|p| cfg.pipelines.contains(p) && p.uses_array()) {
            out.push(Stimulus { name: format!("{}_{}", p.name(), rotation_tag(deg)), pipeline: p, rotation_deg: Some(deg) });
        }
    }
    out
}

/// Scene as seen from an array yawed by `-deg`.
pub fn array_frame_scene(scene: &PlaneWaveScene, deg: f64) -> PlaneWaveScene {
    let r = head_rotation(deg, 1).rotation_matrix();
    let mut s = scene.clone();
    for w in &mut s.waves {
        w.direction = w.direction.rotated(&r);
    }
    s
}

/// Binaural room impulse response of `scene` through `method`, with wave
/// directions snapped to `grid`.
pub fn method_brir(
    method: &dyn BinauralMethod,
    scene: &PlaneWaveScene,
    grid: &DirectionGrid,
    freqs: &FrequencyGrid,
    bulk_delay: usize,
) -> CliResult<Brir> {
    let mut used = snap_scene(scene, grid).indices;
    used.sort_unstable();
    used.dedup();
    let dirs: Vec<_> = used.iter().map(|&i| grid.directions()[i]).collect();
    let (left, right) = method.responses(&dirs, freqs)?;
    let set = HrtfSet::new(DirectionGrid::uniform(grid.name.clone(), dirs)?, *freqs, left, right)?;
    Ok(scene_brir(scene, &set, bulk_delay)?)
}

fn method_for(p: Pipeline, deg: Option<f64>, art: &Artifacts, cfg: &JobConfig) -> Box<dyn BinauralMethod> {
    let asm = |hrtf: &asm_binaural::hrtf::HrtfSh| -> Box<dyn BinauralMethod> {
        let deg = deg.unwrap_or(0.0);
        Box::new(AsmMethod {
            geometry: art.geometry.clone(),
            filter: art.filter.clone(),
            hrtf: hrtf.clone(),
            rotation: (deg != 0.0).then(|| head_rotation(deg, art.filter.order)),
            sound_speed: cfg.sound_speed,
        })
    };
    match p {
        Pipeline::HoaHrtf => Box::new(IdealAmbisonicsMethod { hrtf: art.hoa.clone(), order: art.hoa.order, rotation: None }),
        Pipeline::FoaHrtf => Box::new(IdealAmbisonicsMethod { hrtf: art.ls.clone(), order: cfg.order, rotation: None }),
        Pipeline::FoaMagls => {
            Box::new(IdealAmbisonicsMethod { hrtf: art.magls_crossfaded.clone(), order: cfg.order, rotation: None })
        }
        Pipeline::AsmMagls => asm(&art.magls_crossfaded),
        Pipeline::AsmAamagls => asm(art.aa_for(deg.unwrap_or(0.0))),
    }
}

fn load_source(cfg: &JobConfig, scene_source: Option<PathBuf>) -> CliResult<Option<(PathBuf, Vec<f64>)>> {
    let Some(path) = cfg.source.clone().or(scene_source) else {
        return Ok(None);
    };
    if !path.exists() {
        return Err(CliError::config(format!("source audio {} does not exist", path.display())));
    }
    let (rate, mut channels) = read_wav(&path)?;
    if rate as f64 != cfg.fs {
        return Err(CliError::data(format!("source {} is at {rate} Hz, render runs at {} Hz", path.display(), cfg.fs)));
    }
    if channels.is_empty() {
        return Err(CliError::data(format!("source {} has no channels", path.display())));
    }
    Ok(Some((path, channels.swap_remove(0))))
}

/// Renders every stimulus to a stereo WAV. Without a source recording the
/// WAVs hold the binaural room impulse responses. All stimuli share one
/// peak-normalization gain.
pub fn render(cfg: &JobConfig) -> CliResult<Manifest> {
    let out = prepare_output(cfg)?;
    let freqs = frequency_grid(cfg)?;
    let list = stimuli(cfg);
    let aa_rots: Vec<f64> =
        if cfg.pipelines.contains(&Pipeline::AsmAamagls) { cfg.render_rotations.clone() } else { vec![] };
    let art = Artifacts::load(cfg, &aa_rots)?;
    let src = HrtfSource::load(cfg)?;
    let (scene, scene_path, scene_source) = load_scene(cfg)?;
    if scene.fs != cfg.fs {
        return Err(CliError::config(format!("scene is at {} Hz, render runs at {} Hz", scene.fs, cfg.fs)));
    }
    let source = load_source(cfg, scene_source)?;
    let bulk = cfg.bulk_delay();

    let mut rendered: Vec<(Stimulus, StereoBuffer, Brir)> = vec![];
    for st in list {
        let s = match st.rotation_deg {
            Some(deg) if deg != 0.0 => array_frame_scene(&scene, deg),
            _ => scene.clone(),
        };
        let method = method_for(st.pipeline, st.rotation_deg, &art, cfg);
        let brir = method_brir(method.as_ref(), &s, src.grid(), &freqs, bulk)?;
        let audio = match &source {
            Some((_, x)) => StereoBuffer {
                sample_rate: cfg.fs,
                left: ola_convolve(x, &brir.audio.left),
                right: ola_convolve(x, &brir.audio.right),
            },
            None => brir.audio.clone(),
        };
        rendered.push((st, audio, brir));
    }
    let peak = rendered.iter().map(|(_, a, _)| a.peak()).fold(0.0, f64::max);
    let gain = if peak > 0.0 { 0.99 / peak } else { 1.0 };

    let mut outputs = vec![];
    let mut entries = vec![];
    for (st, audio, brir) in &rendered {
        let file = format!("{}.wav", st.name);
        let l: Vec<f64> = audio.left.iter().map(|x| x * gain).collect();
        let r: Vec<f64> = audio.right.iter().map(|x| x * gain).collect();
        write_wav(&out.join(&file), &[&l, &r], cfg.fs as u32, cfg.wav_format)?;
        entries.push(json!({
            "file": file,
            "stimulus": st,
            "frames": l.len(),
            "peak_before_gain": audio.peak(),
            "snap_max_angle_deg": brir.snap.max_angle_deg,
            "snap_warnings": brir.snap.warnings.len(),
        }));
        outputs.push(file);
    }
    let details = json!({
        "normalization": {"mode": "batch_peak", "target_peak": 0.99, "gain": gain},
        "latency_samples": bulk,
        "waves": scene.len(),
        "source": source.as_ref().map(|(p, _)| p.display().to_string()),
        "stimuli": entries,
    });
    let mut inputs = art.files();
    inputs.extend(scene_path);
    inputs.extend(source.map(|(p, _)| p));
    inputs.extend(src.path.clone());
    let m = Manifest::new("render", cfg, &inputs, &outputs, details)?;
    m.save(&out)?;
    Ok(m)
}

