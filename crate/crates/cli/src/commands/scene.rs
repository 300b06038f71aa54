use asm_binaural::render::{ola_convolve, read_wav, write_wav};
use asm_binaural::scene::{image_source_scene, mic_impulse_responses, NoiseModel};
use asm_binaural::sh::lebedev_grid;
use serde_json::json;

use super::prepare_output;
use crate::config::JobConfig;
use crate::error::{CliError, CliResult};
use crate::manifest::Manifest;
use crate::setup::{frequency_grid, steering};

pub const SCENE_FILE: &str = "scene.json";
pub const MIC_FILE: &str = "mic_signals.wav";

/// Image-source scene of the configured room, optionally with synthesized
/// microphone signals.
pub fn scene_gen(cfg: &JobConfig) -> CliResult<Manifest> {
    let out = prepare_output(cfg)?;
    let room = cfg.room();
    let mut scene = image_source_scene(&room, cfg.sound_speed)?;
    scene.fs = cfg.fs;
    let (k, cutoff) = room.image_limits(cfg.sound_speed);
    scene.save(&out.join(SCENE_FILE))?;
    let mut outputs = vec![SCENE_FILE.to_string()];
    let mut inputs = vec![];
    let mut mic = serde_json::Value::Null;
    if cfg.mic_signals {
        let Some(src_path) = &cfg.source else {
            return Err(CliError::config("mic_signals needs a source recording"));
        };
        let (rate, channels) = read_wav(src_path)?;
        if rate as f64 != cfg.fs {
            return Err(CliError::data(format!("source is at {rate} Hz, scene at {} Hz", cfg.fs)));
        }
        let x = channels.into_iter().next().ok_or_else(|| CliError::data("source has no channels"))?;
        let geom = cfg.geometry()?;
        let grid = lebedev_grid(cfg.grid_size).map_err(|e| CliError::config(e.to_string()))?;
        let vs = steering(&geom, &grid, cfg)?;
        let (irs, snap) = mic_impulse_responses(&scene, &vs, &grid, &frequency_grid(cfg)?, cfg.bulk_delay())?;
        let mut sig: Vec<Vec<f64>> = irs.iter().map(|ir| ola_convolve(&x, ir)).collect();
        if cfg.noise_variance > 0.0 {
            let len = sig[0].len();
            let noise = NoiseModel::new(cfg.noise_variance, cfg.seed)?.time(sig.len(), len);
            for (s, n) in sig.iter_mut().zip(noise) {
                s.iter_mut().zip(n).for_each(|(a, b)| *a += b);
            }
        }
        let peak = sig.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        let gain = if peak > 0.0 { 0.99 / peak } else { 1.0 };
        sig.iter_mut().flatten().for_each(|v| *v *= gain);
        let refs: Vec<&[f64]> = sig.iter().map(|s| s.as_slice()).collect();
        write_wav(&out.join(MIC_FILE), &refs, cfg.fs as u32, cfg.wav_format)?;
        outputs.push(MIC_FILE.to_string());
        inputs.push(src_path.clone());
        inputs.extend(cfg.geometry.clone());
        mic = json!({
            "channels": sig.len(),
            "frames": sig[0].len(),
            "latency_samples": cfg.bulk_delay(),
            "normalization": {"mode": "peak", "target_peak": 0.99, "gain": gain},
            "snap_max_angle_deg": snap.max_angle_deg,
            "snap_warnings": snap.warnings.len(),
        });
    }
    let details = json!({
        "room": room,
        "waves": scene.len(),
        "image_order": k,
        "distance_cutoff_m": cutoff,
        "direct_azimuth_deg": room.direct_azimuth_deg(),
        "mic_signals": mic,
    });
    let m = Manifest::new("scene-gen", cfg, &inputs, &outputs, details)?;
    m.save(&out)?;
    Ok(m)
}
