mod analyze;
mod design;
mod evaluate;
mod render;
mod scene;

use std::path::PathBuf;

use asm_binaural::eval::Report;
use asm_binaural::scene::{image_source_scene, PlaneWaveScene, SceneFile};

pub use analyze::analyze_array;
pub use design::design;
pub use evaluate::evaluate;
pub use render::{array_frame_scene, method_brir, render, stimuli, Stimulus};
pub use scene::{scene_gen, MIC_FILE, SCENE_FILE};

use crate::config::JobConfig;
use crate::error::{CliError, CliResult};
use crate::manifest::Manifest;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Null-space and magnitude curves of the array encoder.
    AnalyzeArray,
    /// ASM filter and LS / MagLS / AA-MagLS HRTF encodings.
    Design,
    /// Binaural stimuli for each pipeline and head rotation.
    Render,
    /// Binaural error curves and ITD/ILD sweeps.
    Evaluate,
    /// Image-source scene of a room, optionally with microphone signals.
    SceneGen,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::AnalyzeArray => "analyze-array",
            Command::Design => "design",
            Command::Render => "render",
            Command::Evaluate => "evaluate",
            Command::SceneGen => "scene-gen",
        }
    }
}

pub fn run(cmd: Command, cfg: &JobConfig) -> CliResult<Manifest> {
    match cmd {
        Command::AnalyzeArray => analyze_array(cfg),
        Command::Design => design(cfg),
        Command::Render => render(cfg),
        Command::Evaluate => evaluate(cfg),
        Command::SceneGen => scene_gen(cfg),
    }
}

fn prepare_output(cfg: &JobConfig) -> CliResult<PathBuf> {
    std::fs::create_dir_all(&cfg.output_dir).map_err(|e| {
        CliError::config(format!("cannot create output directory {}: {e}", cfg.output_dir.display()))
    })?;
    Ok(cfg.output_dir.clone())
}

/// Writes `<stem>.csv` and `<stem>.json`; returns both file names.
fn write_report<R: Report>(cfg: &JobConfig, stem: &str, report: &R) -> CliResult<Vec<String>> {
    let csv = format!("{stem}.csv");
    let json = format!("{stem}.json");
    report.save_csv(cfg.output_dir.join(&csv))?;
    report.save_json(cfg.output_dir.join(&json))?;
    Ok(vec![csv, json])
}

/// The configured scene file, or the room preset. Also returns the scene
/// path and the source recording it names, resolved against its folder.
fn load_scene(cfg: &JobConfig) -> CliResult<(PlaneWaveScene, Option<PathBuf>, Option<PathBuf>)> {
    match &cfg.scene {
        Some(path) => {
            let file = SceneFile::load(path).map_err(|e| CliError::config(format!("scene {}: {e}", path.display())))?;
            let scene = file.into_scene(cfg.sound_speed)?;
            let source = scene.source_audio.as_ref().map(|s| {
                let p = PathBuf::from(s);
                if p.is_relative() {
                    path.parent().map(|d| d.join(&p)).unwrap_or(p)
                } else {
                    p
                }
            });
            Ok((scene, Some(path.clone()), source))
        }
        None => {
            let mut scene = image_source_scene(&cfg.room(), cfg.sound_speed)?;
            scene.fs = cfg.fs;
            Ok((scene, None, None))
        }
    }
}
