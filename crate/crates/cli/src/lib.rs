//! Command-line frontend: array analysis, filter and HRTF design,
//! rendering, evaluation sweeps and scene generation.
//!
//! Every command reads one [`JobConfig`], writes into its output directory
//! and leaves a `<command>.manifest.json` with the resolved parameters and
//! SHA-256 hashes of its inputs and outputs.

pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod setup;

use clap::{Parser, Subcommand};

pub use commands::{run, Command};
pub use config::{JobConfig, Overrides, Pipeline};
pub use error::{CliError, CliResult};
pub use manifest::Manifest;

#[derive(Debug, Parser)]
#[command(name = "asm-binaural", version, about = "Array-aware Ambisonics encoding and binaural rendering")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Null-space and magnitude curves of the array encoder.
    AnalyzeArray(Overrides),
    /// ASM filter and LS / MagLS / AA-MagLS HRTF encodings.
    Design(Overrides),
    /// Binaural stimuli for each pipeline and head rotation.
    Render(Overrides),
    /// Binaural error curves and ITD/ILD sweeps.
    Evaluate(Overrides),
    /// Image-source scene of a room, optionally with microphone signals.
    SceneGen(Overrides),
}

impl CliCommand {
    pub fn split(&self) -> (Command, &Overrides) {
        match self {
            CliCommand::AnalyzeArray(o) => (Command::AnalyzeArray, o),
            CliCommand::Design(o) => (Command::Design, o),
            CliCommand::Render(o) => (Command::Render, o),
            CliCommand::Evaluate(o) => (Command::Evaluate, o),
            CliCommand::SceneGen(o) => (Command::SceneGen, o),
        }
    }
}

/// Resolves the configuration and runs the command. The global thread pool
/// is sized once per process; later requests are ignored.
pub fn execute(cli: &Cli, env: impl Fn(&str) -> Option<String>) -> CliResult<Manifest> {
    let (cmd, ov) = cli.command.split();
    let cfg = JobConfig::resolve(ov, env)?;
    if let Some(n) = cfg.threads {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    run(cmd, &cfg)
}
