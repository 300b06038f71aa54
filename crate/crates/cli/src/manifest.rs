use std::io::Read;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::JobConfig;
use crate::error::CliResult;

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileHash {
    pub path: String,
    pub sha256: String,
}

/// Record of one command invocation: the resolved parameters, hashes of
/// everything read and written, and command-specific details.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub command: String,
    pub tool_version: String,
    pub config: JobConfig,
    pub config_sha256: String,
    pub inputs: Vec<FileHash>,
    pub outputs: Vec<FileHash>,
    pub details: serde_json::Value,
}

pub fn sha256_file(path: &Path) -> CliResult<String> {
    let mut f = std::fs::File::open(path)?;
    let mut hasher = Sha256::new();
    let mut buf = vec![0u8; 1 << 16];
    loop {
        let n = f.read(&mut buf)?;
        if n == 0 {
            break;
        }
        hasher.update(&buf[..n]);
    }
    Ok(format!("{:x}", hasher.finalize()))
}

/// Hashes every regular file under `path` (a file or a directory), in
/// sorted order, labelled relative to `base`.
pub fn hash_tree(path: &Path, base: &Path) -> CliResult<Vec<FileHash>> {
    let mut files: Vec<PathBuf> = vec![];
    collect(path, &mut files)?;
    files.sort();
    files
        .iter()
        .map(|f| {
            let label = f.strip_prefix(base).unwrap_or(f).to_string_lossy().replace('\\', "/");
            Ok(FileHash { path: label, sha256: sha256_file(f)? })
        })
        .collect()
}

fn collect(path: &Path, out: &mut Vec<PathBuf>) -> CliResult<()> {
    if path.is_dir() {
        for entry in std::fs::read_dir(path)? {
            collect(&entry?.path(), out)?;
        }
    } else if path.is_file() {
        out.push(path.to_path_buf());
    }
    Ok(())
}

impl Manifest {
    /// Builds the manifest after the command has written `outputs`
    /// (paths relative to the output directory).
    pub fn new(
        command: &str,
        cfg: &JobConfig,
        inputs: &[PathBuf],
        outputs: &[String],
        details: serde_json::Value,
    ) -> CliResult<Self> {
        let config_json = serde_json::to_vec(cfg)?;
        let mut input_hashes = vec![];
        for p in inputs {
            input_hashes.extend(hash_tree(p, Path::new(""))?);
        }
        let output_hashes = outputs
            .iter()
            .map(|o| Ok(FileHash { path: o.clone(), sha256: sha256_file(&cfg.output_dir.join(o))? }))
            .collect::<CliResult<_>>()?;
        Ok(Self {
            schema_version: MANIFEST_SCHEMA_VERSION,
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            config: cfg.clone(),
            config_sha256: format!("{:x}", Sha256::digest(&config_json)),
            inputs: input_hashes,
            outputs: output_hashes,
            details,
        })
    }

    /// Each command keeps its own manifest so commands can share a directory.
    pub fn file_name(command: &str) -> String {
        format!("{command}.manifest.json")
    }

    pub fn save(&self, dir: &Path) -> CliResult<()> {
        std::fs::write(dir.join(Self::file_name(&self.command)), serde_json::to_string_pretty(self)?)?;
        Ok(())
    }

    pub fn load(dir: &Path, command: &str) -> CliResult<Self> {
        Ok(serde_json::from_str(&std::fs::read_to_string(dir.join(Self::file_name(command)))?)?)
    }
}
