//! Inputs shared by several commands: geometry, HRTF set, steering and the
//! design artifacts.

use std::path::{Path, PathBuf};

use asm_binaural::array::{steering_matrices, ArrayGeometry, EncodingFilter, FrequencyGrid, SteeringMatrix};
use asm_binaural::hrtf::{HrtfModel, HrtfSet, HrtfSh, ShHrtfModel, SphereHead};
use asm_binaural::sh::{lebedev_grid, wigner_d, DirectionGrid, RotationOp};

use crate::config::{rotation_tag, JobConfig};
use crate::error::{CliError, CliResult};

pub const GEOMETRY_FILE: &str = "geometry.json";
pub const FILTER_FILE: &str = "asm_filter.bin";
pub const HOA_HRTF_FILE: &str = "hrtf_ls_hoa.bin";
pub const LS_FILE: &str = "hrtf_ls.bin";
pub const MAGLS_FILE: &str = "hrtf_magls.bin";
pub const MAGLS_CROSSFADED_FILE: &str = "hrtf_magls_crossfaded.bin";

pub fn aa_magls_file(deg: f64) -> String {
    format!("hrtf_aa_magls_{}.bin", rotation_tag(deg))
}

pub fn aa_crossfaded_file(deg: f64) -> String {
    format!("hrtf_aa_magls_crossfaded_{}.bin", rotation_tag(deg))
}

pub fn frequency_grid(cfg: &JobConfig) -> CliResult<FrequencyGrid> {
    FrequencyGrid::new(cfg.fs, cfg.nfft).map_err(|e| CliError::config(e.to_string()))
}

/// Azimuthal head rotation at SH order `order`.
pub fn head_rotation(deg: f64, order: usize) -> RotationOp {
    wigner_d(deg.to_radians(), 0.0, order)
}

/// Reference HRTFs: a loaded interchange set, or the analytic rigid-sphere
/// head sampled on a Lebedev grid.
pub struct HrtfSource {
    pub set: HrtfSet,
    pub head: Option<SphereHead>,
    pub path: Option<PathBuf>,
}

impl HrtfSource {
    pub fn load(cfg: &JobConfig) -> CliResult<Self> {
        let freqs = frequency_grid(cfg)?;
        match &cfg.hrtf {
            Some(dir) => {
                let set = HrtfSet::load_dir(dir)?;
                if set.freqs != freqs {
                    return Err(CliError::config(format!(
                        "HRTF set is at {} Hz / nfft {}, config asks for {} Hz / nfft {}",
                        set.freqs.sample_rate, set.freqs.nfft, cfg.fs, cfg.nfft
                    )));
                }
                Ok(Self { set, head: None, path: Some(dir.clone()) })
            }
            None => {
                let grid = lebedev_grid(cfg.grid_size).map_err(|e| CliError::config(e.to_string()))?;
                let head = SphereHead { sound_speed: cfg.sound_speed, ..SphereHead::default() };
                let (left, right) = head.evaluate(grid.directions(), &freqs)?;
                let set = HrtfSet::new(grid, freqs, left, right)?;
                Ok(Self { set, head: Some(head), path: None })
            }
        }
    }

    pub fn grid(&self) -> &DirectionGrid {
        &self.set.grid
    }
}

pub fn steering(geom: &ArrayGeometry, grid: &DirectionGrid, cfg: &JobConfig) -> CliResult<Vec<SteeringMatrix>> {
    Ok(steering_matrices(geom, grid, &frequency_grid(cfg)?, cfg.sound_speed)?)
}

/// Everything `design` writes and `render`/`evaluate` read back.
pub struct Artifacts {
    pub dir: PathBuf,
    pub geometry: ArrayGeometry,
    pub filter: EncodingFilter,
    /// LS HRTF at `hrtf_order`.
    pub hoa: HrtfSh,
    /// LS HRTF at the Ambisonics order.
    pub ls: HrtfSh,
    pub magls_crossfaded: HrtfSh,
    /// Crossfaded AA-MagLS designs keyed by head rotation in degrees.
    pub aa: Vec<(f64, HrtfSh)>,
}

fn read<T>(dir: &Path, file: &str, f: impl FnOnce(&Path) -> asm_binaural::Result<T>) -> CliResult<T> {
    let path = dir.join(file);
    if !path.exists() {
        return Err(CliError::data(format!("missing design artifact {} (run `design` first)", path.display())));
    }
    f(&path).map_err(|e| CliError::data(format!("{}: {e}", path.display())))
}

impl Artifacts {
    pub fn load(cfg: &JobConfig, rotations: &[f64]) -> CliResult<Self> {
        let dir = cfg.design_dir().to_path_buf();
        let geometry = read(&dir, GEOMETRY_FILE, ArrayGeometry::load)?;
        let filter = read(&dir, FILTER_FILE, EncodingFilter::load)?;
        let hoa = read(&dir, HOA_HRTF_FILE, HrtfSh::load)?;
        let ls = read(&dir, LS_FILE, HrtfSh::load)?;
        let magls_crossfaded = read(&dir, MAGLS_CROSSFADED_FILE, HrtfSh::load)?;
        let aa = rotations
            .iter()
            .map(|&r| Ok((r, read(&dir, &aa_crossfaded_file(r), HrtfSh::load)?)))
            .collect::<CliResult<_>>()?;
        let freqs = frequency_grid(cfg)?;
        if filter.freqs != freqs {
            return Err(CliError::config(format!(
                "design was made for {} Hz / nfft {}, config asks for {} Hz / nfft {}",
                filter.freqs.sample_rate, filter.freqs.nfft, cfg.fs, cfg.nfft
            )));
        }
        Ok(Self { dir, geometry, filter, hoa, ls, magls_crossfaded, aa })
    }

    pub fn aa_for(&self, deg: f64) -> &HrtfSh {
        &self.aa.iter().find(|(r, _)| *r == deg).expect("rotation loaded").1
    }

    /// Files read from the design directory, for the manifest.
    pub fn files(&self) -> Vec<PathBuf> {
        let mut v: Vec<PathBuf> = [GEOMETRY_FILE, FILTER_FILE, HOA_HRTF_FILE, LS_FILE, MAGLS_CROSSFADED_FILE]
            .iter()
            .map(|f| self.dir.join(f))
            .collect();
        v.extend(self.aa.iter().map(|(r, _)| self.dir.join(aa_crossfaded_file(*r))));
        v
    }
}

/// The HRTF model used as ground truth in evaluation: the analytic head
/// when available, otherwise the high-order LS interpolation of the set.
pub fn reference_model(src: &HrtfSource, hoa: &HrtfSh) -> Box<dyn HrtfModel> {
    match src.head {
        Some(h) => Box::new(h),
        None => Box::new(ShHrtfModel { coeffs: hoa.clone() }),
    }
}
