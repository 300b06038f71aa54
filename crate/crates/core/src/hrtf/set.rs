use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::array::FrequencyGrid;
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64};
use crate::sh::DirectionGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ear {
    Left,
    Right,
}

impl Ear {
    pub const BOTH: [Ear; 2] = [Ear::Left, Ear::Right];

    pub fn index(self) -> usize {
        match self {
            Ear::Left => 0,
            Ear::Right => 1,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Ear::Left => "left",
            Ear::Right => "right",
        }
    }
}

/// Free-field HRTFs on a direction grid: `Q × bins` per ear.
#[derive(Debug, Clone, PartialEq)]
pub struct HrtfSet {
    pub grid: DirectionGrid,
    pub freqs: FrequencyGrid,
    pub left: CMatrix,
    pub right: CMatrix,
}

#[derive(Debug, Serialize, Deserialize)]
struct EarFiles {
    left: String,
    right: String,
}

#[derive(Debug, Serialize, Deserialize)]
struct Manifest {
    format_version: u32,
    sample_rate: f64,
    nfft: usize,
    q: usize,
    grid_name: String,
    grid_csv: String,
    ears: EarFiles,
}

const FORMAT_VERSION: u32 = 1;

impl HrtfSet {
    /// Builds a set; the DC bin must be real up to 1e-9 of the set's peak
    /// magnitude and is stored exactly real.
    pub fn new(grid: DirectionGrid, freqs: FrequencyGrid, mut left: CMatrix, mut right: CMatrix) -> Result<Self> {
        for (name, m) in [("left", &left), ("right", &right)] {
            if m.nrows() != grid.len() || m.ncols() != freqs.len() {
                return Err(Error::dim(format!(
                    "{name} HRTF is {}×{}, expected {}×{}",
                    m.nrows(),
                    m.ncols(),
                    grid.len(),
                    freqs.len()
                )));
            }
            if !crate::linalg::is_finite(m) {
                return Err(Error::input(format!("{name} HRTF has non-finite values")));
            }
            let peak = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
            if m.column(0).iter().any(|z| z.im.abs() > 1e-9 * peak.max(1e-300)) {
                return Err(Error::input(format!("{name} HRTF DC bin is not real")));
            }
        }
        for m in [&mut left, &mut right] {
            for z in m.column_mut(0).iter_mut() {
                z.im = 0.0;
            }
        }
        Ok(Self { grid, freqs, left, right })
    }

    pub fn ear(&self, ear: Ear) -> &CMatrix {
        match ear {
            Ear::Left => &self.left,
            Ear::Right => &self.right,
        }
    }

    pub fn directions(&self) -> usize {
        self.grid.len()
    }

    pub fn bins(&self) -> usize {
        self.freqs.len()
    }

    /// Column `bin` of one ear as a vector over directions.
    pub fn bin(&self, ear: Ear, bin: usize) -> Vec<C64> {
        self.ear(ear).column(bin).iter().copied().collect()
    }

    /// Writes the interchange directory: `manifest.json`, `grid.csv`,
    /// `left.f64` and `right.f64` (LE `(re, im)` pairs, bin-major).
    pub fn save_dir(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        let manifest = Manifest {
            format_version: FORMAT_VERSION,
            sample_rate: self.freqs.sample_rate,
            nfft: self.freqs.nfft,
            q: self.grid.len(),
            grid_name: self.grid.name.clone(),
            grid_csv: "grid.csv".into(),
            ears: EarFiles { left: "left.f64".into(), right: "right.f64".into() },
        };
        std::fs::write(dir.join("manifest.json"), serde_json::to_string_pretty(&manifest)?)?;
        self.grid.write_csv(std::fs::File::create(dir.join(&manifest.grid_csv))?)?;
        for (file, m) in [(&manifest.ears.left, &self.left), (&manifest.ears.right, &self.right)] {
            let mut buf = Vec::with_capacity(m.len() * 16);
            for j in 0..m.ncols() {
                for z in m.column(j).iter() {
                    buf.extend_from_slice(&z.re.to_le_bytes());
                    buf.extend_from_slice(&z.im.to_le_bytes());
                }
            }
            std::fs::write(dir.join(file), buf)?;
        }
        Ok(())
    }

    pub fn load_dir(dir: &Path) -> Result<Self> {
        let manifest: Manifest = serde_json::from_str(&std::fs::read_to_string(dir.join("manifest.json"))?)?;
        if manifest.format_version != FORMAT_VERSION {
            return Err(Error::Format(format!("unsupported HRTF format version {}", manifest.format_version)));
        }
        let freqs = FrequencyGrid::new(manifest.sample_rate, manifest.nfft)?;
        let grid = DirectionGrid::read_csv(manifest.grid_name.clone(), std::fs::File::open(dir.join(&manifest.grid_csv))?)?;
        if grid.len() != manifest.q {
            return Err(Error::Format(format!("grid has {} rows, manifest says {}", grid.len(), manifest.q)));
        }
        let read = |file: &str| -> Result<CMatrix> {
            let raw = std::fs::read(dir.join(file))?;
            let q = grid.len();
            if raw.len() != q * freqs.len() * 16 {
                return Err(Error::Format(format!("{file}: {} bytes, expected {}", raw.len(), q * freqs.len() * 16)));
            }
            let val = |o: usize| f64::from_le_bytes(raw[o..o + 8].try_into().expect("8 bytes"));
            Ok(CMatrix::from_fn(q, freqs.len(), |i, j| {
                let o = (j * q + i) * 16;
                C64::new(val(o), val(o + 8))
            }))
        };
        let left = read(&manifest.ears.left)?;
        let right = read(&manifest.ears.right)?;
        Self::new(grid, freqs, left, right)
    }
}
