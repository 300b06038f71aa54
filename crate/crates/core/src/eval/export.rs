use std::io::Write;
use std::path::Path;

use serde::Serialize;

use super::{BinauralErrorReport, LateralizationReport, MagnitudeReport, NullSpaceReport};
use crate::error::Result;

/// Version of the CSV/JSON report layouts. Bumped whenever a column is
/// renamed, removed or reordered.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

fn channel_label(prefix: &str, (n, m): (usize, i64)) -> String {
    format!("{prefix}_n{n}_m{m}")
}

/// Tabular export shared by every metric report.
pub trait Report: Serialize {
    /// Short identifier stored in the JSON envelope.
    const KIND: &'static str;

    fn csv_header(&self) -> Vec<String>;
    fn csv_rows(&self) -> Vec<Vec<f64>>;

    fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record(self.csv_header())?;
        for row in self.csv_rows() {
            wr.write_record(row.iter().map(|v| format!("{v}")))?;
        }
        wr.flush()?;
        Ok(())
    }

    fn save_csv(&self, path: impl AsRef<Path>) -> Result<()> {
        self.write_csv(std::fs::File::create(path)?)
    }

    fn to_json(&self) -> Result<serde_json::Value> {
        Ok(serde_json::json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "kind": Self::KIND,
            "data": serde_json::to_value(self)?,
        }))
    }

    fn save_json(&self, path: impl AsRef<Path>) -> Result<()> {
        let f = std::io::BufWriter::new(std::fs::File::create(path)?);
        serde_json::to_writer_pretty(f, &self.to_json()?)?;
        Ok(())
    }
}

impl Report for NullSpaceReport {
    const KIND: &'static str = "null_space";

    fn csv_header(&self) -> Vec<String> {
        let mut h = vec!["freq_hz".to_string()];
        h.extend(self.channels.iter().map(|&c| channel_label("xi_null_db", c)));
        h
    }

    fn csv_rows(&self) -> Vec<Vec<f64>> {
        self.freqs
            .iter()
            .zip(&self.values)
            .map(|(&f, v)| std::iter::once(f).chain(v.iter().copied()).collect())
            .collect()
    }
}

impl Report for MagnitudeReport {
    const KIND: &'static str = "magnitude";

    fn csv_header(&self) -> Vec<String> {
        let mut h = vec!["freq_hz".to_string()];
        h.extend(self.channels.iter().map(|&c| channel_label("xi_mag_db", c)));
        h.extend(self.channels.iter().map(|&c| channel_label("xi_ideal_db", c)));
        h
    }

    fn csv_rows(&self) -> Vec<Vec<f64>> {
        self.freqs
            .iter()
            .zip(&self.xi_mag)
            .map(|(&f, v)| std::iter::once(f).chain(v.iter().copied()).chain(self.xi_ideal.iter().copied()).collect())
            .collect()
    }
}

impl Report for BinauralErrorReport {
    const KIND: &'static str = "binaural_error";

    fn csv_header(&self) -> Vec<String> {
        [
            "freq_hz", "alpha", "left_bin", "left_mag", "left_comb", "right_bin", "right_mag", "right_comb",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect()
    }

    fn csv_rows(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| {
                vec![r.freq, r.alpha, r.left.bin, r.left.mag, r.left.comb, r.right.bin, r.right.mag, r.right.comb]
            })
            .collect()
    }
}

impl Report for LateralizationReport {
    const KIND: &'static str = "lateralization";

    fn csv_header(&self) -> Vec<String> {
        ["azimuth_deg", "itd_s", "itd_ref_s", "itd_error_s", "ild_db", "ild_ref_db", "ild_error_db"]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    fn csv_rows(&self) -> Vec<Vec<f64>> {
        self.rows
            .iter()
            .map(|r| vec![r.azimuth_deg, r.itd, r.itd_ref, r.itd_error, r.ild, r.ild_ref, r.ild_error])
            .collect()
    }
}
