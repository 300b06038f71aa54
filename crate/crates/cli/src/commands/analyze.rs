use asm_binaural::array::asm_filter;
use asm_binaural::eval::{magnitude_metrics, null_space_report, Report, REPORT_SCHEMA_VERSION};
use asm_binaural::sh::lebedev_grid;
use serde_json::json;

use super::{prepare_output, write_report};
use crate::config::JobConfig;
use crate::error::{CliError, CliResult};
use crate::manifest::Manifest;
use crate::setup::{frequency_grid, steering};

/// Null-space and magnitude curves of the array (CSV + JSON each).
pub fn analyze_array(cfg: &JobConfig) -> CliResult<Manifest> {
    prepare_output(cfg)?;
    let geom = cfg.geometry()?;
    let grid = lebedev_grid(cfg.grid_size).map_err(|e| CliError::config(e.to_string()))?;
    let freqs = frequency_grid(cfg)?;
    let vs = steering(&geom, &grid, cfg)?;
    let null = null_space_report(&vs, &grid, &freqs, cfg.null_space_order, cfg.svd_rel_tol)?;
    let filter = asm_filter(&vs, &grid, &freqs, cfg.order, cfg.snr_ratio)?;
    let mag = magnitude_metrics(&filter, &vs, &grid)?;
    let mut outputs = write_report(cfg, "null_space", &null)?;
    outputs.extend(write_report(cfg, "magnitude", &mag)?);
    let (null_cols, mag_cols) = (null.csv_header(), mag.csv_header());
    let details = json!({
        "report_schema_version": REPORT_SCHEMA_VERSION,
        "mics": geom.len(),
        "grid": grid.name,
        "null_space_columns": null_cols,
        "magnitude_columns": mag_cols,
    });
    let inputs = cfg.geometry.iter().cloned().collect::<Vec<_>>();
    let m = Manifest::new("analyze-array", cfg, &inputs, &outputs, details)?;
    m.save(&cfg.output_dir)?;
    Ok(m)
}
