use asm_binaural::array::asm_filter;
use asm_binaural::hrtf::{
    aa_magls_design, crossfade_combine, ls_encode, magls_encode_with, reference_set, AaDesign, AaMaglsOptions,
    BinConvergence, HrtfSh,
};
use rayon::prelude::*;
use serde_json::json;

use super::prepare_output;
use crate::config::JobConfig;
use crate::error::CliResult;
use crate::manifest::Manifest;
use crate::setup::*;

fn convergence(h: &HrtfSh) -> serde_json::Value {
    let ear = |recs: &[BinConvergence]| {
        let bins: Vec<_> = recs
            .iter()
            .map(|r| json!({"bin": r.bin, "iterations": r.iterations, "converged": r.converged, "objective": r.objective}))
            .collect();
        let unconverged: Vec<usize> = recs.iter().filter(|r| !r.converged).map(|r| r.bin).collect();
        json!({"unconverged_bins": unconverged, "bins": bins})
    };
    json!({"left": ear(&h.convergence[0]), "right": ear(&h.convergence[1])})
}

/// ASM filter and the LS, MagLS and AA-MagLS HRTF encodings.
pub fn design(cfg: &JobConfig) -> CliResult<Manifest> {
    let out = prepare_output(cfg)?;
    let geom = cfg.geometry()?;
    let src = HrtfSource::load(cfg)?;
    let freqs = frequency_grid(cfg)?;
    let fade = cfg.fade();
    let solver = cfg.solver();
    let vs = steering(&geom, src.grid(), cfg)?;
    let filter = asm_filter(&vs, src.grid(), &freqs, cfg.order, cfg.snr_ratio)?;

    let hoa = ls_encode(&src.set, cfg.hrtf_order)?;
    let ls = ls_encode(&src.set, cfg.order)?;
    let magls = magls_encode_with(&src.set, cfg.order, &fade, &solver)?;
    let magls_crossfaded = crossfade_combine(&ls, &magls, &fade, &freqs)?;

    let rotations = cfg.design_rotations();
    let model = reference_model(&src, &hoa);
    let aa: Vec<(f64, AaDesign)> = rotations
        .par_iter()
        .map(|&deg| {
            let rot = head_rotation(deg, cfg.order);
            let reference =
                if deg == 0.0 { src.set.clone() } else { reference_set(model.as_ref(), src.grid(), &freqs, Some(&rot))? };
            let opts = AaMaglsOptions {
                solver,
                low_band: cfg.low_band,
                magls_seed: Some(magls.clone()),
                rotation: Some(rot),
            };
            Ok((deg, aa_magls_design(&reference, &filter, &vs, &fade, &opts)?))
        })
        .collect::<CliResult<_>>()?;

    geom.save(&out.join(GEOMETRY_FILE))?;
    filter.save(&out.join(FILTER_FILE))?;
    hoa.save(&out.join(HOA_HRTF_FILE))?;
    ls.save(&out.join(LS_FILE))?;
    magls.save(&out.join(MAGLS_FILE))?;
    magls_crossfaded.save(&out.join(MAGLS_CROSSFADED_FILE))?;
    let mut outputs: Vec<String> =
        [GEOMETRY_FILE, FILTER_FILE, HOA_HRTF_FILE, LS_FILE, MAGLS_FILE, MAGLS_CROSSFADED_FILE].map(String::from).to_vec();
    let mut aa_conv = serde_json::Map::new();
    for (deg, d) in &aa {
        d.high.save(&out.join(aa_magls_file(*deg)))?;
        d.crossfaded.save(&out.join(aa_crossfaded_file(*deg)))?;
        outputs.push(aa_magls_file(*deg));
        outputs.push(aa_crossfaded_file(*deg));
        aa_conv.insert(crate::config::rotation_tag(*deg), convergence(&d.high));
    }
    let details = json!({
        "filter": filter.header(),
        "filter_channels": filter.channels(),
        "hrtf_grid": src.grid().name,
        "hrtf_source": if src.head.is_some() { "analytic_sphere" } else { "interchange_set" },
        "alpha_endpoints_hz": [fade.f_min, fade.f_max],
        "rotations_deg": rotations,
        "convergence": {"magls": convergence(&magls), "aa_magls": aa_conv},
    });
    let inputs: Vec<_> = cfg.geometry.iter().chain(&src.path).cloned().collect();
    let m = Manifest::new("design", cfg, &inputs, &outputs, details)?;
    m.save(&out)?;
    Ok(m)
}
