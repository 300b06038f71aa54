use asm_binaural::eval::{
    binaural_errors, lateralization_sweep, AsmMethod, BinauralMethod, IdealAmbisonicsMethod, ReferenceMethod,
    SweepOptions, REPORT_SCHEMA_VERSION,
};
use asm_binaural::hrtf::reference_set;
use serde_json::json;

use super::{prepare_output, write_report};
use crate::config::{rotation_tag, JobConfig, Pipeline};
use crate::error::CliResult;
use crate::manifest::Manifest;
use crate::setup::*;

/// Binaural error curves (array pipelines) and ITD/ILD sweeps (all
/// pipelines) for every configured head rotation.
pub fn evaluate(cfg: &JobConfig) -> CliResult<Manifest> {
    let out = prepare_output(cfg)?;
    let freqs = frequency_grid(cfg)?;
    let aa_rots: Vec<f64> = if cfg.pipelines.contains(&Pipeline::AsmAamagls) { cfg.rotations.clone() } else { vec![] };
    let art = Artifacts::load(cfg, &aa_rots)?;
    let src = HrtfSource::load(cfg)?;
    let model = reference_model(&src, &art.hoa);
    let fade = cfg.fade();
    let uses_array = cfg.pipelines.iter().any(|p| p.uses_array());
    let vs = if uses_array { steering(&art.geometry, src.grid(), cfg)? } else { vec![] };
    let sweep = SweepOptions { azimuths: cfg.azimuths, bulk_delay: cfg.bulk_delay, ..SweepOptions::default() };

    let mut outputs = vec![];
    let mut groups = vec![];
    for &deg in &cfg.rotations {
        let tag = rotation_tag(deg);
        let rot = (deg != 0.0).then(|| head_rotation(deg, art.filter.order));
        let mut files = vec![];
        if uses_array {
            let reference = match &rot {
                Some(r) => reference_set(model.as_ref(), src.grid(), &freqs, Some(r))?,
                None => src.set.clone(),
            };
            for &p in cfg.pipelines.iter().filter(|p| p.uses_array()) {
                let h = match p {
                    Pipeline::AsmMagls => &art.magls_crossfaded,
                    _ => art.aa_for(deg),
                };
                let report = binaural_errors(h, &art.filter, &vs, &reference, rot.as_ref(), &fade)?;
                files.extend(write_report(cfg, &format!("binaural_error_{}_{tag}", p.name()), &report)?);
            }
        }
        let reference = ReferenceMethod { model: model.as_ref(), rotation: rot.clone() };
        for &p in &cfg.pipelines {
            let method: Box<dyn BinauralMethod> = match p {
                Pipeline::HoaHrtf => {
                    Box::new(IdealAmbisonicsMethod { hrtf: art.hoa.clone(), order: art.hoa.order, rotation: rot.clone() })
                }
                Pipeline::FoaHrtf => {
                    Box::new(IdealAmbisonicsMethod { hrtf: art.ls.clone(), order: cfg.order, rotation: rot.clone() })
                }
                Pipeline::FoaMagls => Box::new(IdealAmbisonicsMethod {
                    hrtf: art.magls_crossfaded.clone(),
                    order: cfg.order,
                    rotation: rot.clone(),
                }),
                Pipeline::AsmMagls | Pipeline::AsmAamagls => Box::new(AsmMethod {
                    geometry: art.geometry.clone(),
                    filter: art.filter.clone(),
                    hrtf: if p == Pipeline::AsmMagls { art.magls_crossfaded.clone() } else { art.aa_for(deg).clone() },
                    rotation: rot.clone(),
                    sound_speed: cfg.sound_speed,
                }),
            };
            let report = lateralization_sweep(method.as_ref(), &reference, &freqs, deg, &sweep)?;
            files.extend(write_report(cfg, &format!("lateralization_{}_{tag}", p.name()), &report)?);
        }
        groups.push(json!({"rotation_deg": deg, "files": files}));
        outputs.extend(files);
    }
    let details = json!({
        "report_schema_version": REPORT_SCHEMA_VERSION,
        "alpha_endpoints_hz": [fade.f_min, fade.f_max],
        "reference": if src.head.is_some() { "analytic_sphere" } else { "sh_interpolated_set" },
        "azimuths": cfg.azimuths,
        "groups": groups,
    });
    let mut inputs = art.files();
    inputs.extend(src.path.clone());
    let m = Manifest::new("evaluate", cfg, &inputs, &outputs, details)?;
    m.save(&out)?;
    Ok(m)
}
