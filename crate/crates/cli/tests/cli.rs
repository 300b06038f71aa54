use std::path::{Path, PathBuf};
use std::process::Command as Process;
use std::sync::OnceLock;

use asm_binaural::array::EncodingFilter;
use asm_binaural::render::read_wav;
use asm_binaural::scene::{PlaneWave, PlaneWaveScene};
use asm_binaural::sh::Direction;
use asm_binaural_cli::{execute, Cli, CliError, CliResult, Manifest};
use clap::Parser;
use serde_json::{json, Value};
use tempfile::TempDir;

const SMALL: &[&str] = &[
    "--fs",
    "16000",
    "--nfft",
    "64",
    "--grid-size",
    "194",
    "--hrtf-order",
    "6",
    "--azimuths",
    "24",
    "--room-preset",
    "anechoic",
];

fn run_env(cmd: &str, out: &Path, extra: &[&str], env: &[(&str, &str)]) -> CliResult<Manifest> {
    let mut args = vec!["asm-binaural".to_string(), cmd.to_string()];
    for pair in SMALL.chunks(2) {
        if !extra.contains(&pair[0]) {
            args.extend(pair.iter().map(|s| s.to_string()));
        }
    }
    args.push("--output-dir".into());
    args.push(out.display().to_string());
    args.extend(extra.iter().map(|s| s.to_string()));
    let cli = Cli::try_parse_from(&args).expect("arguments parse");
    let env: Vec<(String, String)> = env.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
    execute(&cli, |k| env.iter().find(|(n, _)| n == k).map(|(_, v)| v.clone()))
}

fn run(cmd: &str, out: &Path, extra: &[&str]) -> CliResult<Manifest> {
    run_env(cmd, out, extra, &[])
}

/// One design shared by the render and evaluate tests.
fn design_dir() -> &'static Path {
    static DIR: OnceLock<TempDir> = OnceLock::new();
    DIR.get_or_init(|| {
        let dir = TempDir::new().unwrap();
        run("design", dir.path(), &[]).expect("design runs");
        dir
    })
    .path()
}

fn read_csv(path: &Path) -> (Vec<String>, Vec<Vec<String>>) {
    let mut r = csv::Reader::from_path(path).unwrap();
    let headers = r.headers().unwrap().iter().map(String::from).collect();
    let rows = r.records().map(|rec| rec.unwrap().iter().map(String::from).collect()).collect();
    (headers, rows)
}

fn manifest_json(dir: &Path, command: &str) -> Value {
    let text = std::fs::read_to_string(dir.join(format!("{command}.manifest.json"))).unwrap();
    serde_json::from_str(&text).unwrap()
}

fn binary() -> Process {
    Process::new(env!("CARGO_BIN_EXE_asm-binaural"))
}

#[test]
fn unsupported_config_schema_exits_with_config_code() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("job.json");
    std::fs::write(&cfg, r#"{"schema_version": 99}"#).unwrap();
    let status = binary().args(["analyze-array", "--config"]).arg(&cfg).status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn unknown_config_field_is_rejected() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("job.json");
    std::fs::write(&cfg, r#"{"schema_version": 1, "ordr": 2}"#).unwrap();
    let err = run("analyze-array", dir.path(), &["--config", cfg.to_str().unwrap()]).unwrap_err();
    assert!(matches!(err, CliError::Config(_)), "{err}");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn render_without_design_exits_with_data_code() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("out");
    let status = binary().arg("render").args(SMALL).arg("--output-dir").arg(&out).status().unwrap();
    assert_eq!(status.code(), Some(3));
}

#[test]
fn invalid_parameters_are_config_errors() {
    let dir = TempDir::new().unwrap();
    for extra in [&["--nfft", "63"][..], &["--order", "7", "--hrtf-order", "6"], &["--snr-ratio=-1"]] {
        let err = run("analyze-array", dir.path(), extra).unwrap_err();
        assert_eq!(err.exit_code(), 2, "{extra:?}: {err}");
    }
}

#[test]
fn config_file_paths_resolve_against_its_folder_and_flags_win() {
    let dir = TempDir::new().unwrap();
    let cfg = dir.path().join("job.json");
    std::fs::write(&cfg, json!({"schema_version": 1, "output_dir": "from_config", "order": 2}).to_string()).unwrap();
    let cli = Cli::try_parse_from(["asm-binaural", "analyze-array", "--config", cfg.to_str().unwrap(), "--order", "1"])
        .unwrap();
    let (_, ov) = cli.command.split();
    let resolved = asm_binaural_cli::JobConfig::resolve(ov, |_| None).unwrap();
    assert_eq!(resolved.output_dir, dir.path().join("from_config"));
    assert_eq!(resolved.order, 1);
}

#[test]
fn environment_overrides_config_but_not_flags() {
    let dir = TempDir::new().unwrap();
    let env_out = dir.path().join("env_out");
    let m = run_env("analyze-array", &dir.path().join("flag_out"), &[], &[("ASM_BINAURAL_OUTPUT_DIR", env_out.to_str().unwrap())])
        .unwrap();
    assert_eq!(m.config.output_dir, dir.path().join("flag_out"));

    let cli = Cli::try_parse_from(["asm-binaural", "analyze-array"]).unwrap();
    let (_, ov) = cli.command.split();
    let cfg = asm_binaural_cli::JobConfig::resolve(ov, |k| match k {
        "ASM_BINAURAL_OUTPUT_DIR" => Some(env_out.display().to_string()),
        "ASM_BINAURAL_THREADS" => Some("1".into()),
        _ => None,
    })
    .unwrap();
    assert_eq!(cfg.output_dir, env_out);
    assert_eq!(cfg.threads, Some(1));

    let bad = asm_binaural_cli::JobConfig::resolve(ov, |k| (k == "ASM_BINAURAL_THREADS").then(|| "many".into()));
    assert_eq!(bad.unwrap_err().exit_code(), 2);
}

#[test]
fn analyze_array_writes_curves() {
    let dir = TempDir::new().unwrap();
    let m = run("analyze-array", dir.path(), &[]).unwrap();
    let bins = 64 / 2 + 1;

    let (headers, rows) = read_csv(&dir.path().join("null_space.csv"));
    // orders 0..=2 give 9 SH channels
    let mut expected = vec!["freq_hz".to_string()];
    for n in 0..=2i64 {
        for m in -n..=n {
            expected.push(format!("xi_null_db_n{n}_m{m}"));
        }
    }
    assert_eq!(headers, expected);
    assert_eq!(rows.len(), bins);

    let (headers, rows) = read_csv(&dir.path().join("magnitude.csv"));
    assert_eq!(headers.len(), 1 + 2 * 4);
    assert_eq!(headers[0], "freq_hz");
    assert_eq!(headers[1], "xi_mag_db_n0_m0");
    assert_eq!(headers[5], "xi_ideal_db_n0_m0");
    assert_eq!(rows.len(), bins);

    for f in ["null_space.json", "magnitude.json"] {
        let v: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join(f)).unwrap()).unwrap();
        assert_eq!(v["schema_version"], 1, "{f}");
    }
    assert_eq!(m.outputs.len(), 4);
    assert_eq!(manifest_json(dir.path(), "analyze-array")["command"], "analyze-array");
}

#[test]
fn design_writes_four_channel_filter_and_records_crossfade() {
    let dir = design_dir();
    let filter = EncodingFilter::load(&dir.join("asm_filter.bin")).unwrap();
    assert_eq!(filter.channels(), 4);
    assert_eq!(filter.order, 1);

    let m = manifest_json(dir, "design");
    assert_eq!(m["details"]["alpha_endpoints_hz"], json!([800.0, 1300.0]));
    assert_eq!(m["details"]["rotations_deg"], json!([0.0, 30.0, 60.0]));
    for f in [
        "geometry.json",
        "hrtf_ls_hoa.bin",
        "hrtf_ls.bin",
        "hrtf_magls.bin",
        "hrtf_magls_crossfaded.bin",
        "hrtf_aa_magls_rot0.bin",
        "hrtf_aa_magls_crossfaded_rot60.bin",
    ] {
        assert!(dir.join(f).exists(), "{f}");
    }
    let outputs = m["outputs"].as_array().unwrap();
    assert!(outputs.iter().all(|o| o["sha256"].as_str().unwrap().len() == 64));
}

#[test]
fn design_is_deterministic() {
    let a = TempDir::new().unwrap();
    let b = TempDir::new().unwrap();
    let extra = ["--rotations", "0,30", "--render-rotations", "0"];
    let ma = run("design", a.path(), &extra).unwrap();
    let mb = run("design", b.path(), &extra).unwrap();
    assert_eq!(ma.outputs.len(), mb.outputs.len());
    for (x, y) in ma.outputs.iter().zip(&mb.outputs) {
        assert_eq!(x.path, y.path);
        assert_eq!(x.sha256, y.sha256, "{}", x.path);
        let bytes = |d: &Path| std::fs::read(d.join(&x.path)).unwrap();
        assert_eq!(bytes(a.path()), bytes(b.path()), "{}", x.path);
    }
}

#[test]
fn scene_gen_presets() {
    let dir = TempDir::new().unwrap();
    let m = run("scene-gen", dir.path(), &[]).unwrap();
    assert_eq!(m.details["waves"], 1);
    let scene: PlaneWaveScene =
        serde_json::from_str(&std::fs::read_to_string(dir.path().join("scene.json")).unwrap()).unwrap();
    assert_eq!(scene.len(), 1);
    assert_eq!(scene.fs, 16000.0);

    let dir = TempDir::new().unwrap();
    let m = run("scene-gen", dir.path(), &["--room-preset", "paper"]).unwrap();
    let az = m.details["direct_azimuth_deg"].as_f64().unwrap();
    assert!((az + 45.0).abs() < 1e-9, "direct path at {az} deg");
    assert!(m.details["waves"].as_u64().unwrap() > 100);
}

#[test]
fn scene_gen_mic_signals() {
    let dir = TempDir::new().unwrap();
    let src = dir.path().join("click.wav");
    let mut x = vec![0.0; 256];
    x[0] = 1.0;
    asm_binaural::render::write_wav(&src, &[&x], 16000, asm_binaural::render::WavFormat::Float32).unwrap();
    let m = run("scene-gen", dir.path(), &["--mic-signals", "--source", src.to_str().unwrap()]).unwrap();
    let (rate, ch) = read_wav(&dir.path().join("mic_signals.wav")).unwrap();
    assert_eq!(rate, 16000);
    assert_eq!(ch.len(), m.details["mic_signals"]["channels"].as_u64().unwrap() as usize);
    let peak = ch.iter().flatten().fold(0.0f64, |a, v| a.max(v.abs()));
    assert!((peak - 0.99).abs() < 1e-6);

    let err = run("scene-gen", &dir.path().join("nosrc"), &["--mic-signals"]).unwrap_err();
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn render_writes_seven_stimuli_with_shared_gain() {
    let dir = TempDir::new().unwrap();
    let d = design_dir().display().to_string();
    let m = run("render", dir.path(), &["--design-dir", &d]).unwrap();
    let names: Vec<&str> = m.outputs.iter().map(|o| o.path.as_str()).collect();
    assert_eq!(
        names,
        [
            "hoa_hrtf.wav",
            "foa_hrtf.wav",
            "foa_magls.wav",
            "asm_magls_rot0.wav",
            "asm_aamagls_rot0.wav",
            "asm_magls_rot60.wav",
            "asm_aamagls_rot60.wav"
        ]
    );
    let mut peak = 0.0f64;
    for n in &names {
        let (rate, ch) = read_wav(&dir.path().join(n)).unwrap();
        assert_eq!(rate, 16000);
        assert_eq!(ch.len(), 2);
        peak = peak.max(ch.iter().flatten().fold(0.0, |a, v| a.max(v.abs())));
    }
    assert!((peak - 0.99).abs() < 1e-6, "batch peak {peak}");
    assert_eq!(m.details["normalization"]["mode"], "batch_peak");
}

#[test]
fn render_lateral_wave_favours_near_ear() {
    let dir = TempDir::new().unwrap();
    let scene = PlaneWaveScene {
        waves: vec![PlaneWave { direction: Direction::new(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2).unwrap(), gain: 1.0, delay: 0.0 }],
        source_audio: None,
        fs: 16000.0,
    };
    let path: PathBuf = dir.path().join("left.json");
    scene.save(&path).unwrap();
    let d = design_dir().display().to_string();
    run("render", dir.path(), &["--design-dir", &d, "--scene", path.to_str().unwrap(), "--pipelines", "hoa_hrtf"]).unwrap();
    let (_, ch) = read_wav(&dir.path().join("hoa_hrtf.wav")).unwrap();
    let energy = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
    let onset = |x: &[f64]| {
        let p = x.iter().fold(0.0f64, |a, v| a.max(v.abs()));
        x.iter().position(|v| v.abs() > 0.5 * p).unwrap()
    };
    assert!(energy(&ch[0]) > 2.0 * energy(&ch[1]));
    assert!(onset(&ch[0]) < onset(&ch[1]));
}

#[test]
fn evaluate_writes_three_rotation_groups() {
    let dir = TempDir::new().unwrap();
    let d = design_dir().display().to_string();
    let m = run("evaluate", dir.path(), &["--design-dir", &d]).unwrap();
    let groups = m.details["groups"].as_array().unwrap();
    assert_eq!(groups.len(), 3);
    for (g, tag) in groups.iter().zip(["rot0", "rot30", "rot60"]) {
        let files: Vec<&str> = g["files"].as_array().unwrap().iter().map(|f| f.as_str().unwrap()).collect();
        // two binaural-error and five lateralization reports, csv + json each
        assert_eq!(files.len(), 14, "{files:?}");
        assert!(files.iter().all(|f| f.contains(tag)));
    }
    let (headers, rows) = read_csv(&dir.path().join("lateralization_asm_aamagls_rot30.csv"));
    assert_eq!(headers, ["azimuth_deg", "itd_s", "itd_ref_s", "itd_error_s", "ild_db", "ild_ref_db", "ild_error_db"]);
    assert_eq!(rows.len(), 24);
    let (_, rows) = read_csv(&dir.path().join("binaural_error_asm_magls_rot0.csv"));
    assert_eq!(rows.len(), 33);
}

#[test]
fn evaluate_high_order_pipeline_tracks_reference() {
    let dir = TempDir::new().unwrap();
    let d = design_dir().display().to_string();
    run("evaluate", dir.path(), &["--design-dir", &d, "--pipelines", "hoa_hrtf,foa_hrtf", "--rotations", "0"]).unwrap();
    let mean_itd_err = |name: &str| {
        let (headers, rows) = read_csv(&dir.path().join(name));
        let col = headers.iter().position(|h| h == "itd_error_s").unwrap();
        rows.iter().map(|r| r[col].parse::<f64>().unwrap()).sum::<f64>() / rows.len() as f64
    };
    let hoa = mean_itd_err("lateralization_hoa_hrtf_rot0.csv");
    let foa = mean_itd_err("lateralization_foa_hrtf_rot0.csv");
    assert!(hoa <= foa, "hoa {hoa} foa {foa}");
}
