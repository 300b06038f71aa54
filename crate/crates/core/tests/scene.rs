use asm_binaural::array::{default_wearable_geometry, steering_matrix, FrequencyGrid, Mount};
use asm_binaural::hrtf::{analytic_sphere_hrtf, SphereHead};
use asm_binaural::scene::{
    image_source_scene, mic_spectra, mic_spectra_on_grid, reference_binaural, scene_brir, NoiseModel, PlaneWave,
    PlaneWaveScene, RoomSpec, SceneFile,
};
use asm_binaural::sh::{lebedev_grid, Direction, DirectionGrid};
use asm_binaural::{Error, C64, SOUND_SPEED};

fn dist(a: [f64; 3], b: [f64; 3]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2) + (a[2] - b[2]).powi(2)).sqrt()
}

#[test]
fn anechoic_room_has_one_direct_wave() {
    let room = RoomSpec::anechoic();
    let s = image_source_scene(&room, SOUND_SPEED).unwrap();
    assert_eq!(s.len(), 1);
    let d = dist(room.source_pos, room.array_pos);
    assert!((d - 1.98f64.hypot(0.0)).abs() < 0.005);
    assert!((s.waves[0].delay - d / SOUND_SPEED).abs() < 1e-15);
    assert!((s.waves[0].gain - 1.0 / d).abs() < 1e-15);
}

#[test]
fn direct_path_is_about_45_degrees_right() {
    let room = RoomSpec::paper_room();
    let az = room.direct_azimuth_deg();
    assert!((az + 45.0).abs() <= 5.0, "azimuth {az}");
    let s = image_source_scene(&room, SOUND_SPEED).unwrap();
    assert!((s.waves[0].direction.phi_deg() - az).abs() < 1e-9);
    assert!((s.waves[0].direction.theta_deg() - 90.0).abs() < 1e-9);
}

#[test]
fn image_count_matches_lattice() {
    for k in 0..4usize {
        let room = RoomSpec { max_image_order: Some(k), ..RoomSpec::paper_room() };
        let s = image_source_scene(&room, SOUND_SPEED).unwrap();
        assert_eq!(s.len(), (2 * k + 1).pow(3));
    }
}

#[test]
fn first_order_images_by_hand() {
    let room = RoomSpec { max_image_order: Some(1), ..RoomSpec::paper_room() };
    let s = image_source_scene(&room, SOUND_SPEED).unwrap();
    let beta = room.reflection_coefficient();
    let [l, w, h] = room.dims;
    let [x, y, z] = room.source_pos;
    let images = [[-x, y, z], [2.0 * l - x, y, z], [x, -y, z], [x, 2.0 * w - y, z], [x, y, -z], [x, y, 2.0 * h - z]];
    for img in images {
        let d = dist(img, room.array_pos);
        let hit = s.waves.iter().any(|wv| (wv.delay - d / SOUND_SPEED).abs() < 1e-12 && (wv.gain - beta / d).abs() < 1e-12);
        assert!(hit, "missing image {img:?}");
    }
}

#[test]
fn vanishing_rt60_keeps_only_the_direct_path() {
    let room = RoomSpec { rt60: 1e-6, max_image_order: Some(2), ..RoomSpec::paper_room() };
    let s = image_source_scene(&room, SOUND_SPEED).unwrap();
    let d = dist(room.source_pos, room.array_pos);
    for wv in &s.waves {
        if (wv.delay - d / SOUND_SPEED).abs() < 1e-12 {
            assert!((wv.gain - 1.0 / d).abs() < 1e-12);
        } else {
            assert_eq!(wv.gain, 0.0);
        }
    }
}

#[test]
fn coincident_source_is_a_geometry_error() {
    let room = RoomSpec { source_pos: [2.6, 4.4, 1.7], ..RoomSpec::paper_room() };
    assert!(matches!(image_source_scene(&room, SOUND_SPEED), Err(Error::Geometry(_))));
    let outside = RoomSpec { source_pos: [9.0, 3.0, 1.7], ..RoomSpec::paper_room() };
    assert!(matches!(image_source_scene(&outside, SOUND_SPEED), Err(Error::Geometry(_))));
}

/// Least-squares slope of ln(energy) in 10 ms bins over [t0, t1].
fn decay_rate(scene: &PlaneWaveScene, t0: f64, t1: f64) -> f64 {
    let bin = 0.01;
    let n = (t1 / bin).ceil() as usize + 1;
    let mut e = vec![0.0; n];
    for w in &scene.waves {
        let i = (w.delay / bin) as usize;
        if i < n {
            e[i] += w.gain * w.gain;
        }
    }
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|i| ((i as f64 + 0.5) * bin, e[i]))
        .filter(|&(t, v)| t >= t0 && t <= t1 && v > 0.0)
        .map(|(t, v)| (t, v.ln()))
        .collect();
    let mt = pts.iter().map(|p| p.0).sum::<f64>() / pts.len() as f64;
    let me = pts.iter().map(|p| p.1).sum::<f64>() / pts.len() as f64;
    let num: f64 = pts.iter().map(|p| (p.0 - mt) * (p.1 - me)).sum();
    let den: f64 = pts.iter().map(|p| (p.0 - mt).powi(2)).sum();
    num / den
}

#[test]
fn energy_decay_follows_rt60() {
    let room = RoomSpec::paper_room();
    let s = image_source_scene(&room, SOUND_SPEED).unwrap();
    let slope = decay_rate(&s, 0.05, 0.3);
    let expected = -13.8 / room.rt60;
    assert!((slope / expected - 1.0).abs() <= 0.3, "slope {slope} vs {expected}");
}

#[test]
fn negative_direct_to_reverberant_ratio_at_two_meters() {
    let s = image_source_scene(&RoomSpec::paper_room(), SOUND_SPEED).unwrap();
    let direct = s.waves[0].gain.powi(2);
    let rev: f64 = s.waves[1..].iter().map(|w| w.gain * w.gain).sum();
    assert!(direct < rev);
}

#[test]
fn scene_json_round_trip() {
    let s = image_source_scene(&RoomSpec { max_image_order: Some(1), ..RoomSpec::paper_room() }, SOUND_SPEED).unwrap();
    let back = PlaneWaveScene::from_json(&s.to_json().unwrap()).unwrap();
    assert_eq!(back, s);
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("room.json");
    std::fs::write(&p, serde_json::json!({"room": RoomSpec::anechoic()}).to_string()).unwrap();
    let scene = SceneFile::load(&p).unwrap().into_scene(SOUND_SPEED).unwrap();
    assert_eq!(scene.len(), 1);
    let bad = r#"{"waves":[{"direction":{"theta":1.0,"phi":0.0},"gain":1.0,"delay":-1.0}],"fs":48000.0}"#;
    assert!(PlaneWaveScene::from_json(bad).is_err());
}

fn freqs() -> FrequencyGrid {
    FrequencyGrid::new(48_000.0, 64).unwrap()
}

#[test]
fn empty_scene_without_noise_is_silent() {
    let s = PlaneWaveScene::new(vec![], 48_000.0).unwrap();
    let x = mic_spectra(&s, &default_wearable_geometry(), &freqs(), SOUND_SPEED, &NoiseModel::silent(), None).unwrap();
    assert!(x.data.iter().all(|z| *z == C64::new(0.0, 0.0)));
}

#[test]
fn single_free_field_wave_is_the_steering_entry_times_source() {
    let mut geom = default_wearable_geometry();
    geom.mount = Mount::FreeField;
    let f = freqs();
    let d = Direction::from_degrees(70.0, 30.0).unwrap();
    let s = PlaneWaveScene::single(d, 48_000.0);
    let src: Vec<C64> = (0..f.len()).map(|j| C64::new(1.0 + j as f64, -0.5 * j as f64)).collect();
    let x = mic_spectra(&s, &geom, &f, SOUND_SPEED, &NoiseModel::silent(), Some(&src)).unwrap();
    let g = DirectionGrid::uniform("one", vec![d]).unwrap();
    for j in 0..f.len() {
        let v = steering_matrix(&geom, &g, f.freq(j), SOUND_SPEED, 10).unwrap();
        for i in 0..geom.len() {
            assert!((x.data[(i, j)] - v.entries[(i, 0)] * src[j]).norm() < 1e-12);
        }
    }
}

#[test]
fn two_waves_superpose() {
    let geom = default_wearable_geometry();
    let f = freqs();
    let a = PlaneWave { direction: Direction::from_degrees(80.0, -30.0).unwrap(), gain: 0.7, delay: 1e-3 };
    let b = PlaneWave { direction: Direction::from_degrees(100.0, 120.0).unwrap(), gain: -0.2, delay: 2.5e-4 };
    let run = |w: Vec<PlaneWave>| {
        mic_spectra(&PlaneWaveScene::new(w, 48_000.0).unwrap(), &geom, &f, SOUND_SPEED, &NoiseModel::silent(), None)
            .unwrap()
            .data
    };
    let both = run(vec![a, b]);
    let sum = run(vec![a]) + run(vec![b]);
    assert!(both.iter().zip(sum.iter()).all(|(x, y)| (x - y).norm() < 1e-12));
}

#[test]
fn noise_is_seeded_and_has_the_requested_variance() {
    let n = NoiseModel::new(0.25, 11).unwrap();
    let a = n.spectra(5, 4001);
    assert_eq!(a, n.spectra(5, 4001));
    assert_ne!(a, NoiseModel::new(0.25, 12).unwrap().spectra(5, 4001));
    let inner = a.columns(1, 3999);
    let var = inner.iter().map(|z| z.norm_sqr()).sum::<f64>() / inner.len() as f64;
    assert!((var - 0.25).abs() < 0.01, "variance {var}");
    assert!(a.column(0).iter().all(|z| z.im == 0.0));
    // the value of one bin does not depend on how many bins are drawn
    assert_eq!(n.spectra(5, 10).column(3), a.column(3));
}

#[test]
fn grid_path_matches_exact_directions_on_grid_points() {
    let geom = default_wearable_geometry();
    let f = freqs();
    let grid = lebedev_grid(50).unwrap();
    let waves: Vec<PlaneWave> = [3usize, 17, 40]
        .iter()
        .enumerate()
        .map(|(i, &q)| PlaneWave { direction: grid.directions()[q], gain: 1.0 + i as f64, delay: i as f64 * 1e-4 })
        .collect();
    let s = PlaneWaveScene::new(waves, 48_000.0).unwrap();
    let vs = asm_binaural::array::steering_matrices(&geom, &grid, &f, SOUND_SPEED).unwrap();
    let (x, snap) = mic_spectra_on_grid(&s, &vs, &grid, &f, &NoiseModel::silent(), None).unwrap();
    assert_eq!(snap.indices, vec![3, 17, 40]);
    assert!(snap.warnings.is_empty());
    let exact = mic_spectra(&s, &geom, &f, SOUND_SPEED, &NoiseModel::silent(), None).unwrap();
    assert!(x.data.iter().zip(exact.data.iter()).all(|(a, b)| (a - b).norm() < 1e-10));
}

#[test]
fn reference_binaural_single_and_symmetric_scenes() {
    let f = freqs();
    let grid = lebedev_grid(110).unwrap();
    let head = SphereHead::default();
    let set = analytic_sphere_hrtf(&grid, &f, head.radius, head.ears).unwrap();
    let q = 7;
    let src: Vec<C64> = (0..f.len()).map(|j| C64::new(0.5, j as f64 * 0.01)).collect();
    let one = PlaneWaveScene::single(grid.directions()[q], 48_000.0);
    let p = reference_binaural(&one, &set, Some(&src)).unwrap();
    for j in 0..f.len() {
        assert_eq!(p.spectra.left[j], set.left[(q, j)] * src[j]);
        assert_eq!(p.spectra.right[j], set.right[(q, j)] * src[j]);
    }
    // mirrored pair about the median plane
    let d = Direction::from_degrees(90.0, 30.0).unwrap();
    let m = Direction::from_degrees(90.0, -30.0).unwrap();
    let pair = PlaneWaveScene::new(
        vec![PlaneWave { direction: d, gain: 1.0, delay: 0.0 }, PlaneWave { direction: m, gain: 1.0, delay: 0.0 }],
        48_000.0,
    )
    .unwrap();
    let p = reference_binaural(&pair, &set, None).unwrap();
    for j in 0..f.len() {
        assert!((p.spectra.left[j].norm() - p.spectra.right[j].norm()).abs() < 1e-9);
    }
    // a direction far from any grid point of a coarse grid is reported
    let coarse = lebedev_grid(6).unwrap();
    let cset = analytic_sphere_hrtf(&coarse, &f, head.radius, head.ears).unwrap();
    let off = PlaneWaveScene::single(Direction::from_degrees(45.0, 45.0).unwrap(), 48_000.0);
    let r = reference_binaural(&off, &cset, None).unwrap();
    assert_eq!(r.snap.warnings.len(), 1);
    assert!(r.snap.max_angle_deg > 2.0);
}

#[test]
fn paper_room_renders_finite_audio_with_rt60_tail() {
    let f = FrequencyGrid::new(48_000.0, 256).unwrap();
    let grid = lebedev_grid(2702).unwrap();
    let head = SphereHead::default();
    let set = analytic_sphere_hrtf(&grid, &f, head.radius, head.ears).unwrap();
    let scene = image_source_scene(&RoomSpec::paper_room(), SOUND_SPEED).unwrap();
    let brir = scene_brir(&scene, &set, 32).unwrap();
    let expected_len = (scene.max_delay() * 48_000.0).round() as usize + 256;
    assert_eq!(brir.audio.len(), expected_len);
    assert!(brir.audio.left.iter().chain(&brir.audio.right).all(|x| x.is_finite()));
    assert!(scene.max_delay() >= 0.4);
    let source: Vec<f64> = (0..4800).map(|i| (i as f64 * 0.05).sin()).collect();
    let out = asm_binaural::render::ola_convolve(&source, &brir.audio.left);
    assert_eq!(out.len(), source.len() + brir.audio.len() - 1);
    // energy of the late part decays at roughly the rate implied by rt60
    let energy = |a: f64, b: f64| -> f64 {
        brir.audio.left[(a * 48_000.0) as usize..(b * 48_000.0) as usize].iter().map(|x| x * x).sum()
    };
    let rate = (energy(0.25, 0.3) / energy(0.05, 0.1)).ln() / 0.2;
    assert!((rate / (-13.8 / 0.4) - 1.0).abs() < 0.3, "rate {rate}");
}
