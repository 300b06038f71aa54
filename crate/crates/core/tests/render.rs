use asm_binaural::array::FrequencyGrid;
use asm_binaural::hrtf::{HrtfSh, Variant};
use asm_binaural::render::{
    delay_spectrum, filter_audio, ola_convolve, read_wav, render, spectrum_to_time, time_to_spectrum, write_wav,
    BinauralSpectra, ShSignal, WavFormat,
};
use asm_binaural::sh::{channel_count, wigner_d, wigner_d_euler, RotationOp};
use asm_binaural::{CMatrix, C64};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CMatrix {
    CMatrix::from_fn(rows, cols, |_, _| C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
}

fn random_hrtf(rng: &mut ChaCha8Rng, order: usize, bins: usize) -> HrtfSh {
    let k = channel_count(order);
    HrtfSh::new(order, random_matrix(rng, k, bins), random_matrix(rng, k, bins), Variant::Ls).unwrap()
}

fn max_diff(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn direct_convolution(x: &[f64], h: &[f64]) -> Vec<f64> {
    let mut y = vec![0.0; x.len() + h.len() - 1];
    for (i, a) in x.iter().enumerate() {
        for (j, b) in h.iter().enumerate() {
            y[i + j] += a * b;
        }
    }
    y
}

#[test]
fn render_is_the_coefficient_dot_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let freqs = FrequencyGrid::new(16_000.0, 16).unwrap();
    let h = random_hrtf(&mut rng, 2, freqs.len());
    let a = ShSignal::new(2, true, random_matrix(&mut rng, 9, freqs.len())).unwrap();
    let p = render(&h, &a, &freqs).unwrap();
    for j in 0..freqs.len() {
        let expect: C64 = (0..9).map(|c| h.left[(c, j)] * a.data[(c, j)]).sum();
        assert!((p.left[j] - expect).norm() < 1e-12);
    }
}

#[test]
fn render_is_linear_in_the_signal() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let freqs = FrequencyGrid::new(16_000.0, 16).unwrap();
    let h = random_hrtf(&mut rng, 1, freqs.len());
    let a1 = ShSignal::new(1, true, random_matrix(&mut rng, 4, freqs.len())).unwrap();
    let a2 = ShSignal::new(1, true, random_matrix(&mut rng, 4, freqs.len())).unwrap();
    let s = C64::new(0.3, -2.0);
    let sum = ShSignal::new(1, true, &a1.data + &a2.data * s).unwrap();
    let (p1, p2, ps) = (render(&h, &a1, &freqs).unwrap(), render(&h, &a2, &freqs).unwrap(), render(&h, &sum, &freqs).unwrap());
    let combo: Vec<C64> = p1.left.iter().zip(&p2.left).map(|(x, y)| x + y * s).collect();
    assert!(max_diff(&combo, &ps.left) < 1e-12);
}

#[test]
fn plain_signals_are_reindexed_before_rendering() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let freqs = FrequencyGrid::new(16_000.0, 8).unwrap();
    let h = random_hrtf(&mut rng, 2, freqs.len());
    let a = ShSignal::new(2, false, random_matrix(&mut rng, 9, freqs.len())).unwrap();
    let p_plain = render(&h, &a, &freqs).unwrap();
    let p_tilde = render(&h, &a.to_tilde(), &freqs).unwrap();
    assert_eq!(p_plain, p_tilde);
}

#[test]
fn mismatched_orders_truncate_to_the_lower_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let freqs = FrequencyGrid::new(16_000.0, 8).unwrap();
    let h = random_hrtf(&mut rng, 3, freqs.len());
    let a = ShSignal::new(1, true, random_matrix(&mut rng, 4, freqs.len())).unwrap();
    assert_eq!(render(&h, &a, &freqs).unwrap(), render(&h.truncated(1), &a, &freqs).unwrap());
}

#[test]
fn rotating_the_head_equals_counter_rotating_the_field() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let freqs = FrequencyGrid::new(16_000.0, 16).unwrap();
    for order in [1, 3] {
        let k = channel_count(order);
        let h = random_hrtf(&mut rng, order, freqs.len());
        for (dphi, dtheta) in [(0.4, 0.0), (-1.1, 0.7), (2.5, -0.3)] {
            let rot = wigner_d(dphi, dtheta, order);
            let rotated_head = h.rotated(&rot).unwrap();
            for tilde in [true, false] {
                let a = ShSignal::new(order, tilde, random_matrix(&mut rng, k, freqs.len())).unwrap();
                let p1 = render(&rotated_head, &a, &freqs).unwrap();
                let p2 = render(&h, &a.counter_rotated(&rot).unwrap(), &freqs).unwrap();
                assert!(max_diff(&p1.left, &p2.left) < 1e-9, "order {order} tilde {tilde}");
                assert!(max_diff(&p1.right, &p2.right) < 1e-9);
            }
        }
    }
}

#[test]
fn wigner_d_is_unitary_and_composes() {
    let order = 4;
    let d = wigner_d_euler(0.3, 1.2, -0.8, order);
    let eye = &d * d.adjoint();
    for i in 0..eye.nrows() {
        for j in 0..eye.ncols() {
            let want = if i == j { 1.0 } else { 0.0 };
            assert!((eye[(i, j)] - C64::new(want, 0.0)).norm() < 1e-12);
        }
    }
    let a = wigner_d_euler(0.7, 0.0, 0.0, order);
    let b = wigner_d_euler(-0.2, 0.0, 0.0, order);
    let ab = wigner_d_euler(0.5, 0.0, 0.0, order);
    assert!((&a * &b - ab).norm() < 1e-12);
    let rot: RotationOp = wigner_d(0.4, 0.9, order);
    let back = rot.inverse();
    let v: Vec<C64> = (0..channel_count(order)).map(|i| C64::new(i as f64, 1.0)).collect();
    let w = back.apply(&rot.apply(&v).unwrap()).unwrap();
    assert!(max_diff(&v, &w) < 1e-12);
}

#[test]
fn impulse_responses_are_real_and_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let x: Vec<f64> = (0..64).map(|_| rng.random_range(-1.0..1.0)).collect();
    let spec = time_to_spectrum(&x, 64);
    assert_eq!(spec.len(), 33);
    let y = spectrum_to_time(&spec, 64).unwrap();
    assert!(x.iter().zip(&y).all(|(a, b)| (a - b).abs() < 1e-12));
    assert!(spectrum_to_time(&spec, 62).is_err());
}

#[test]
fn delay_spectrum_shifts_by_whole_samples() {
    let mut x = vec![0.0; 32];
    x[0] = 1.0;
    let s: Vec<C64> = time_to_spectrum(&x, 32).iter().zip(delay_spectrum(32, 5.0)).map(|(a, b)| a * b).collect();
    let y = spectrum_to_time(&s, 32).unwrap();
    for (i, v) in y.iter().enumerate() {
        assert!((v - if i == 5 { 1.0 } else { 0.0 }).abs() < 1e-12);
    }
}

#[test]
fn filter_audio_length_and_normalization() {
    let freqs = FrequencyGrid::new(16_000.0, 32).unwrap();
    let left = delay_spectrum(32, 2.0).into_iter().map(|z| z * 3.0).collect();
    let right = delay_spectrum(32, 4.0);
    let b = BinauralSpectra::new(freqs, left, right).unwrap();
    let src = vec![0.5; 100];
    let raw = filter_audio(&src, &b, false).unwrap();
    assert_eq!(raw.audio.len(), 100 + 32 - 1);
    assert_eq!(raw.gain, 1.0);
    assert!(raw.clipped);
    assert!((raw.audio.left[50] - 1.5).abs() < 1e-9);
    assert!((raw.audio.right[50] - 0.5).abs() < 1e-9);
    let norm = filter_audio(&src, &b, true).unwrap();
    assert!((norm.audio.peak() - 0.99).abs() < 1e-12);
    assert!((norm.gain - 0.99 / 1.5).abs() < 1e-9);
    let silent = filter_audio(&src, &BinauralSpectra::silent(freqs), true).unwrap();
    assert_eq!(silent.audio.peak(), 0.0);
    assert_eq!(silent.gain, 1.0);
}

#[test]
fn wav_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let l: Vec<f64> = (0..200).map(|i| (i as f64 * 0.1).sin() * 0.9).collect();
    let r: Vec<f64> = l.iter().map(|v| -v * 0.5).collect();

    let p = dir.path().join("f.wav");
    let info = write_wav(&p, &[&l, &r], 48_000, WavFormat::Float32).unwrap();
    assert_eq!(info.frames, 200);
    let (rate, ch) = read_wav(&p).unwrap();
    assert_eq!(rate, 48_000);
    assert!(ch[0].iter().zip(&l).all(|(a, b)| (a - b).abs() < 1e-7));
    assert!(ch[1].iter().zip(&r).all(|(a, b)| (a - b).abs() < 1e-7));

    let p = dir.path().join("i.wav");
    let loud: Vec<f64> = l.iter().map(|v| v * 2.0).collect();
    let info = write_wav(&p, &[&loud], 44_100, WavFormat::Pcm24).unwrap();
    assert!(info.clipped_samples > 0);
    let (rate, ch) = read_wav(&p).unwrap();
    assert_eq!(rate, 44_100);
    for (a, b) in ch[0].iter().zip(&loud) {
        assert!((a - b.clamp(-1.0, 1.0)).abs() < 2.0 / (1 << 23) as f64);
    }

    assert!(write_wav(&dir.path().join("bad.wav"), &[&l, &r[..10]], 48_000, WavFormat::Float32).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ola_matches_direct_convolution(
        x in prop::collection::vec(-1.0f64..1.0, 1..400),
        h in prop::collection::vec(-1.0f64..1.0, 1..150),
    ) {
        let fast = ola_convolve(&x, &h);
        let slow = direct_convolution(&x, &h);
        prop_assert_eq!(fast.len(), x.len() + h.len() - 1);
        for (a, b) in fast.iter().zip(&slow) {
            prop_assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn rotation_preserves_signal_energy(dphi in -3.2f64..3.2, dtheta in -3.2f64..3.2, seed in 0u64..1000) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let order = 3;
        let a = ShSignal::new(order, false, random_matrix(&mut rng, channel_count(order), 3)).unwrap();
        let b = a.counter_rotated(&wigner_d(dphi, dtheta, order)).unwrap();
        prop_assert!((a.data.norm() - b.data.norm()).abs() < 1e-10);
    }
}

#[test]
fn empty_inputs_give_empty_convolution() {
    assert!(ola_convolve(&[], &[1.0]).is_empty());
    assert!(ola_convolve(&[1.0], &[]).is_empty());
}
