use crate::error::{Error, Result};

#[derive(Clone, Copy)]
struct Biquad {
    b: [f64; 3],
    a: [f64; 2],
}

impl Biquad {
    /// Bilinear-transform low-pass section with quality factor `q`.
    fn lowpass(fc: f64, fs: f64, q: f64) -> Self {
        let w0 = 2.0 * std::f64::consts::PI * fc / fs;
        let (s, c) = w0.sin_cos();
        let alpha = s / (2.0 * q);
        let a0 = 1.0 + alpha;
        let b1 = (1.0 - c) / a0;
        Biquad { b: [b1 / 2.0, b1, b1 / 2.0], a: [-2.0 * c / a0, (1.0 - alpha) / a0] }
    }

    fn run(&self, x: &mut [f64]) {
        let (mut z1, mut z2) = (0.0, 0.0);
        for v in x.iter_mut() {
            let y = self.b[0] * *v + z1;
            z1 = self.b[1] * *v - self.a[0] * y + z2;
            z2 = self.b[2] * *v - self.a[1] * y;
            *v = y;
        }
    }
}

/// Zero-phase 4th-order Butterworth low-pass: two biquads run forward and
/// then backward over the signal.
pub fn lowpass_zero_phase(x: &[f64], cutoff: f64, fs: f64) -> Vec<f64> {
    let sections = [Biquad::lowpass(cutoff, fs, 0.541_196_100_146_197), Biquad::lowpass(cutoff, fs, 1.306_562_964_876_376_7)];
    let mut y = x.to_vec();
    for s in &sections {
        s.run(&mut y);
    }
    y.reverse();
    for s in &sections {
        s.run(&mut y);
    }
    y.reverse();
    y
}

/// Interaural time difference in seconds: the lag `τ` maximizing
/// `Σ_t p_l(t+τ) p_r(t)` over `|τ| ≤ 1 ms` after a 3 kHz zero-phase
/// low-pass. A right-ear signal delayed by `d` samples gives `τ = −d`.
pub fn itd(left: &[f64], right: &[f64], fs: f64) -> Result<f64> {
    if left.len() != right.len() {
        return Err(Error::dim(format!("ear buffers of {} and {} samples", left.len(), right.len())));
    }
    if !(fs > 6000.0) {
        return Err(Error::input(format!("sample rate {fs} too low for a 3 kHz low-pass")));
    }
    if left.iter().all(|&x| x == 0.0) || right.iter().all(|&x| x == 0.0) {
        return Err(Error::Undefined("ITD of a silent ear signal".into()));
    }
    let l = lowpass_zero_phase(left, 3000.0, fs);
    let r = lowpass_zero_phase(right, 3000.0, fs);
    let n = l.len() as i64;
    let max_lag = (1e-3 * fs).round() as i64;
    let mut best = (0i64, f64::NEG_INFINITY);
    for tau in -max_lag..=max_lag {
        let lo = 0.max(-tau);
        let hi = n.min(n - tau);
        let s: f64 = (lo..hi).map(|t| l[(t + tau) as usize] * r[t as usize]).sum();
        // ties resolve toward the smallest |τ|
        if s > best.1 || (s == best.1 && tau.abs() < best.0.abs()) {
            best = (tau, s);
        }
    }
    Ok(best.0 as f64 / fs)
}
