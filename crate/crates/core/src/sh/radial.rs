use std::f64::consts::PI;

use crate::linalg::C64;

/// Spherical Bessel functions `j_0..=j_nmax` at `x ≥ 0` (Miller's downward
/// recurrence, normalized against the closed forms of `j_0` or `j_1`).
fn bessel_j_all(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; nmax + 1];
    if x == 0.0 {
        out[0] = 1.0;
        return out;
    }
    if x < 1e-6 {
        // leading series term x^n / (2n+1)!!
        let mut t = 1.0;
        for (n, o) in out.iter_mut().enumerate() {
            if n > 0 {
                t *= x / (2 * n + 1) as f64;
            }
            *o = t * (1.0 - x * x / (2.0 * (2 * n + 3) as f64));
        }
        return out;
    }
    let start = nmax.max(x.ceil() as usize) + 20 + (x.sqrt() * 4.0) as usize;
    let mut f = vec![0.0; start + 2];
    f[start + 1] = 0.0;
    f[start] = 1e-300;
    for n in (1..=start).rev() {
        f[n - 1] = (2 * n + 1) as f64 / x * f[n] - f[n + 1];
        if f[n - 1].abs() > 1e250 {
            let s = 1e-250;
            for v in f[n - 1..].iter_mut() {
                *v *= s;
            }
        }
    }
    let (s, c) = x.sin_cos();
    let j0 = s / x;
    let j1 = s / (x * x) - c / x;
    let scale = if j0.abs() >= j1.abs() { j0 / f[0] } else { j1 / f[1] };
    for (o, v) in out.iter_mut().zip(&f) {
        *o = v * scale;
    }
    out
}

/// Spherical Bessel functions of the second kind `y_0..=y_nmax` at `x > 0`
/// (upward recurrence, which is stable for `y`).
fn bessel_y_all(nmax: usize, x: f64) -> Vec<f64> {
    let mut out = vec![0.0; nmax + 1];
    let (s, c) = x.sin_cos();
    out[0] = -c / x;
    if nmax >= 1 {
        out[1] = -c / (x * x) - s / x;
    }
    for n in 1..nmax {
        out[n + 1] = (2 * n + 1) as f64 / x * out[n] - out[n - 1];
    }
    out
}

/// Spherical Bessel function of the first kind `j_n(x)`, `x ≥ 0`.
pub fn spherical_bessel_j(n: usize, x: f64) -> f64 {
    bessel_j_all(n, x)[n]
}

/// Spherical Bessel function of the second kind `y_n(x)`, `x > 0`.
pub fn spherical_bessel_y(n: usize, x: f64) -> f64 {
    bessel_y_all(n, x)[n]
}

/// Rigid-sphere radial functions `b_0(ka)..=b_nmax(ka)` for a sensor on the
/// sphere surface,
/// `b_n = 4π iⁿ [j_n − (j_n′ / h_n′) h_n]` with `h_n = j_n − i y_n`.
///
/// Evaluated through the Wronskian form `b_n = −4π i^{n+1} / (x² h_n′(x))`,
/// which avoids the cancellation of the bracket at small `ka`.
pub fn rigid_sphere_radial_orders(nmax: usize, ka: f64) -> Vec<C64> {
    assert!(ka >= 0.0 && ka.is_finite(), "ka must be finite and nonnegative");
    let mut out = vec![C64::new(0.0, 0.0); nmax + 1];
    if ka < 1e-8 {
        out[0] = C64::new(4.0 * PI, 0.0);
        return out;
    }
    let x = ka;
    let j = bessel_j_all(nmax + 1, x);
    let y = bessel_y_all(nmax + 1, x);
    let deriv = |f: &[f64], n: usize| if n == 0 { -f[1] } else { f[n - 1] - (n + 1) as f64 / x * f[n] };
    let i_pow = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.0, -1.0)];
    for (n, o) in out.iter_mut().enumerate() {
        let hp = C64::new(deriv(&j, n), -deriv(&y, n));
        if !(hp.re.is_finite() && hp.im.is_finite()) {
            // |h_n′| has overflowed, so b_n is below f64 resolution
            break;
        }
        *o = -i_pow[(n + 1) % 4] * 4.0 * PI / (hp * x * x);
    }
    out
}

/// Single rigid-sphere radial term `b_n(ka)`.
pub fn rigid_sphere_radial(n: usize, ka: f64) -> C64 {
    rigid_sphere_radial_orders(n, ka)[n]
}

#[cfg(test)]
mod tests {
    use super::*;

    // Reference values computed with 40-digit arbitrary-precision arithmetic.
    const B_REF: &[(usize, f64, f64, f64)] = &[
        (0, 1.0, 8.6819376378288587, 1.892298618496966),
        (1, 1.0, 0.60100835646759213, 5.5876223063967084),
        (5, 1.0, 1.6539890512351327e-10, 0.0021357779806360218),
        (3, 2.5, -0.27640223488082524, -2.418411076004618),
        (10, 7.3, -0.23316056891607474, 0.0021643432472706577),
        (2, 0.01, -0.00013962556448135739, 2.0684858396436813e-16),
    ];

    #[test]
    fn bessel_reference_values() {
        let cases = [
            (0, 1.0, 0.84147098480789651, -0.54030230586813972),
            (3, 2.5, 0.10392046970240394, -0.79660312325324946),
            (10, 7.3, 0.0092331933854981511, -1.0043203402336991),
            (25, 3.0, 2.6112633829308916e-22, -2.5205146532420335e+19),
        ];
        for (n, x, j, y) in cases {
            assert!(((spherical_bessel_j(n, x) - j) / j).abs() < 1e-12, "j_{n}({x})");
            assert!(((spherical_bessel_y(n, x) - y) / y).abs() < 1e-12, "y_{n}({x})");
        }
    }

    #[test]
    fn radial_reference_values() {
        for &(n, x, re, im) in B_REF {
            let b = rigid_sphere_radial(n, x);
            let r = C64::new(re, im);
            assert!((b - r).norm() / r.norm() < 1e-10, "b_{n}({x}) = {b}, expected {r}");
        }
    }

    #[test]
    fn direct_formula_agrees() {
        // bracket form evaluated with the closed-form j_0, y_0 and their derivatives
        let x = 1.0f64;
        let (s, c) = x.sin_cos();
        let j0 = s / x;
        let y0 = -c / x;
        let j0p = c / x - s / (x * x);
        let y0p = s / x + c / (x * x);
        let h0 = C64::new(j0, -y0);
        let h0p = C64::new(j0p, -y0p);
        let direct = (C64::new(j0, 0.0) - h0 * j0p / h0p) * 4.0 * PI;
        assert!((rigid_sphere_radial(0, x) - direct).norm() < 1e-13);
    }

    #[test]
    fn static_limit_and_decay() {
        assert!((rigid_sphere_radial(0, 0.0) - C64::new(4.0 * PI, 0.0)).norm() < 1e-15);
        assert_eq!(rigid_sphere_radial(3, 0.0), C64::new(0.0, 0.0));
        assert!((rigid_sphere_radial(0, 1e-5) - C64::new(4.0 * PI, 0.0)).norm() < 1e-6);
        let b = rigid_sphere_radial_orders(5, 1.0);
        assert!(b[5].norm() < 1e-2 * b[0].norm());
    }

    #[test]
    fn finite_on_dense_sweep() {
        for i in 0..=4000 {
            let ka = 20.0 * i as f64 / 4000.0;
            for b in rigid_sphere_radial_orders(60, ka) {
                assert!(b.re.is_finite() && b.im.is_finite(), "ka = {ka}");
            }
        }
    }
}
