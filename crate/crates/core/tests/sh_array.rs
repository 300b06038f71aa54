use std::f64::consts::PI;

use asm_binaural::array::{
    asm_filter, default_wearable_geometry, spherical_32_geometry, steering_matrix, ArrayGeometry, FrequencyGrid, Mic,
    Mount,
};
use asm_binaural::sh::{
    acn_index, channel_count, lebedev_grid, lebedev_sizes, rigid_sphere_radial, rotation_matrix_zyz, sh_matrix,
    sh_vector, wigner_d_euler, Direction, DirectionGrid,
};
use asm_binaural::{CMatrix, C64};
use proptest::prelude::*;

fn legendre(n: usize, x: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return 1.0;
    }
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    p1
}

fn direction() -> impl Strategy<Value = Direction> {
    (0.0f64..PI, -PI..PI).prop_map(|(t, p)| Direction::new(t, p).unwrap())
}

#[test]
fn low_orders_match_closed_forms() {
    let d = Direction::new(1.1, -0.7).unwrap();
    let y = sh_vector(&d, 2);
    let (st, ct) = d.theta.sin_cos();
    let e = |m: f64| C64::from_polar(1.0, m * d.phi);
    let expect = [
        (0, 0, C64::new((1.0 / (4.0 * PI)).sqrt(), 0.0)),
        (1, -1, e(-1.0) * (3.0 / (8.0 * PI)).sqrt() * st),
        (1, 0, C64::new((3.0 / (4.0 * PI)).sqrt() * ct, 0.0)),
        (1, 1, e(1.0) * -(3.0 / (8.0 * PI)).sqrt() * st),
        (2, -2, e(-2.0) * 0.25 * (15.0 / (2.0 * PI)).sqrt() * st * st),
        (2, -1, e(-1.0) * 0.5 * (15.0 / (2.0 * PI)).sqrt() * st * ct),
        (2, 0, C64::new(0.25 * (5.0 / PI).sqrt() * (3.0 * ct * ct - 1.0), 0.0)),
        (2, 1, e(1.0) * -0.5 * (15.0 / (2.0 * PI)).sqrt() * st * ct),
        (2, 2, e(2.0) * 0.25 * (15.0 / (2.0 * PI)).sqrt() * st * st),
    ];
    for (n, m, v) in expect {
        let i = acn_index(n, m).unwrap();
        assert!((y[i] - v).norm() < 1e-13, "Y_{n}{m}: {} vs {v}", y[i]);
    }
}

#[test]
fn lebedev_quadrature_makes_the_basis_orthonormal() {
    for (size, order) in [(194, 8), (590, 12), (2702, 20)] {
        let g = lebedev_grid(size).unwrap();
        let w: f64 = g.weights().iter().sum();
        assert!((w - 4.0 * PI).abs() < 1e-9 * 4.0 * PI);
        let y = sh_matrix(&g, order).entries;
        let gram = CMatrix::from_fn(y.ncols(), y.ncols(), |a, b| {
            (0..g.len()).map(|q| y[(q, a)].conj() * y[(q, b)] * g.weights()[q]).sum()
        });
        for a in 0..gram.nrows() {
            for b in 0..gram.ncols() {
                let want = if a == b { 1.0 } else { 0.0 };
                assert!((gram[(a, b)] - C64::new(want, 0.0)).norm() < 1e-10, "grid {size} ({a},{b})");
            }
        }
    }
    assert!(lebedev_sizes().contains(&2702));
    assert!(lebedev_grid(7).is_err());
}

#[test]
fn rotation_blocks_do_not_mix_orders() {
    let d = wigner_d_euler(0.4, 1.3, -2.0, 5);
    for a in 0..d.nrows() {
        for b in 0..d.ncols() {
            let (na, nb) = ((a as f64).sqrt() as usize, (b as f64).sqrt() as usize);
            if na != nb {
                assert_eq!(d[(a, b)], C64::new(0.0, 0.0));
            }
        }
    }
}

#[test]
fn radial_terms_match_closed_forms() {
    let j0 = |x: f64| x.sin() / x;
    let j1 = |x: f64| x.sin() / (x * x) - x.cos() / x;
    let y0 = |x: f64| -x.cos() / x;
    let y1 = |x: f64| -x.cos() / (x * x) - x.sin() / x;
    // derivatives
    let dj0 = |x: f64| -j1(x);
    let dy0 = |x: f64| -y1(x);
    let dj1 = |x: f64| j0(x) - 2.0 * j1(x) / x;
    let dy1 = |x: f64| y0(x) - 2.0 * y1(x) / x;
    for ka in [0.05, 0.3, 1.0, 2.7, 9.0] {
        let h0 = C64::new(j0(ka), -y0(ka));
        let h1 = C64::new(j1(ka), -y1(ka));
        let b0 = (C64::new(j0(ka), 0.0) - h0 * dj0(ka) / C64::new(dj0(ka), -dy0(ka))) * 4.0 * PI;
        let b1 = (C64::new(j1(ka), 0.0) - h1 * dj1(ka) / C64::new(dj1(ka), -dy1(ka))) * C64::new(0.0, 4.0 * PI);
        assert!((rigid_sphere_radial(0, ka) - b0).norm() < 1e-9 * b0.norm(), "b0({ka})");
        assert!((rigid_sphere_radial(1, ka) - b1).norm() < 1e-9 * b1.norm(), "b1({ka})");
    }
    assert!((rigid_sphere_radial(0, 0.0) - C64::new(4.0 * PI, 0.0)).norm() < 1e-12);
    assert_eq!(rigid_sphere_radial(3, 0.0), C64::new(0.0, 0.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugate_symmetry(d in direction()) {
        let y = sh_vector(&d, 6);
        for n in 0..=6usize {
            for m in 1..=n as i64 {
                let pos = y[acn_index(n, m).unwrap()];
                let neg = y[acn_index(n, -m).unwrap()];
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                prop_assert!((neg - pos.conj() * sign).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn addition_theorem(a in direction(), b in direction()) {
        let order = 8;
        let (ya, yb) = (sh_vector(&a, order), sh_vector(&b, order));
        for n in 0..=order {
            let s: C64 = (n * n..(n + 1) * (n + 1)).map(|i| ya[i] * yb[i].conj()).sum();
            let want = (2 * n + 1) as f64 / (4.0 * PI) * legendre(n, a.dot(&b).clamp(-1.0, 1.0));
            prop_assert!((s - C64::new(want, 0.0)).norm() < 1e-11, "n={} {} vs {}", n, s, want);
        }
    }

    #[test]
    fn rotated_coefficients_rotate_the_function(
        alpha in -PI..PI, beta in 0.0..PI, gamma in -PI..PI, d in direction(), seed in 0u64..1000,
    ) {
        let order = 4;
        let k = channel_count(order);
        let f: Vec<C64> = (0..k).map(|i| C64::new(((seed + i as u64) as f64 * 0.37).sin(), ((seed * 3 + i as u64) as f64 * 0.11).cos())).collect();
        let dm = wigner_d_euler(alpha, beta, gamma, order);
        let rotated: Vec<C64> = (0..k).map(|i| (0..k).map(|j| dm[(i, j)] * f[j]).sum()).collect();
        let r = rotation_matrix_zyz(alpha, beta, gamma);
        let inv = [[r[0][0], r[1][0], r[2][0]], [r[0][1], r[1][1], r[2][1]], [r[0][2], r[1][2], r[2][2]]];
        let eval = |c: &[C64], dir: &Direction| -> C64 { sh_vector(dir, order).iter().zip(c).map(|(y, x)| y * x).sum() };
        let lhs = eval(&rotated, &d);
        let rhs = eval(&f, &d.rotated(&inv));
        prop_assert!((lhs - rhs).norm() < 1e-10, "{} vs {}", lhs, rhs);
    }

    #[test]
    fn radial_terms_are_continuous(ka in 0.01f64..20.0) {
        for n in 0..6 {
            let a = rigid_sphere_radial(n, ka);
            let b = rigid_sphere_radial(n, ka * (1.0 + 1e-7));
            prop_assert!((a - b).norm() <= 1e-5 * a.norm().max(1e-300) + 1e-300);
        }
    }
}

fn small_setup() -> (Vec<asm_binaural::array::SteeringMatrix>, DirectionGrid, FrequencyGrid) {
    let g = lebedev_grid(194).unwrap();
    let f = FrequencyGrid::new(16_000.0, 32).unwrap();
    let vs = asm_binaural::array::steering_matrices(&default_wearable_geometry(), &g, &f, 343.0).unwrap();
    (vs, g, f)
}

#[test]
fn filter_matches_augmented_least_squares() {
    let (vs, g, f) = small_setup();
    let snr = 1e3;
    let c = asm_filter(&vs, &g, &f, 1, snr).unwrap();
    let y = sh_matrix(&g, 1).entries;
    let lambda = 1.0 / snr;
    for j in [1, 5, 16] {
        let v = &vs[j].entries;
        let (m, q) = (v.nrows(), v.ncols());
        // min ‖Vᴴc − y‖² + λ‖c‖² as an ordinary LS problem on [Vᴴ; √λ I]
        let a = CMatrix::from_fn(q + m, m, |r, col| {
            if r < q {
                v[(col, r)].conj()
            } else if r - q == col {
                C64::new(lambda.sqrt(), 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        let svd = a.svd(true, true);
        for ch in 0..4 {
            let mut b = CMatrix::zeros(q + m, 1);
            for r in 0..q {
                b[(r, 0)] = y[(r, ch)];
            }
            let x = svd.solve(&b, 1e-14).unwrap();
            let got = c.matrix(j).column(ch).into_owned();
            let err = (got - x.column(0)).norm() / x.norm();
            assert!(err < 1e-8, "bin {j} ch {ch}: {err}");
        }
    }
}

#[test]
fn filter_is_stationary_and_never_worse_than_zero() {
    let (vs, g, f) = small_setup();
    let y = sh_matrix(&g, 1).entries;
    for snr in [1e1, 1e3, 1e6] {
        let c = asm_filter(&vs, &g, &f, 1, snr).unwrap();
        for (j, v) in vs.iter().enumerate() {
            let v = &v.entries;
            for ch in 0..4 {
                let cc = c.matrix(j).column(ch).into_owned();
                let yc = y.column(ch).into_owned();
                let resid = v.adjoint() * &cc - &yc;
                let grad = v * &resid + &cc * C64::new(1.0 / snr, 0.0);
                assert!(grad.norm() <= 1e-10 * v.norm() * yc.norm(), "snr {snr} bin {j} ch {ch}");
                assert!(resid.norm_squared() + cc.norm_squared() / snr <= yc.norm_squared() * (1.0 + 1e-12));
            }
        }
    }
}

#[test]
fn more_regularization_shrinks_the_filter() {
    let (vs, g, f) = small_setup();
    let norms: Vec<f64> = [1e6, 1e3, 1e1, 1e-1, 1e-6]
        .iter()
        .map(|&s| {
            let c = asm_filter(&vs, &g, &f, 1, s).unwrap();
            (0..f.len()).map(|j| c.matrix(j).norm_squared()).sum::<f64>()
        })
        .collect();
    assert!(norms.windows(2).all(|w| w[1] < w[0]), "{norms:?}");
    assert!(norms[4] < 1e-6 * norms[0]);
    assert!(asm_filter(&vs, &g, &f, 1, 0.0).is_err());
}

#[test]
fn free_field_steering_is_a_phase_term() {
    let mut geom = default_wearable_geometry();
    geom.mount = Mount::FreeField;
    let g = lebedev_grid(26).unwrap();
    let freq = 1500.0;
    let v = steering_matrix(&geom, &g, freq, 343.0, 0).unwrap();
    let k = 2.0 * PI * freq / 343.0;
    for (i, mic) in geom.mics.iter().enumerate() {
        let p = mic.position();
        for (q, d) in g.directions().iter().enumerate() {
            let u = d.unit_vector();
            let want = C64::from_polar(1.0, k * (u[0] * p[0] + u[1] * p[1] + u[2] * p[2]));
            assert!((v.entries[(i, q)] - want).norm() < 1e-12);
        }
    }
}

#[test]
fn rigid_sphere_steering_is_reciprocal() {
    let g = lebedev_grid(26).unwrap();
    let r = 0.042;
    let mics: Vec<Mic> = g.directions().iter().map(|d| Mic { theta: d.theta, phi: d.phi, r }).collect();
    let geom = ArrayGeometry::new(r, Mount::RigidSphere, mics).unwrap();
    for freq in [200.0, 3000.0, 8000.0] {
        let v = steering_matrix(&geom, &g, freq, 343.0, 30).unwrap().entries;
        assert!((&v - v.transpose()).norm() < 1e-10 * v.norm(), "{freq} Hz");
    }
}

#[test]
fn spherical_32_points_are_unit_spread() {
    let geom = spherical_32_geometry(0.042);
    assert_eq!(geom.len(), 32);
    let dirs: Vec<Direction> = geom.mics.iter().map(|m| m.direction()).collect();
    let min_angle = dirs
        .iter()
        .enumerate()
        .flat_map(|(i, a)| dirs[i + 1..].iter().map(move |b| a.angle_to(b)))
        .fold(PI, f64::min);
    assert!(min_angle > 0.6, "closest pair {min_angle}");
    assert!(geom.mics.iter().all(|m| (m.r - 0.042).abs() < 1e-15));
}
