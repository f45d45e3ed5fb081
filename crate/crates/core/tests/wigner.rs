use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;

use monopole_core::algebra::Surd;
use monopole_core::wigner::{big_d, d_small, d_small_dtheta, gauss_legendre, rotation_matrix, sigma_ladder, HalfInt, Label, SphereGrid};

fn fact(n: i32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// Wigner's factorial sum, written over doubled quantum numbers.
fn d_oracle(j2: i32, mp2: i32, m2: i32, beta: f64) -> f64 {
    let (jpm, jmm, jpn, jmn) = ((j2 + mp2) / 2, (j2 - mp2) / 2, (j2 + m2) / 2, (j2 - m2) / 2);
    let dm = (mp2 - m2) / 2;
    let pre = (fact(jpm) * fact(jmm) * fact(jpn) * fact(jmn)).sqrt();
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let mut sum = 0.0;
    for k in 0..=j2 {
        let a = jpn - k;
        let b = dm + k;
        let e = jmm - k;
        if a < 0 || b < 0 || e < 0 {
            continue;
        }
        let sign = if b % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * pre / (fact(a) * fact(k) * fact(b) * fact(e)) * c.powi(j2 - dm - 2 * k) * s.powi(dm + 2 * k);
    }
    sum
}

fn h(x: i32) -> HalfInt {
    HalfInt(x)
}

fn jm() -> impl Strategy<Value = (i32, i32, i32)> {
    (0i32..=8).prop_flat_map(|j2| {
        let ms = (0..=j2).map(|k| j2 - 2 * k).collect::<Vec<_>>();
        (Just(j2), prop::sample::select(ms.clone()), prop::sample::select(ms))
    })
}

#[test]
fn half_integer_parsing() {
    assert_eq!(HalfInt::parse("3/2").unwrap(), h(3));
    assert_eq!(HalfInt::parse("-1/2").unwrap(), h(-1));
    assert_eq!(HalfInt::parse("2").unwrap(), h(4));
    assert_eq!(HalfInt::parse("1.5").unwrap(), h(3));
    assert!(HalfInt::parse("0.3").is_err());
    assert_eq!(h(-3).to_string(), "-3/2");
}

#[test]
fn spin_half_closed_form() {
    let t = 0.7;
    assert!((d_small(h(1), h(1), h(1), t) - (t / 2.0).cos()).abs() < 1e-14);
    assert!((d_small(h(1), h(1), h(-1), t) + (t / 2.0).sin()).abs() < 1e-14);
    assert!((d_small(h(2), h(0), h(0), t) - t.cos()).abs() < 1e-14);
}

#[test]
fn derivative_matches_finite_difference() {
    let e = 1e-6;
    for (j, mp, s) in [(3, 1, -1), (4, 2, 0), (5, -3, 1), (2, 0, 2)] {
        for t in [0.3, 1.1, 2.5] {
            let fd = (d_small(h(j), h(mp), h(s), t + e) - d_small(h(j), h(mp), h(s), t - e)) / (2.0 * e);
            assert!((fd - d_small_dtheta(h(j), h(mp), h(s), t)).abs() < 1e-8);
        }
    }
}

#[test]
fn gauss_legendre_integrates_polynomials() {
    let (x, w) = gauss_legendre(6);
    let s: f64 = x.iter().zip(&w).map(|(x, w)| w * x.powi(10)).sum();
    assert!((s - 2.0 / 11.0).abs() < 1e-14);
}

#[test]
fn ladder_is_exact() {
    let (a, b) = sigma_ladder(h(5), h(1)).unwrap();
    // j = 5/2, s = 1/2: a = sqrt(3 * 3), b = sqrt(2 * 4)
    assert_eq!(a, Surd::from_int(3));
    assert_eq!(b, Surd::sqrt_int(8).unwrap());
}

proptest! {
    #[test]
    fn small_d_matches_factorial_sum((j2, mp2, m2) in jm(), beta in 0.0..PI) {
        let got = d_small(h(j2), h(mp2), h(m2), beta);
        prop_assert!((got - d_oracle(j2, mp2, m2, beta)).abs() < 1e-12, "{got}");
    }

    #[test]
    fn reflection_of_the_polar_angle((j2, mp2, m2) in jm(), beta in 0.0..PI) {
        // d(pi - beta)_{m' m} = (-1)^(j + m') d(beta)_{m', -m}
        let sign = if ((j2 + mp2) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let lhs = d_small(h(j2), h(mp2), h(m2), PI - beta);
        let rhs = sign * d_small(h(j2), h(mp2), h(-m2), beta);
        prop_assert!((lhs - rhs).abs() < 1e-12);
    }

    #[test]
    fn rotations_compose(j2 in 0i32..=6, b1 in -3.0..3.0f64, b2 in -3.0..3.0f64, a in -3.0..3.0f64) {
        let p = &rotation_matrix(h(j2), a, b1, 0.0) * &rotation_matrix(h(j2), 0.0, b2, 0.0);
        let q = rotation_matrix(h(j2), a, b1 + b2, 0.0);
        prop_assert!(p.max_abs_diff(&q) < 1e-12);
        let u = &q * &q.adjoint();
        let n = (j2 + 1) as usize;
        prop_assert!(u.max_abs_diff(&monopole_core::algebra::FloatMatrix::identity(n)) < 1e-12);
    }

    #[test]
    fn half_integers_print_and_parse(x in -40i32..=40) {
        let s = h(x).to_string();
        prop_assert_eq!(HalfInt::parse(&s).unwrap(), h(x));
        let json = serde_json::to_string(&h(x)).unwrap();
        prop_assert_eq!(serde_json::from_str::<HalfInt>(&json).unwrap(), h(x));
        prop_assert_eq!(serde_json::from_str::<HalfInt>(&format!("{}", x as f64 / 2.0)).unwrap(), h(x));
    }

    #[test]
    fn ladder_squares_are_integers(j2 in 0i32..=9, k in 0i32..=9) {
        prop_assume!(k <= j2);
        let s2 = j2 - 2 * k;
        if let Ok((a, b)) = sigma_ladder(h(j2), h(s2)) {
            // a^2 = (j + s)(j - s + 1), b^2 = (j - s)(j + s + 1)
            let a2 = (j2 + s2) * (j2 - s2 + 2) / 4;
            let b2 = (j2 - s2) * (j2 + s2 + 2) / 4;
            prop_assert_eq!(&a * &a, Surd::from_int(a2 as i64));
            prop_assert_eq!(&b * &b, Surd::from_int(b2 as i64));
        }
    }
}

#[test]
fn sphere_grid_orthogonality() {
    let grid = SphereGrid::for_j(h(5));
    for (j2, jp2) in [(1, 1), (1, 3), (3, 3), (3, 5), (5, 5)] {
        for mp2 in [-1, 1] {
            for s2 in [-1, 1] {
                let (a, b) = (Label::new(h(j2), h(mp2), h(s2)), Label::new(h(jp2), h(mp2), h(s2)));
                let mut sum = Complex64::new(0.0, 0.0);
                for i in 0..grid.len() {
                    let (t, p, w) = grid.node(i);
                    sum += big_d(&a, p, t).conj() * big_d(&b, p, t) * w;
                }
                let want = if j2 == jp2 { 4.0 * PI / (j2 as f64 + 1.0) } else { 0.0 };
                assert!((sum - want).norm() < 1e-12, "j={j2}/2 j'={jp2}/2: {sum}");
            }
        }
    }
}

#[test]
fn antipode_is_an_involution() {
    let g = SphereGrid::for_j(h(7));
    for i in 0..g.len() {
        let k = g.antipode(i);
        assert_eq!(g.antipode(k), i);
        let ((t1, p1, _), (t2, p2, _)) = (g.node(i), g.node(k));
        assert!((t1 + t2 - PI).abs() < 1e-12);
        assert!(((p2 - p1).rem_euclid(2.0 * PI) - PI).abs() < 1e-12);
        assert_ne!(g.is_upper(i), g.is_upper(k));
    }
}

#[test]
fn derivative_at_the_poles() {
    let e = 1e-6;
    for (j, mp, s) in [(1, 1, 1), (2, 0, 0), (4, 2, 2), (3, -1, 1)] {
        let fd = (d_small(h(j), h(mp), h(s), e) - d_small(h(j), h(mp), h(s), 0.0)) / e;
        assert!((fd - d_small_dtheta(h(j), h(mp), h(s), e / 2.0)).abs() < 1e-5);
    }
}

#[test]
fn quadrature_weights_sum_to_two() {
    for n in [1, 2, 5, 12, 40] {
        let (_, w) = gauss_legendre(n);
        assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-13, "n = {n}");
    }
}

#[test]
fn odd_grids_are_rejected() {
    assert!(SphereGrid::new(3, 4).is_err());
    assert!(SphereGrid::new(4, 0).is_err());
}
