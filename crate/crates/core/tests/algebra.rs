use num_complex::Complex64;
use proptest::prelude::*;

use monopole_core::algebra::linsolve::{rank, solve_late_pivots};
use monopole_core::algebra::{
    build_dirac_rep, build_dkp_rep, build_rep, rat, snap_real, verify_algebra, AlgebraInput, Backend, Exact, ExactMatrix, FloatMatrix, MatrixJson, Spin, Surd,
};

fn metric(a: usize, b: usize) -> i64 {
    match (a, b) {
        (0, 0) => 1,
        _ if a == b => -1,
        _ => 0,
    }
}

fn sc(m: &ExactMatrix, k: i64) -> ExactMatrix {
    m.scale(&Exact::int(k))
}

#[test]
fn products_reduce_to_square_free() {
    let a = Surd::sqrt_int(6).unwrap();
    let b = Surd::sqrt_int(10).unwrap();
    // sqrt(60) = 2 sqrt(15)
    assert_eq!(&a * &b, Surd::term(rat(2, 1), 15));
    assert_eq!(Surd::sqrt_int(8).unwrap(), Surd::term(rat(2, 1), 2));
}

#[test]
fn inverse_of_sum_of_roots() {
    let x = &(&Surd::sqrt_int(2).unwrap() + &Surd::sqrt_int(3).unwrap()) + &Surd::from_int(1);
    let y = x.inverse().unwrap();
    assert_eq!(&x * &y, Surd::one());
}

#[test]
fn complex_inverse() {
    let z = Exact::new(Surd::sqrt_int(2).unwrap(), Surd::from_int(-3));
    assert_eq!(&z * &z.inverse().unwrap(), Exact::one());
}

#[test]
fn snapping_recovers_half_root() {
    let s = snap_real(-(7.5f64).sqrt(), 1e-9, 4096).unwrap();
    assert_eq!(s, -Surd::term(rat(1, 2), 30));
    assert!(snap_real(std::f64::consts::PI, 1e-12, 4096).is_none());
}

#[test]
fn kron_places_outer_factor_on_blocks() {
    let a = FloatMatrix::diag(vec![Complex64::new(1.0, 0.0), Complex64::new(2.0, 0.0)]);
    let b = FloatMatrix::identity(3);
    let k = a.kron(&b);
    assert_eq!(k.rows(), 6);
    assert_eq!(k[(4, 4)], Complex64::new(2.0, 0.0));
    assert_eq!(k[(1, 1)], Complex64::new(1.0, 0.0));
}

#[test]
fn json_round_trip() {
    let m = FloatMatrix::from_rows(vec![
        vec![Complex64::new(0.0, 1.0), Complex64::new(2.0, 0.0)],
        vec![Complex64::new(-1.0, 0.5), Complex64::new(0.0, 0.0)],
    ])
    .unwrap();
    let j = MatrixJson::from(&m);
    let s = serde_json::to_string(&j).unwrap();
    let back: MatrixJson = serde_json::from_str(&s).unwrap();
    assert_eq!(FloatMatrix::try_from(&back).unwrap(), m);
}

#[test]
fn late_pivots_keep_first_columns_free() {
    // x3 = 2 x1, x2 = 0
    let rows = vec![
        vec![Exact::int(2), Exact::zero(), Exact::int(-1)],
        vec![Exact::zero(), Exact::int(5), Exact::zero()],
    ];
    let sol = solve_late_pivots(&rows, 3);
    assert_eq!(sol.len(), 2);
    let x3 = sol.iter().find(|(p, _)| *p == 2).unwrap();
    assert_eq!(x3.1, vec![(Exact::int(2), 0)]);
    let x2 = sol.iter().find(|(p, _)| *p == 1).unwrap();
    assert!(x2.1.is_empty());
    assert_eq!(rank(&rows), 2);
}

#[test]
fn dkp_weights_are_cyclic() {
    let w = build_dkp_rep().helicity_weights().unwrap();
    let expect = [0, 1, 0, -1, 1, 0, -1, 1, 0, -1];
    for (a, b) in w.iter().zip(expect) {
        assert_eq!(*a, Exact::int(b));
    }
}

#[test]
fn dirac_weights() {
    let w = build_dirac_rep().helicity_weights().unwrap();
    let h = Exact::ratio(1, 2);
    assert_eq!(w, vec![h.clone(), -h.clone(), h.clone(), -h]);
}

#[test]
fn cartesian_reflection_of_dirac_is_i_gamma0() {
    let r = build_dirac_rep();
    let p = r.cartesian_reflection();
    assert_eq!(p[(0, 2)], Exact::i());
    assert_eq!(p[(3, 1)], Exact::i());
}

#[test]
fn both_representations_pass_exactly() {
    for rep in [build_dirac_rep(), build_dkp_rep()] {
        let input = AlgebraInput::from_rep(&rep);
        let r = verify_algebra(&input, Backend::Exact);
        assert!(r.passed(), "{:?}", r.failing_identities());
        assert_eq!(r.families.len(), 5);
        let f = verify_algebra(&input.to_float(), Backend::Float);
        assert!(f.passed());
    }
}

#[test]
fn corrupted_entry_is_named() {
    let mut input = AlgebraInput::from_rep(&build_dkp_rep()).to_float();
    input.gammas[2][(1, 4)] += num_complex::Complex64::new(1e-3, 0.0);
    let r = verify_algebra(&input, Backend::Float);
    assert!(r.failing_identities().contains(&"dkp-trilinear"));
}

#[test]
fn clifford_from_scratch() {
    let g = build_dirac_rep();
    let one = ExactMatrix::identity(4);
    for a in 0..4 {
        for b in 0..4 {
            let anti = &(g.gamma(a) * g.gamma(b)) + &(g.gamma(b) * g.gamma(a));
            assert_eq!(anti, sc(&one, 2 * metric(a, b)), "{{g{a}, g{b}}}");
        }
    }
}

#[test]
fn dkp_trilinear_from_scratch() {
    let b = build_dkp_rep();
    for x in 0..4 {
        for y in 0..4 {
            for z in 0..4 {
                let lhs = &(&(b.gamma(x) * b.gamma(y)) * b.gamma(z)) + &(&(b.gamma(z) * b.gamma(y)) * b.gamma(x));
                let rhs = &sc(b.gamma(z), metric(x, y)) + &sc(b.gamma(x), metric(z, y));
                assert_eq!(lhs, rhs, "b{x} b{y} b{z}");
            }
        }
    }
}

#[test]
fn generators_rotate_the_matrices() {
    for rep in [build_dirac_rep(), build_dkp_rep()] {
        for a in 0..4 {
            for b in 0..4 {
                let j = rep.generator(a, b);
                for c in 0..4 {
                    let lhs = j.commutator(rep.gamma(c)).unwrap();
                    let rhs = &sc(rep.gamma(a), metric(b, c)) - &sc(rep.gamma(b), metric(a, c));
                    assert_eq!(lhs, rhs, "spin {} [J{a}{b}, g{c}]", rep.spin.label());
                }
            }
        }
    }
}

#[test]
fn every_single_entry_corruption_is_caught() {
    let base = AlgebraInput::from_rep(&build_rep(Spin::Half)).to_float();
    for k in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                let mut input = base.clone();
                input.gammas[k][(i, j)] += Complex64::new(0.25, 0.0);
                let r = verify_algebra(&input, Backend::Float);
                assert!(!r.passed(), "gamma{k}[{i}][{j}]");
                assert!(r.failing_identities().contains(&"clifford"));
            }
        }
    }
}

#[test]
fn matrix_json_rejects_ragged_rows() {
    let j: MatrixJson = serde_json::from_str("[[[1, 0], [0, 0]], [[0, 0]]]").unwrap();
    assert!(FloatMatrix::try_from(&j).is_err());
}

fn surd_strategy() -> impl Strategy<Value = Surd> {
    let term = (-6i64..=6, 1i64..=5, prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10]));
    prop::collection::vec(term, 1..4).prop_map(|ts| ts.into_iter().fold(Surd::zero(), |acc, (p, q, k)| &acc + &Surd::term(rat(p, q), k)))
}

fn exact_strategy() -> impl Strategy<Value = Exact> {
    (surd_strategy(), surd_strategy()).prop_map(|(a, b)| Exact::new(a, b))
}

proptest! {
    #[test]
    fn surd_field_laws(a in surd_strategy(), b in surd_strategy(), c in surd_strategy()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a - &a, Surd::zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inverse().unwrap(), Surd::one());
        }
    }

    #[test]
    fn surd_float_image_is_a_homomorphism(a in surd_strategy(), b in surd_strategy()) {
        let p = (&a * &b).to_f64();
        prop_assert!((p - a.to_f64() * b.to_f64()).abs() <= 1e-9 * (1.0 + p.abs()));
        let s = (&a + &b).to_f64();
        prop_assert!((s - a.to_f64() - b.to_f64()).abs() <= 1e-9 * (1.0 + s.abs()));
    }

    #[test]
    fn exact_division_inverts_multiplication(a in exact_strategy(), b in exact_strategy()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!(&(&a * &b) / &b, a.clone());
        let z = a.to_c64() * b.to_c64();
        prop_assert!(((&a * &b).to_c64() - z).norm() <= 1e-9 * (1.0 + z.norm()));
    }

    #[test]
    fn snapping_recovers_single_roots(p in -40i64..=40, q in 1i64..=12, k in prop::sample::select(vec![1u64, 2, 3, 5, 6, 7, 10, 15, 30])) {
        let s = Surd::term(rat(p, q), k);
        prop_assert_eq!(snap_real(s.to_f64(), 1e-9, 4096), Some(s));
    }

    #[test]
    fn rank_of_stacked_rows(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..4)) {
        let exact: Vec<Vec<Exact>> = rows.iter().map(|r| r.iter().map(|&x| Exact::int(x)).collect()).collect();
        let mut doubled = exact.clone();
        doubled.extend(exact.iter().map(|r| r.iter().map(|x| x * &Exact::int(2)).collect::<Vec<_>>()));
        prop_assert_eq!(rank(&doubled), rank(&exact));
        prop_assert_eq!(solve_late_pivots(&exact, 4).len(), rank(&exact));
    }
}
