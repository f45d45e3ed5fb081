use std::collections::BTreeMap;

use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;

use monopole_core::algebra::{Exact, Spin};
use monopole_core::cli::{setup, solve, IntegrateArgs};
use monopole_core::model::{abelian_ansatz, Background, Params, Symbol, WaveOperator};
use monopole_core::radial::{closure_residual, flux, integrate, uniform, IntegrateOptions, RadialProblem};
use monopole_core::separation::{golden_system, separate_exact, GoldenName, GoldenParams, Kind, RadialRow, RadialSystem, Variant};
use monopole_core::wigner::{HalfInt, SphereGrid};

type C = Complex64;

fn f(i: u8) -> Symbol {
    Symbol::f(i)
}

fn int(n: i64) -> Exact {
    Exact::int(n)
}

fn system(rows: Vec<RadialRow>) -> RadialSystem {
    RadialSystem {
        name: "test".into(),
        rows,
        vacuous: vec![],
        notes: vec![],
    }
}

fn c(x: f64) -> C {
    C::new(x, 0.0)
}

#[test]
fn harmonic_rotation() {
    let sys = system(vec![
        RadialRow::new("a").with(f(1), Kind::Ddr, int(1)).with(f(2), Kind::Mass, int(-1)),
        RadialRow::new("b").with(f(2), Kind::Ddr, int(1)).with(f(1), Kind::Mass, int(1)),
    ]);
    let m = 1.7;
    let pf = move |_: f64| Params { energy: 0.0, mass: m, w: 0.0 };
    let p = RadialProblem::new(&sys, &pf, 1.0).unwrap();
    let rs = uniform(1.0, 11.0, 0.5);
    let sol = integrate(&p, &DVector::from_vec(vec![c(1.0), c(0.0)]), &rs, &IntegrateOptions::default()).unwrap();
    for (r, y) in sol.r.iter().zip(&sol.y) {
        let t = m * (r - 1.0);
        assert!((y[0] - c(t.cos())).norm() <= 1e-9, "r = {r}");
        assert!((y[1] + c(t.sin())).norm() <= 1e-9, "r = {r}");
    }
}

#[test]
fn power_law() {
    for k in [-2, 1, 3] {
        let sys = system(vec![RadialRow::new("a").with(f(1), Kind::Ddr, int(1)).with(f(1), Kind::InvR, int(-k))]);
        let pf = |_: f64| Params {
            energy: 0.0,
            mass: 0.0,
            w: 0.0,
        };
        let p = RadialProblem::new(&sys, &pf, 1.0).unwrap();
        let sol = integrate(&p, &DVector::from_vec(vec![c(1.0)]), &uniform(0.5, 8.0, 0.25), &IntegrateOptions::default()).unwrap();
        for (r, y) in sol.r.iter().zip(&sol.y) {
            let want = (r / 0.5).powi(k as i32);
            assert!((y[0].re - want).abs() <= 1e-9 * want.max(1.0), "k = {k} r = {r}");
        }
    }
}

#[test]
fn algebraic_row_is_kept() {
    // f1' = f2 with f2 = r f1, so f1 = exp((r^2 - r0^2) / 2)
    let sys = system(vec![
        RadialRow::new("a").with(f(1), Kind::Ddr, int(1)).with(f(2), Kind::Unit, int(-1)),
        RadialRow::new("b").with(f(2), Kind::Unit, int(1)).with(f(1), Kind::Profile, int(-1)),
    ]);
    let pf = |r: f64| Params { energy: 0.0, mass: 0.0, w: r };
    let p = RadialProblem::new(&sys, &pf, 1.0).unwrap();
    let y0 = p.consistent_init(1.0, 4);
    assert!(p.constraint_residual(1.0, &y0) <= 1e-14);
    let sol = integrate(&p, &y0, &uniform(1.0, 3.0, 0.1), &IntegrateOptions::default()).unwrap();
    assert!(sol.constraint_residual <= 1e-12);
    for (r, y) in sol.r.iter().zip(&sol.y) {
        let want = y0[0] * ((r * r - 1.0) / 2.0).exp();
        assert!((y[0] - want).norm() <= 1e-8 * want.norm(), "r = {r}");
        assert!((y[1] - want * *r).norm() <= 1e-8 * want.norm() * r);
    }
}

#[test]
fn underdetermined_system_is_rejected() {
    let sys = system(vec![RadialRow::new("a").with(f(1), Kind::Ddr, int(1)).with(f(2), Kind::Mass, int(1))]);
    let pf = |_: f64| Params {
        energy: 0.0,
        mass: 1.0,
        w: 0.0,
    };
    assert!(RadialProblem::new(&sys, &pf, 1.0).is_err());
}

/// Riccati-Bessel `x j_n(x)` by upward recurrence.
fn riccati(n: usize, x: f64) -> f64 {
    let (mut a, mut b) = (x.sin(), x.sin() / x - x.cos());
    if n == 0 {
        return a;
    }
    for k in 1..n {
        (a, b) = (b, (2 * k + 1) as f64 / x * b - a);
    }
    b
}

#[test]
fn massless_neutral_dirac_is_riccati_bessel() {
    let e = 1.3;
    for j in [1, 3, 5] {
        let nu = (j as usize).div_ceil(2);
        let a = abelian_ansatz(Spin::Half, HalfInt(0), HalfInt(j), HalfInt(j)).unwrap();
        let h = WaveOperator::new(Spin::Half, Background::Abelian { lambda: HalfInt(0) }, 0.0, e).unwrap();
        let sys = separate_exact(&h.data, &a).unwrap();
        let pf = move |_: f64| Params { energy: e, mass: 0.0, w: 0.0 };
        let p = RadialProblem::new(&sys, &pf, 1.0).unwrap();
        let idx = |s: Symbol| p.symbols.iter().position(|t| *t == s).unwrap();
        let r0 = 2.0;
        let (u, v) = (c(riccati(nu, e * r0)), C::new(0.0, riccati(nu - 1, e * r0)));
        let mut y0 = DVector::zeros(p.dim());
        y0[idx(f(3))] = (u + v) / 2.0;
        y0[idx(f(4))] = (u - v) / 2.0;
        let sol = integrate(&p, &y0, &uniform(r0, 20.0, 0.5), &IntegrateOptions::default()).unwrap();
        let (f3, f4) = (sol.column(f(3)).unwrap(), sol.column(f(4)).unwrap());
        for (i, r) in sol.r.iter().enumerate() {
            let x = e * r;
            assert!((f3[i] + f4[i] - c(riccati(nu, x))).norm() <= 1e-8, "j = {j} r = {r}");
            assert!((f3[i] - f4[i] - C::new(0.0, riccati(nu - 1, x))).norm() <= 1e-8, "j = {j} r = {r}");
            assert!(sol.column(f(1)).unwrap()[i].norm() <= 1e-12);
        }
        let fl = flux(&sol, f(3), f(4)).unwrap();
        assert!(fl.iter().all(|x| (x - fl[0]).abs() <= 1e-9));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn seeded_starts_satisfy_the_constraints(seed in any::<u64>(), l in -2i32..=2, k in 2i32..=3, r0 in 0.5f64..3.0) {
        let lambda = HalfInt(l);
        let j = HalfInt(l.abs() + 2 * k);
        let sys = golden_system(GoldenName::Vector, &GoldenParams::abelian(lambda, j), Variant::Corrected).unwrap();
        let pf = |_: f64| Params { energy: 0.5, mass: 1.0, w: 0.0 };
        let p = RadialProblem::new(&sys, &pf, 1.0).unwrap();
        let y = p.consistent_init(r0, seed);
        let cr = p.constraint_residual(r0, &y); prop_assert!(cr <= 1e-12, "{cr:.2e}");
        prop_assert!((y.camax() - 1.0).abs() <= 1e-12);
        let yp = p.project(r0, &y);
        prop_assert!((yp - y).norm() <= 1e-12);
    }
}

fn dirac_args() -> IntegrateArgs {
    IntegrateArgs {
        golden: GoldenName::Dirac,
        lambda: Some(HalfInt(2)),
        j: HalfInt(3),
        ..IntegrateArgs::default()
    }
}

#[test]
fn closure_converges_with_spacing() {
    let a = dirac_args();
    let s = setup(&a).unwrap();
    let sphere = SphereGrid::for_j(a.j + HalfInt(4));
    let mut last = f64::INFINITY;
    for h in [0.1, 0.05, 0.025, 0.0125] {
        let sol = solve(&s, &uniform(1.0, 2.0, h), 3, &IntegrateOptions::default()).unwrap();
        let rep = closure_residual(&sol, &s.ansatz, &s.operator, &s.aliases, &sphere).unwrap();
        assert!(rep.relative < last);
        last = rep.relative;
    }
    assert!(last <= 1e-8, "{last:.2e}");
}

#[test]
fn closure_catches_a_wrong_solution() {
    let a = dirac_args();
    let s = setup(&a).unwrap();
    let sphere = SphereGrid::for_j(a.j + HalfInt(4));
    let mut sol = solve(&s, &uniform(1.0, 2.0, 0.025), 3, &IntegrateOptions::default()).unwrap();
    for y in &mut sol.y {
        y[0] *= 1.01;
    }
    let rep = closure_residual(&sol, &s.ansatz, &s.operator, &s.aliases, &sphere).unwrap();
    assert!(rep.relative > 1e-4, "{:.2e}", rep.relative);
    let empty = BTreeMap::new();
    sol.r.truncate(5);
    sol.y.truncate(5);
    assert!(closure_residual(&sol, &s.ansatz, &s.operator, &empty, &sphere).is_err());
}
