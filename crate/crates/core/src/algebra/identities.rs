//! Checks of the defining algebraic identities of a representation.

use serde::Serialize;

use super::matrix::{Matrix, Scalar};
use super::reps::{metric, Representation, Spin};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl std::str::FromStr for Backend {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> crate::error::Result<Self> {
        match s {
            "exact" => Ok(Backend::Exact),
            "float" => Ok(Backend::Float),
            _ => Err(crate::error::Error::Config(format!("unknown backend '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub family: String,
    pub checked: usize,
    pub failures: Vec<String>,
    pub max_residual: f64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub spin: Spin,
    pub backend: Backend,
    pub families: Vec<IdentityReport>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.families.iter().all(IdentityReport::passed)
    }

    pub fn failing_identities(&self) -> Vec<&str> {
        self.families.iter().filter(|f| !f.passed()).map(|f| f.family.as_str()).collect()
    }
}

/// Matrices entering the identity checks, all in one scalar type.
#[derive(Clone, Debug)]
pub struct AlgebraInput<T> {
    pub spin: Spin,
    pub gammas: [Matrix<T>; 4],
    pub spherical_reflection: Matrix<T>,
    pub cartesian_reflection: Matrix<T>,
    /// Expected diagonal of `i J^{12}`.
    pub weights: Vec<T>,
}

impl AlgebraInput<crate::algebra::Exact> {
    pub fn from_rep(rep: &Representation) -> Self {
        let weights = match rep.spin {
            Spin::Half => [1, -1, 1, -1].iter().map(|&w| Scalar::from_ratio(w, 2)).collect(),
            Spin::One => [0, 1, 0, -1, 1, 0, -1, 1, 0, -1].iter().map(|&w| Scalar::from_ratio(w, 1)).collect(),
        };
        AlgebraInput {
            spin: rep.spin,
            gammas: rep.matrices.clone(),
            spherical_reflection: rep.spherical_reflection(),
            cartesian_reflection: rep.cartesian_reflection(),
            weights,
        }
    }
}

impl<T: Scalar> AlgebraInput<T> {
    pub fn to_float(&self) -> AlgebraInput<num_complex::Complex64> {
        AlgebraInput {
            spin: self.spin,
            gammas: [0, 1, 2, 3].map(|a| self.gammas[a].to_float()),
            spherical_reflection: self.spherical_reflection.to_float(),
            cartesian_reflection: self.cartesian_reflection.to_float(),
            weights: self.weights.iter().map(Scalar::to_c64).collect(),
        }
    }
}

struct Checker {
    exact: bool,
    tol: f64,
    report: IdentityReport,
}

impl Checker {
    fn new(family: &str, backend: Backend, tol: f64) -> Self {
        Checker {
            exact: backend == Backend::Exact,
            tol,
            report: IdentityReport {
                family: family.into(),
                checked: 0,
                failures: vec![],
                max_residual: 0.0,
            },
        }
    }

    fn expect_equal<T: Scalar>(&mut self, lhs: crate::error::Result<Matrix<T>>, rhs: &Matrix<T>, what: impl FnOnce() -> String) {
        self.report.checked += 1;
        let lhs = match lhs {
            Ok(m) => m,
            Err(e) => {
                self.report.failures.push(format!("{}: {e}", what()));
                return;
            }
        };
        let res = lhs.max_abs_diff(rhs);
        self.report.max_residual = self.report.max_residual.max(res);
        let ok = if self.exact { lhs == *rhs } else { res <= self.tol };
        if !ok {
            self.report.failures.push(format!("{} (residual {res:.3e})", what()));
        }
    }

    fn done(self) -> IdentityReport {
        self.report
    }
}

fn generator<T: Scalar>(spin: Spin, g: &[Matrix<T>; 4], a: usize, b: usize) -> crate::error::Result<Matrix<T>> {
    let c = g[a].commutator(&g[b])?;
    Ok(match spin {
        Spin::Half => c.scale(&T::from_ratio(1, 4)),
        Spin::One => c,
    })
}

fn g<T: Scalar>(a: usize, b: usize) -> T {
    if a == b {
        T::from_ratio(metric(a), 1)
    } else {
        T::zero()
    }
}

/// Runs the five identity families for the given matrices.
pub fn verify_algebra<T: Scalar>(input: &AlgebraInput<T>, backend: Backend) -> AlgebraReport {
    let tol = 1e-12;
    let gm = &input.gammas;
    let n = gm[0].rows();
    let id = Matrix::<T>::identity(n);
    let zero = Matrix::<T>::zeros(n, n);
    let mut families = Vec::new();

    match input.spin {
        Spin::Half => {
            let mut c = Checker::new("clifford", backend, tol);
            for a in 0..4 {
                for b in 0..4 {
                    let rhs = id.scale(&g::<T>(a, b).mul(&T::from_ratio(2, 1)));
                    c.expect_equal(gm[a].anticommutator(&gm[b]), &rhs, || format!("{{g{a}, g{b}}} = 2 g^{a}{b}"));
                }
            }
            families.push(c.done());
        }
        Spin::One => {
            let mut c = Checker::new("dkp-trilinear", backend, tol);
            for a in 0..4 {
                for b in 0..4 {
                    for cc in 0..4 {
                        let lhs = gm[a]
                            .try_mul(&gm[b])
                            .and_then(|x| x.try_mul(&gm[cc]))
                            .and_then(|x| x.try_add(&gm[cc].try_mul(&gm[b])?.try_mul(&gm[a])?));
                        let rhs = &gm[cc].scale(&g::<T>(a, b)) + &gm[a].scale(&g::<T>(cc, b));
                        c.expect_equal(lhs, &rhs, || format!("b{a} b{b} b{cc} + b{cc} b{b} b{a}"));
                    }
                }
            }
            families.push(c.done());
        }
    }

    let mut c = Checker::new("lorentz-closure", backend, tol);
    let gens: Vec<Vec<Matrix<T>>> = (0..4)
        .map(|a| (0..4).map(|b| generator(input.spin, gm, a, b).unwrap_or_else(|_| zero.clone())).collect())
        .collect();
    for a in 0..4 {
        for b in 0..4 {
            for cc in 0..4 {
                for d in 0..4 {
                    let lhs = gens[a][b].commutator(&gens[cc][d]);
                    let rhs = &(&(&gens[a][d].scale(&g::<T>(b, cc)) - &gens[b][d].scale(&g::<T>(a, cc))) + &gens[b][cc].scale(&g::<T>(a, d)))
                        - &gens[a][cc].scale(&g::<T>(b, d));
                    c.expect_equal(lhs, &rhs, || format!("[J{a}{b}, J{cc}{d}]"));
                }
            }
        }
    }
    families.push(c.done());

    let mut c = Checker::new("helicity-weights", backend, tol);
    let w = gens[1][2].scale(&T::imag_unit());
    c.expect_equal(Ok(w), &Matrix::diag(input.weights.clone()), || "i J12 diagonal with cyclic weights".into());
    families.push(c.done());

    let mut c = Checker::new("spherical-reflection", backend, tol);
    let p = &input.spherical_reflection;
    for (a, sign) in [(0, 1), (1, -1), (2, 1), (3, 1)] {
        let rhs = gm[a].try_mul(p).map(|x| x.scale(&T::from_ratio(sign, 1))).unwrap_or_else(|_| zero.clone());
        c.expect_equal(p.try_mul(&gm[a]), &rhs, || format!("Pi g{a} = {} g{a} Pi", if sign > 0 { "+" } else { "-" }));
    }
    c.expect_equal(p.try_mul(p), &id, || "Pi^2 = 1".into());
    families.push(c.done());

    let mut c = Checker::new("cartesian-reflection", backend, tol);
    let p = &input.cartesian_reflection;
    for (a, sign) in [(0, 1), (1, -1), (2, -1), (3, -1)] {
        let rhs = gm[a].try_mul(p).map(|x| x.scale(&T::from_ratio(sign, 1))).unwrap_or_else(|_| zero.clone());
        c.expect_equal(p.try_mul(&gm[a]), &rhs, || format!("Pi g{a} = {} g{a} Pi", if sign > 0 { "+" } else { "-" }));
    }
    let sq = match input.spin {
        Spin::Half => -&id,
        Spin::One => id.clone(),
    };
    c.expect_equal(p.try_mul(p), &sq, || "Pi^2 as printed".into());
    families.push(c.done());

    AlgebraReport {
        spin: input.spin,
        backend,
        families,
    }
}
