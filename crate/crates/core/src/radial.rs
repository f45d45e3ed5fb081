//! Numerical integration of radial systems, closure against the full wave
//! operator, and the structural comparison of the two charge signs.
//!
//! Rows without a derivative term are constraints. They are differentiated
//! once to close the system for `y'` and re-imposed by projection after every
//! accepted step.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::Spin;
use crate::model::{abelian_ansatz, Ansatz, Background, DerivMode, Field, Linear, Params, RadialFn, Symbol, WaveOperator};
use crate::separation::compare::{find_symbol_map, SymbolMap};
use crate::separation::{separate_exact, systems_equal, Kind, RadialSystem};
use crate::wigner::{HalfInt, SphereGrid};
use crate::{Error, Result};

type C = Complex64;

fn kind_value(k: Kind, r: f64, p: &Params) -> f64 {
    match k {
        Kind::Ddr => 0.0,
        Kind::InvR => 1.0 / r,
        Kind::Energy => p.energy,
        Kind::Mass => p.mass,
        Kind::Profile => p.w,
        Kind::Unit => 1.0,
    }
}

/// A radial system with its parameters, in the matrix form `A y' + B y = 0`.
pub struct RadialProblem<'a> {
    pub symbols: Vec<Symbol>,
    sys: &'a RadialSystem,
    diff_rows: Vec<usize>,
    alg_rows: Vec<usize>,
    params: &'a dyn Fn(f64) -> Params,
}

impl<'a> RadialProblem<'a> {
    /// Fails when the rows do not determine every derivative at `r = probe`.
    pub fn new(sys: &'a RadialSystem, params: &'a dyn Fn(f64) -> Params, probe: f64) -> Result<Self> {
        let symbols: Vec<Symbol> = sys.symbols().into_iter().collect();
        let (diff_rows, alg_rows): (Vec<usize>, Vec<usize>) = (0..sys.rows.len()).partition(|&i| sys.rows[i].terms.keys().any(|(_, k)| *k == Kind::Ddr));
        let p = RadialProblem {
            symbols,
            sys,
            diff_rows,
            alg_rows,
            params,
        };
        let m = p.derivative_matrix(probe);
        let sv = m.clone().svd(false, false).singular_values;
        let top = sv.max();
        let rank = sv.iter().filter(|&&s| s > 1e-10 * top).count();
        if rank < p.symbols.len() {
            return Err(Error::Integration(format!(
                "{}: rows fix only {rank} of {} derivatives at r = {probe}",
                sys.name,
                p.symbols.len()
            )));
        }
        Ok(p)
    }

    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    fn index(&self, s: Symbol) -> usize {
        self.symbols.binary_search(&s).expect("declared symbol")
    }

    /// `(A, B)` restricted to `rows`.
    fn matrices(&self, rows: &[usize], r: f64) -> (DMatrix<C>, DMatrix<C>) {
        let p = (self.params)(r);
        let n = self.dim();
        let mut a = DMatrix::zeros(rows.len(), n);
        let mut b = DMatrix::zeros(rows.len(), n);
        for (i, &row) in rows.iter().enumerate() {
            for ((s, k), c) in &self.sys.rows[row].terms {
                let c = c.to_c64();
                let j = self.index(*s);
                if *k == Kind::Ddr {
                    a[(i, j)] += c;
                } else {
                    b[(i, j)] += c * kind_value(*k, r, &p);
                }
            }
        }
        (a, b)
    }

    /// Constraint matrix `C(r)` with `C y = 0`.
    fn constraint(&self, r: f64) -> DMatrix<C> {
        self.matrices(&self.alg_rows, r).1
    }

    fn constraint_deriv(&self, r: f64) -> DMatrix<C> {
        let h = 1e-5 * r.max(1.0);
        (self.constraint(r + h) - self.constraint(r - h)) / C::new(2.0 * h, 0.0)
    }

    fn derivative_matrix(&self, r: f64) -> DMatrix<C> {
        let (ad, _) = self.matrices(&self.diff_rows, r);
        let c = self.constraint(r);
        let n = self.dim();
        let mut m = DMatrix::zeros(ad.nrows() + c.nrows(), n);
        m.rows_mut(0, ad.nrows()).copy_from(&ad);
        m.rows_mut(ad.nrows(), c.nrows()).copy_from(&c);
        m
    }

    /// `y'` from the differential rows and the differentiated constraints.
    pub fn rhs(&self, r: f64, y: &DVector<C>) -> Result<DVector<C>> {
        let (_, bd) = self.matrices(&self.diff_rows, r);
        let m = self.derivative_matrix(r);
        let top = -(bd * y);
        let bottom = -(self.constraint_deriv(r) * y);
        let mut v = DVector::zeros(m.nrows());
        v.rows_mut(0, top.len()).copy_from(&top);
        v.rows_mut(top.len(), bottom.len()).copy_from(&bottom);
        m.svd(true, true)
            .solve(&v, 1e-13)
            .map_err(|e| Error::Integration(format!("derivative solve failed at r = {r}: {e}")))
    }

    /// `max |C y| / max |y|`; zero without constraints.
    pub fn constraint_residual(&self, r: f64, y: &DVector<C>) -> f64 {
        if self.alg_rows.is_empty() {
            return 0.0;
        }
        let scale = y.camax().max(f64::MIN_POSITIVE);
        (self.constraint(r) * y).camax() / scale
    }

    /// Least-norm correction of `y` onto `C(r) y = 0`.
    pub fn project(&self, r: f64, y: &DVector<C>) -> DVector<C> {
        if self.alg_rows.is_empty() {
            return y.clone();
        }
        let c = self.constraint(r);
        let svd = c.clone().svd(true, true);
        // one refinement pass; a single solve leaves ~1e-9 at small r
        let mut y = y.clone();
        for _ in 0..2 {
            match svd.solve(&(&c * &y), 1e-13) {
                Ok(dy) => y -= dy,
                Err(_) => break,
            }
        }
        y
    }

    /// Seeded random vector satisfying the constraints at `r0`, scaled to unit max norm.
    pub fn consistent_init(&self, r0: f64, seed: u64) -> DVector<C> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let y = DVector::from_fn(self.dim(), |_, _| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let y = self.project(r0, &y);
        let s = y.camax();
        y / C::new(s, 0.0)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegrateOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        IntegrateOptions {
            rtol: 1e-11,
            atol: 1e-13,
            max_steps: 200_000,
        }
    }
}

/// Initial-value solution tabulated at the requested radii.
#[derive(Clone, Debug, Serialize)]
pub struct Solution {
    pub system: String,
    pub symbols: Vec<String>,
    pub r: Vec<f64>,
    #[serde(skip)]
    pub y: Vec<Vec<C>>,
    /// Largest constraint residual at the output radii.
    pub constraint_residual: f64,
    /// Largest constraint residual before projection over all steps.
    pub drift: f64,
    pub steps: usize,
    pub rejected: usize,
}

impl Solution {
    pub fn column(&self, s: Symbol) -> Option<Vec<C>> {
        let name = s.to_string();
        let k = self.symbols.iter().position(|t| *t == name)?;
        Some(self.y.iter().map(|v| v[k]).collect())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(vec![]);
        let mut header = vec!["r".to_string()];
        for s in &self.symbols {
            header.push(format!("re_{s}"));
            header.push(format!("im_{s}"));
        }
        w.write_record(&header)?;
        for (r, y) in self.r.iter().zip(&self.y) {
            let mut rec = vec![format!("{r:.12e}")];
            for v in y {
                rec.push(format!("{:.15e}", v.re));
                rec.push(format!("{:.15e}", v.im));
            }
            w.write_record(&rec)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("ascii"))
    }
}

// Dormand-Prince 5(4) tableau
const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

fn combo(y: &DVector<C>, h: f64, ks: &[DVector<C>], w: &[f64]) -> DVector<C> {
    let mut out = y.clone();
    for (k, &c) in ks.iter().zip(w) {
        if c != 0.0 {
            out += k * C::new(h * c, 0.0);
        }
    }
    out
}

/// Adaptive Dormand-Prince integration from `outputs[0]` through the
/// remaining radii, which must increase.
pub fn integrate(p: &RadialProblem<'_>, init: &DVector<C>, outputs: &[f64], opts: &IntegrateOptions) -> Result<Solution> {
    if outputs.len() < 2 || outputs.windows(2).any(|w| w[1] <= w[0]) || outputs[0] <= 0.0 {
        return Err(Error::Config("output radii must be positive and increasing, at least two".into()));
    }
    if init.len() != p.dim() {
        return Err(Error::Shape(format!("initial vector of length {} for {} unknowns", init.len(), p.dim())));
    }
    let r0 = outputs[0];
    let c0 = p.constraint_residual(r0, init);
    if c0 > 1e-9 {
        return Err(Error::Config(format!(
            "initial vector violates the algebraic rows at r = {r0} (residual {c0:.2e})"
        )));
    }
    let mut y = init.clone();
    let mut r = r0;
    let mut h = (outputs[1] - outputs[0]).min(1e-2 * r0.max(1.0));
    let mut sol = Solution {
        system: p.sys.name.clone(),
        symbols: p.symbols.iter().map(|s| s.to_string()).collect(),
        r: vec![r0],
        y: vec![y.iter().copied().collect()],
        constraint_residual: c0,
        drift: c0,
        steps: 0,
        rejected: 0,
    };
    let mut k1 = p.rhs(r, &y)?;
    for &target in &outputs[1..] {
        while r < target {
            if sol.steps + sol.rejected >= opts.max_steps {
                return Err(Error::Integration(format!("step budget exhausted at r = {r:.6}")));
            }
            let last = r + h * (1.0 + 1e-9) >= target;
            let hs = if last { target - r } else { h };
            if hs < 1e-14 * r.max(1.0) {
                return Err(Error::Integration(format!("step size underflow at r = {r:.6}")));
            }
            let k2 = p.rhs(r + C2 * hs, &combo(&y, hs, std::slice::from_ref(&k1), &A[0][..1]))?;
            let k3 = p.rhs(r + C3 * hs, &combo(&y, hs, &[k1.clone(), k2.clone()], &A[1][..2]))?;
            let k4 = p.rhs(r + C4 * hs, &combo(&y, hs, &[k1.clone(), k2.clone(), k3.clone()], &A[2][..3]))?;
            let k5 = p.rhs(r + C5 * hs, &combo(&y, hs, &[k1.clone(), k2.clone(), k3.clone(), k4.clone()], &A[3][..4]))?;
            let k6 = p.rhs(
                r + hs,
                &combo(&y, hs, &[k1.clone(), k2.clone(), k3.clone(), k4.clone(), k5.clone()], &A[4][..5]),
            )?;
            let ks = [k1.clone(), k2, k3, k4, k5, k6];
            let y5 = combo(&y, hs, &ks, &A[5]);
            let k7 = p.rhs(r + hs, &y5)?;
            let mut all = ks.to_vec();
            all.push(k7.clone());
            let err_vec = combo(&DVector::zeros(y.len()), hs, &all, &E);
            let err = err_vec
                .iter()
                .zip(y.iter().zip(y5.iter()))
                .map(|(e, (a, b))| e.norm() / (opts.atol + opts.rtol * a.norm().max(b.norm())))
                .fold(0.0, f64::max);
            if !err.is_finite() {
                return Err(Error::Integration(format!("non-finite values at r = {r:.6}")));
            }
            if err <= 1.0 {
                r = if last || target - (r + hs) < 1e-12 * target { target } else { r + hs };
                sol.drift = sol.drift.max(p.constraint_residual(r, &y5));
                y = p.project(r, &y5);
                k1 = if p.alg_rows.is_empty() { k7 } else { p.rhs(r, &y)? };
                sol.steps += 1;
            } else {
                sol.rejected += 1;
            }
            let fac = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            if !(last && err <= 1.0) {
                h = hs * fac;
            }
        }
        sol.constraint_residual = sol.constraint_residual.max(p.constraint_residual(r, &y));
        sol.r.push(r);
        sol.y.push(y.iter().copied().collect());
    }
    Ok(sol)
}

/// `|y_a|^2 - |y_b|^2` along a solution.
pub fn flux(sol: &Solution, a: Symbol, b: Symbol) -> Result<Vec<f64>> {
    let (ya, yb) = match (sol.column(a), sol.column(b)) {
        (Some(x), Some(y)) => (x, y),
        _ => return Err(Error::Config(format!("{a} or {b} is not an unknown of {}", sol.system))),
    };
    Ok(ya.iter().zip(&yb).map(|(x, y)| x.norm_sqr() - y.norm_sqr()).collect())
}

/// Uniform radii `r0, r0 + h, ..., r1`.
pub fn uniform(r0: f64, r1: f64, h: f64) -> Vec<f64> {
    let n = ((r1 - r0) / h).round() as usize;
    (0..=n).map(|k| r0 + k as f64 * h).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureReport {
    pub spacing: f64,
    /// `max |H psi|` over interior radii and sphere nodes.
    pub residual: f64,
    /// `max(m, |eps|, 1) max |psi|`, for scale.
    pub scale: f64,
    pub relative: f64,
    pub points: usize,
}

/// Substitutes a tabulated solution into the full wave operator.
///
/// Radial derivatives come from sixth-order central differences of the table,
/// so the residual measures both the separation and the discretisation.
/// `aliases` gives ansatz symbols that are combinations of the unknowns.
pub fn closure_residual(
    sol: &Solution,
    a: &Ansatz,
    h: &WaveOperator,
    aliases: &BTreeMap<Symbol, Vec<(C, Symbol)>>,
    sphere: &SphereGrid,
) -> Result<ClosureReport> {
    let n = sol.r.len();
    if n < 7 {
        return Err(Error::Config("closure needs at least 7 tabulated radii".into()));
    }
    let dr = sol.r[1] - sol.r[0];
    if sol.r.windows(2).any(|w| ((w[1] - w[0]) - dr).abs() > 1e-9 * dr) {
        return Err(Error::Config("closure needs uniformly spaced radii".into()));
    }
    let cols: BTreeMap<Symbol, Vec<C>> = sol
        .symbols
        .iter()
        .enumerate()
        .map(|(k, s)| (Symbol::parse(s).expect("symbol name"), sol.y.iter().map(|v| v[k]).collect()))
        .collect();
    let value = |s: Symbol, i: usize| -> Option<C> {
        if let Some(c) = cols.get(&s) {
            return Some(c[i]);
        }
        aliases
            .get(&s)
            .map(|combo| combo.iter().map(|(w, t)| w * cols.get(t).map_or(C::new(0.0, 0.0), |c| c[i])).sum())
    };
    const W: [f64; 7] = [-1.0, 9.0, -45.0, 0.0, 45.0, -9.0, 1.0];
    let mut residual: f64 = 0.0;
    let mut amp: f64 = 0.0;
    let mut points = 0;
    for i in 3..n - 3 {
        let r = sol.r[i];
        let mut radial: BTreeMap<Symbol, Arc<dyn RadialFn>> = BTreeMap::new();
        for s in &a.symbols {
            let Some(v) = value(*s, i) else { continue };
            let mut d = C::new(0.0, 0.0);
            for (k, w) in W.iter().enumerate() {
                d += *w * value(*s, i + k - 3).unwrap_or_default();
            }
            radial.insert(
                *s,
                Arc::new(Linear {
                    at: r,
                    value: v,
                    slope: d / (60.0 * dr),
                }),
            );
        }
        let field = Field::from_ansatz(a, &|s| radial.get(&s).cloned());
        for k in 0..sphere.len() {
            let (th, ph, _) = sphere.node(k);
            let out = h.apply(&field, r, th, ph, DerivMode::Analytic);
            residual = residual.max(out.iter().map(|z| z.norm()).fold(0.0, f64::max));
            amp = amp.max(field.eval(r, th, ph).iter().map(|z| z.norm()).fold(0.0, f64::max));
            points += 1;
        }
    }
    let scale = amp * h.mass.abs().max(h.energy.abs()).max(1.0);
    Ok(ClosureReport {
        spacing: dr,
        residual,
        scale,
        relative: residual / scale.max(f64::MIN_POSITIVE),
        points,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SignSensitivity {
    pub spin: Spin,
    pub j: HalfInt,
    pub lambda: HalfInt,
    /// The two systems agree up to row order and scaling.
    pub identical: bool,
    /// Signed relabelling of the `-lambda` unknowns that turns one system into the other.
    pub map: Option<Vec<(String, i64, String)>>,
    pub plus: String,
    pub minus: String,
}

/// Compares the radial systems at `lambda` and `-lambda`.
pub fn sign_sensitivity_report(spin: Spin, j: HalfInt, lambda: HalfInt) -> Result<SignSensitivity> {
    let build = |l: HalfInt| -> Result<RadialSystem> {
        let a = abelian_ansatz(spin, l, j, j)?;
        let op = WaveOperator::new(spin, Background::Abelian { lambda: l }, 1.0, 0.5)?;
        separate_exact(&op.data, &a)
    };
    let (plus, minus) = (build(lambda)?, build(-lambda)?);
    let identical = plus.symbols() == minus.symbols() && systems_equal(&plus, &minus, false).equal;
    let map = if identical {
        None
    } else {
        find_symbol_map(&plus, &minus).map(|(m, _): (SymbolMap, _)| {
            m.into_iter()
                .filter(|(s, (k, t))| !(s == t && *k == 1))
                .map(|(s, (k, t))| (s.to_string(), k, t.to_string()))
                .collect()
        })
    };
    Ok(SignSensitivity {
        spin,
        j,
        lambda,
        identical,
        map,
        plus: plus.to_string(),
        minus: minus.to_string(),
    })
}

impl SignSensitivity {
    pub fn summary(&self) -> String {
        let mut s = format!("spin {} j = {} lambda = +-{}: ", self.spin.label(), self.j, self.lambda.abs());
        if self.identical {
            s.push_str("identical");
        } else {
            s.push_str("not identical");
            match &self.map {
                Some(m) if !m.is_empty() => {
                    s.push_str("; relabelling");
                    for (a, k, b) in m {
                        let _ = write!(s, " {a} -> {}{b}", if *k < 0 { "-" } else { "" });
                    }
                }
                _ => s.push_str("; no relabelling found"),
            }
        }
        s
    }
}
