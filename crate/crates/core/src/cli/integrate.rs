use std::collections::BTreeMap;

use num_complex::Complex64;
use serde_json::json;

use super::report::{Report, Table};
use crate::algebra::Spin;
use crate::model::{abelian_ansatz, doublet_ansatz, Ansatz, Background, Profile, Symbol, WaveOperator};
use crate::radial::{closure_residual, flux, integrate, uniform, ClosureReport, IntegrateOptions, RadialProblem, Solution};
use crate::separation::golden::doublet_relation;
use crate::separation::{golden_system, GoldenName, GoldenParams, RadialSystem, Variant};
use crate::wigner::{HalfInt, SphereGrid};
use crate::{Error, Result};

pub const CLOSURE_TOL: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct IntegrateArgs {
    pub golden: GoldenName,
    pub lambda: Option<HalfInt>,
    pub j: HalfInt,
    pub delta: i64,
    pub mass: f64,
    pub energy: f64,
    pub r0: f64,
    pub r1: f64,
    pub h: f64,
    /// Radii of the closure runs.
    pub closure: (f64, f64),
    /// Coarsest closure spacing; each further run halves it.
    pub closure_h: f64,
    pub levels: usize,
}

impl Default for IntegrateArgs {
    fn default() -> Self {
        IntegrateArgs {
            golden: GoldenName::Dirac,
            lambda: Some(HalfInt(1)),
            j: HalfInt(3),
            delta: 1,
            mass: 0.7,
            energy: 1.1,
            r0: 0.1,
            r1: 20.0,
            h: 0.05,
            closure: (1.0, 6.0),
            closure_h: 0.04,
            levels: 3,
        }
    }
}

/// Golden system, wave operator, ansatz and symbol aliases of one run.
pub struct Setup {
    pub system: RadialSystem,
    pub operator: WaveOperator,
    pub ansatz: Ansatz,
    pub aliases: BTreeMap<Symbol, Vec<(Complex64, Symbol)>>,
}

pub fn setup(a: &IntegrateArgs) -> Result<Setup> {
    let need = || a.lambda.ok_or_else(|| Error::Config(format!("{} needs --lambda", a.golden)));
    let doublet = || Background::Doublet { profile: Profile::default() };
    let (params, spin, bg, ansatz) = match a.golden {
        GoldenName::Dirac => {
            let l = need()?;
            (
                GoldenParams::abelian(l, a.j),
                Spin::Half,
                Background::Abelian { lambda: l },
                abelian_ansatz(Spin::Half, l, a.j, a.j)?,
            )
        }
        GoldenName::DiracMinimal => {
            let l = need()?;
            (
                GoldenParams::abelian(l, HalfInt(0)),
                Spin::Half,
                Background::Abelian { lambda: l },
                abelian_ansatz(Spin::Half, l, HalfInt(0), HalfInt(0))?,
            )
        }
        GoldenName::Vector => {
            let l = need()?;
            (
                GoldenParams::abelian(l, a.j),
                Spin::One,
                Background::Abelian { lambda: l },
                abelian_ansatz(Spin::One, l, a.j, a.j)?,
            )
        }
        GoldenName::VectorDoublet => (GoldenParams::doublet(a.j), Spin::One, doublet(), doublet_ansatz(Spin::One, a.j, a.j)?),
        GoldenName::ReducedDoublet => (GoldenParams::reduced(a.j, a.delta), Spin::One, doublet(), doublet_ansatz(Spin::One, a.j, a.j)?),
    };
    let system = golden_system(a.golden, &params, Variant::Corrected)?;
    let operator = WaveOperator::new(spin, bg, a.mass, a.energy)?;
    let aliases = if a.golden == GoldenName::ReducedDoublet {
        doublet_relation(a.delta).into_iter().map(|(g, c, f)| (g, vec![(c.to_c64(), f)])).collect()
    } else {
        BTreeMap::new()
    };
    Ok(Setup {
        system,
        operator,
        ansatz,
        aliases,
    })
}

/// Solves on `outputs` from a seeded consistent start.
pub fn solve(s: &Setup, outputs: &[f64], seed: u64, opts: &IntegrateOptions) -> Result<Solution> {
    let h = s.operator.clone();
    let pf = move |r: f64| h.params_at(r);
    let p = RadialProblem::new(&s.system, &pf, outputs[0].max(1.0))?;
    let y0 = p.consistent_init(outputs[0], seed);
    integrate(&p, &y0, outputs, opts)
}

/// Closure residuals at the coarse spacing and its successive halvings.
pub fn closure_sweep(s: &Setup, a: &IntegrateArgs, seed: u64, opts: &IntegrateOptions) -> Result<Vec<ClosureReport>> {
    let sphere = SphereGrid::for_j(a.j + HalfInt(4));
    let mut out = vec![];
    let mut h = a.closure_h;
    for _ in 0..a.levels {
        let sol = solve(s, &uniform(a.closure.0, a.closure.1, h), seed, opts)?;
        out.push(closure_residual(&sol, &s.ansatz, &s.operator, &s.aliases, &sphere)?);
        h /= 2.0;
    }
    Ok(out)
}

fn solution_table(sol: &Solution) -> Table {
    let mut header = vec!["r".to_string()];
    for s in &sol.symbols {
        header.push(format!("re_{s}"));
        header.push(format!("im_{s}"));
    }
    let rows = sol
        .r
        .iter()
        .zip(&sol.y)
        .map(|(r, y)| {
            let mut row = vec![format!("{r:.12e}")];
            for v in y {
                row.push(format!("{:.15e}", v.re));
                row.push(format!("{:.15e}", v.im));
            }
            row
        })
        .collect();
    Table { header, rows }
}

pub fn integrate_cmd(a: &IntegrateArgs, seed: u64) -> Result<Report> {
    if a.levels < 2 {
        return Err(Error::Config("closure needs at least two spacings".into()));
    }
    let s = setup(a)?;
    let opts = IntegrateOptions::default();
    let mut rep = Report::new("integrate", seed);
    rep.set("system", &s.system.name);
    rep.set("mass", a.mass);
    rep.set("energy", a.energy);
    rep.set("range", [a.r0, a.r1]);
    rep.set("spacing", a.h);
    rep.set("closure_range", [a.closure.0, a.closure.1]);
    rep.set("closure_spacing", a.closure_h);
    rep.set("closure_levels", a.levels);
    rep.set("closure_tolerance", CLOSURE_TOL);
    rep.set("integrator", &opts);
    rep.line("initial-value solution from a seeded consistent start; no boundary condition imposed");
    let sol = solve(&s, &uniform(a.r0, a.r1, a.h), seed, &opts)?;
    rep.check(
        sol.drift <= 1e-9,
        format!(
            "constraint drift {:.2e}, residual at outputs {:.2e}, {} steps ({} rejected)",
            sol.drift, sol.constraint_residual, sol.steps, sol.rejected
        ),
    );
    let mut data = json!({ "solution": &sol });
    if a.mass == 0.0 && a.golden == GoldenName::Dirac {
        let fl = flux(&sol, Symbol::f(3), Symbol::f(4))?;
        let dev = fl.iter().map(|x| (x - fl[0]).abs()).fold(0.0, f64::max);
        rep.check(dev <= 1e-9, format!("massless flux |f3|^2 - |f4|^2 conserved to {dev:.2e}"));
        data["flux_deviation"] = json!(dev);
    }
    let cl = closure_sweep(&s, a, seed, &opts)?;
    for c in &cl {
        rep.line(format!(
            "closure at spacing {:.4e}: relative residual {:.2e} (absolute {:.2e})",
            c.spacing, c.relative, c.residual
        ));
    }
    let monotone = cl.windows(2).all(|w| w[1].relative < w[0].relative);
    let finest = cl.last().expect("levels >= 2").relative;
    rep.check(monotone, format!("closure decreases under halving: {}", if monotone { "YES" } else { "NO" }));
    rep.check(finest <= CLOSURE_TOL, format!("finest closure {finest:.2e} within {CLOSURE_TOL:.0e}"));
    data["closure"] = json!(cl);
    rep.data = data;
    rep.table = Some(solution_table(&sol));
    Ok(rep)
}
