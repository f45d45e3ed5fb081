//! Hand-transcribed radial systems of the published families.
//!
//! Each system comes in two variants. `AsPrinted` follows the printed text
//! symbol for symbol; `Corrected` repairs the misprints listed by
//! [`corrections`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::system::{Kind, RadialRow, RadialSystem};
use crate::algebra::{Exact, Surd};
use crate::model::Symbol;
use crate::wigner::{sigma_ladder, HalfInt};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GoldenName {
    DiracMinimal,
    Dirac,
    Vector,
    VectorDoublet,
    ReducedDoublet,
}

impl GoldenName {
    pub const ALL: [GoldenName; 5] = [
        GoldenName::DiracMinimal,
        GoldenName::Dirac,
        GoldenName::Vector,
        GoldenName::VectorDoublet,
        GoldenName::ReducedDoublet,
    ];
}

impl fmt::Display for GoldenName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GoldenName::DiracMinimal => "dirac-minimal",
            GoldenName::Dirac => "dirac",
            GoldenName::Vector => "vector",
            GoldenName::VectorDoublet => "vector-doublet",
            GoldenName::ReducedDoublet => "reduced-doublet",
        };
        f.write_str(s)
    }
}

impl FromStr for GoldenName {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "dirac-minimal" => Ok(GoldenName::DiracMinimal),
            "dirac" => Ok(GoldenName::Dirac),
            "vector" => Ok(GoldenName::Vector),
            "vector-doublet" => Ok(GoldenName::VectorDoublet),
            "reduced-doublet" => Ok(GoldenName::ReducedDoublet),
            _ => Err(Error::Config(format!("unknown golden system '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    #[default]
    Corrected,
    AsPrinted,
}

/// Parameters of a golden system. `lambda` is used by the Abelian systems,
/// `delta` by the reduced doublet system.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GoldenParams {
    pub j: HalfInt,
    pub lambda: Option<HalfInt>,
    pub delta: Option<i64>,
}

impl GoldenParams {
    pub fn abelian(lambda: HalfInt, j: HalfInt) -> Self {
        GoldenParams {
            j,
            lambda: Some(lambda),
            delta: None,
        }
    }

    pub fn doublet(j: HalfInt) -> Self {
        GoldenParams { j, lambda: None, delta: None }
    }

    pub fn reduced(j: HalfInt, delta: i64) -> Self {
        GoldenParams {
            j,
            lambda: None,
            delta: Some(delta),
        }
    }
}

/// One documented misprint.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Correction {
    pub system: GoldenName,
    pub row: String,
    pub printed: String,
    pub corrected: String,
}

/// `nu = sqrt((j + 1/2)^2 - lambda^2)`.
pub fn nu(j: HalfInt, lambda: HalfInt) -> Result<Surd> {
    let a = (j.0 + 1) as i64;
    let l = lambda.0 as i64;
    let n4 = a * a - l * l;
    if n4 < 0 {
        return Err(Error::Domain(format!("nu undefined for j={j}, lambda={lambda}")));
    }
    Surd::sqrt_rational(&crate::algebra::rat(n4, 4))
}

/// `c = sqrt((j+lambda)(j-lambda+1))/2` and `d = sqrt((j-lambda)(j+lambda+1))/2`.
pub fn c_d(j: HalfInt, lambda: HalfInt) -> Result<(Surd, Surd)> {
    let (a, b) = sigma_ladder(j, lambda)?;
    let half = Surd::from_rational(crate::algebra::rat(1, 2));
    Ok((&a * &half, &b * &half))
}

/// `(c+, d+, c-, d-)`: the doublet coefficients, `+` taken at `lambda = -1/2`.
pub fn c_d_pm(j: HalfInt) -> Result<(Surd, Surd, Surd, Surd)> {
    let (cp, dp) = c_d(j, HalfInt(-1))?;
    let (cm, dm) = c_d(j, HalfInt(1))?;
    Ok((cp, dp, cm, dm))
}

pub fn corrections() -> Vec<Correction> {
    let c = |system, row: &str, printed: &str, corrected: &str| Correction {
        system,
        row: row.into(),
        printed: printed.into(),
        corrected: corrected.into(),
    };
    use GoldenName::*;
    vec![
        c(Vector, "f3", "(2i/r)(-c f8 + d f10)", "(sqrt(2) i/r)(-c f8 + d f10)"),
        c(Vector, "f5", "+i eps f2", "-i eps f2"),
        c(Vector, "f7", "+i eps f4", "-i eps f4"),
        c(VectorDoublet, "f3, g3", "(2i/r)(...)", "(sqrt(2) i/r)(...)"),
        c(VectorDoublet, "f5, g7, f7, g5", "+i eps", "-i eps"),
        c(VectorDoublet, "g4", "-i(d/dr - 1/r) f10", "-i(d/dr + 1/r) g10"),
        c(VectorDoublet, "g9", "- g9 + i W f4", "- m g9 - i W f4"),
        c(VectorDoublet, "all", "W", "W/sqrt(2)"),
        c(
            ReducedDoublet,
            "f3",
            "(2i/r)(...) - i delta W f10",
            "(sqrt(2) i/r)(...) + i delta W f10 / sqrt(2)",
        ),
        c(ReducedDoublet, "f5, f7", "+i eps", "-i eps"),
        c(
            ReducedDoublet,
            "g-row",
            "i eps g5 + i(d/dr + 1/r) g8 + ... + i W f9",
            "dropped: under the eigen-relation it repeats the f4 row",
        ),
        c(ReducedDoublet, "all", "W", "W/sqrt(2)"),
    ]
}

struct Builder {
    rows: Vec<RadialRow>,
}

impl Builder {
    fn new() -> Self {
        Builder { rows: vec![] }
    }

    fn row(&mut self, name: &str) -> &mut Self {
        self.rows.push(RadialRow::new(name));
        self
    }

    fn t(&mut self, s: Symbol, k: Kind, c: Exact) -> &mut Self {
        self.rows.last_mut().expect("row started").add(s, k, c);
        self
    }

    fn finish(self, name: String, vacuous: Vec<Symbol>, notes: Vec<String>) -> RadialSystem {
        RadialSystem {
            name,
            rows: self.rows,
            vacuous,
            notes,
        }
    }
}

fn re(s: &Surd) -> Exact {
    Exact::real(s.clone())
}

fn int(n: i64) -> Exact {
    Exact::int(n)
}

fn sqrt2() -> Exact {
    Exact::real(Surd::sqrt_int(2).expect("positive"))
}

fn need_lambda(p: &GoldenParams) -> Result<HalfInt> {
    p.lambda.ok_or_else(|| Error::Config("golden system needs lambda".into()))
}

/// The published system `name` at parameters `p`.
pub fn golden_system(name: GoldenName, p: &GoldenParams, v: Variant) -> Result<RadialSystem> {
    match name {
        GoldenName::DiracMinimal => dirac_minimal(need_lambda(p)?),
        GoldenName::Dirac => dirac(p.j, need_lambda(p)?),
        GoldenName::Vector => vector(p.j, need_lambda(p)?, v),
        GoldenName::VectorDoublet => vector_doublet(p.j, v),
        GoldenName::ReducedDoublet => {
            let d = p.delta.ok_or_else(|| Error::Config("golden system needs delta".into()))?;
            reduced_doublet(p.j, d, v)
        }
    }
}

fn dirac(j: HalfInt, lambda: HalfInt) -> Result<RadialSystem> {
    let nu = re(&nu(j, lambda)?);
    let i = Exact::i();
    let inu = &i * &nu;
    let f = Symbol::f;
    let mut b = Builder::new();
    b.row("f1")
        .t(f(3), Kind::Energy, int(1))
        .t(f(3), Kind::Ddr, -&i)
        .t(f(4), Kind::InvR, -&inu)
        .t(f(1), Kind::Mass, int(-1));
    b.row("f2")
        .t(f(4), Kind::Energy, int(1))
        .t(f(4), Kind::Ddr, i.clone())
        .t(f(3), Kind::InvR, inu.clone())
        .t(f(2), Kind::Mass, int(-1));
    b.row("f3")
        .t(f(1), Kind::Energy, int(1))
        .t(f(1), Kind::Ddr, i.clone())
        .t(f(2), Kind::InvR, inu.clone())
        .t(f(3), Kind::Mass, int(-1));
    b.row("f4")
        .t(f(2), Kind::Energy, int(1))
        .t(f(2), Kind::Ddr, -&i)
        .t(f(1), Kind::InvR, -&inu)
        .t(f(4), Kind::Mass, int(-1));
    Ok(b.finish(format!("dirac(lambda={lambda}, j={j})"), vec![], vec![]))
}

fn dirac_minimal(lambda: HalfInt) -> Result<RadialSystem> {
    let i = Exact::i();
    let f = Symbol::f;
    let mut b = Builder::new();
    let vacuous = match lambda.0 {
        1 => {
            b.row("f1").t(f(3), Kind::Energy, int(1)).t(f(3), Kind::Ddr, -&i).t(f(1), Kind::Mass, int(-1));
            b.row("f3")
                .t(f(1), Kind::Energy, int(1))
                .t(f(1), Kind::Ddr, i.clone())
                .t(f(3), Kind::Mass, int(-1));
            vec![f(2), f(4)]
        }
        -1 => {
            b.row("f2")
                .t(f(4), Kind::Energy, int(1))
                .t(f(4), Kind::Ddr, i.clone())
                .t(f(2), Kind::Mass, int(-1));
            b.row("f4").t(f(2), Kind::Energy, int(1)).t(f(2), Kind::Ddr, -&i).t(f(4), Kind::Mass, int(-1));
            vec![f(1), f(3)]
        }
        _ => return Err(Error::Domain(format!("the j = 0 system exists only for lambda = +-1/2, got {lambda}"))),
    };
    Ok(b.finish(format!("dirac_minimal(lambda={lambda}, j=0)"), vacuous, vec![]))
}

fn vector(j: HalfInt, lambda: HalfInt, v: Variant) -> Result<RadialSystem> {
    let (c, d) = c_d(j, lambda)?;
    let (c, d) = (re(&c), re(&d));
    let i = Exact::i();
    let r2 = sqrt2();
    let fixed = v == Variant::Corrected;
    let two = if fixed { r2.clone() } else { int(2) };
    let es = if fixed { -&i } else { i.clone() };
    let f = Symbol::f;
    let m1 = int(-1);
    let r2c = &r2 * &c;
    let r2d = &r2 * &d;
    let ir2c = &i * &r2c;
    let ir2d = &i * &r2d;
    let mut b = Builder::new();
    b.row("f1")
        .t(f(6), Kind::Ddr, m1.clone())
        .t(f(6), Kind::InvR, int(-2))
        .t(f(5), Kind::InvR, -&r2c)
        .t(f(7), Kind::InvR, -&r2d)
        .t(f(1), Kind::Mass, m1.clone());
    b.row("f2")
        .t(f(5), Kind::Energy, i.clone())
        .t(f(8), Kind::Ddr, i.clone())
        .t(f(8), Kind::InvR, i.clone())
        .t(f(9), Kind::InvR, ir2c.clone())
        .t(f(2), Kind::Mass, m1.clone());
    b.row("f3")
        .t(f(6), Kind::Energy, i.clone())
        .t(f(8), Kind::InvR, -&(&(&two * &i) * &c))
        .t(f(10), Kind::InvR, &(&two * &i) * &d)
        .t(f(3), Kind::Mass, m1.clone());
    b.row("f4")
        .t(f(7), Kind::Energy, i.clone())
        .t(f(10), Kind::Ddr, -&i)
        .t(f(10), Kind::InvR, -&i)
        .t(f(9), Kind::InvR, -&ir2d)
        .t(f(4), Kind::Mass, m1.clone());
    b.row("f5")
        .t(f(2), Kind::Energy, es.clone())
        .t(f(1), Kind::InvR, r2c.clone())
        .t(f(5), Kind::Mass, m1.clone());
    b.row("f6")
        .t(f(3), Kind::Energy, -&i)
        .t(f(1), Kind::Ddr, m1.clone())
        .t(f(6), Kind::Mass, m1.clone());
    b.row("f7")
        .t(f(4), Kind::Energy, es.clone())
        .t(f(1), Kind::InvR, r2d.clone())
        .t(f(7), Kind::Mass, m1.clone());
    b.row("f8")
        .t(f(2), Kind::Ddr, -&i)
        .t(f(2), Kind::InvR, -&i)
        .t(f(3), Kind::InvR, -&ir2c)
        .t(f(8), Kind::Mass, m1.clone());
    b.row("f9")
        .t(f(2), Kind::InvR, ir2c.clone())
        .t(f(4), Kind::InvR, -&ir2d)
        .t(f(9), Kind::Mass, m1.clone());
    b.row("f10")
        .t(f(4), Kind::Ddr, i.clone())
        .t(f(4), Kind::InvR, i.clone())
        .t(f(3), Kind::InvR, ir2d.clone())
        .t(f(10), Kind::Mass, m1);
    Ok(b.finish(format!("vector(lambda={lambda}, j={j}, {})", variant_tag(v)), vec![], vec![]))
}

fn variant_tag(v: Variant) -> &'static str {
    match v {
        Variant::Corrected => "corrected",
        Variant::AsPrinted => "as printed",
    }
}

fn vector_doublet(j: HalfInt, v: Variant) -> Result<RadialSystem> {
    let (cp, dp, cm, dm) = c_d_pm(j)?;
    let (cp, dp, cm, dm) = (re(&cp), re(&dp), re(&cm), re(&dm));
    let i = Exact::i();
    let r2 = sqrt2();
    let fixed = v == Variant::Corrected;
    let wf = if fixed { r2.inverse()? } else { int(1) };
    let two = if fixed { r2.clone() } else { int(2) };
    let es = if fixed { -&i } else { i.clone() };
    let iwf = &i * &wf;
    let ir2 = &i * &r2;
    let (f, g) = (Symbol::f, Symbol::g);
    let m1 = int(-1);
    let (dd, ir, en, ma, pr) = (Kind::Ddr, Kind::InvR, Kind::Energy, Kind::Mass, Kind::Profile);
    let mut b = Builder::new();
    b.row("f1")
        .t(f(6), dd, m1.clone())
        .t(f(6), ir, int(-2))
        .t(f(5), ir, -&(&r2 * &cp))
        .t(f(7), ir, -&(&r2 * &dp))
        .t(f(1), ma, m1.clone())
        .t(g(5), pr, -&wf);
    b.row("g1")
        .t(g(6), dd, m1.clone())
        .t(g(6), ir, int(-2))
        .t(g(5), ir, -&(&r2 * &cm))
        .t(g(7), ir, -&(&r2 * &dm))
        .t(g(1), ma, m1.clone())
        .t(f(7), pr, -&wf);
    b.row("f2")
        .t(f(5), en, i.clone())
        .t(f(8), dd, i.clone())
        .t(f(8), ir, i.clone())
        .t(f(9), ir, &ir2 * &cp)
        .t(f(2), ma, m1.clone());
    if fixed {
        b.row("g4")
            .t(g(7), en, i.clone())
            .t(g(10), dd, -&i)
            .t(g(10), ir, -&i)
            .t(g(9), ir, -&(&ir2 * &dm))
            .t(g(4), ma, m1.clone());
    } else {
        b.row("g4")
            .t(g(7), en, i.clone())
            .t(f(10), dd, -&i)
            .t(f(10), ir, i.clone())
            .t(g(9), ir, -&(&ir2 * &dm))
            .t(g(4), ma, m1.clone());
    }
    let i2 = &two * &i;
    b.row("f3")
        .t(f(6), en, i.clone())
        .t(f(8), ir, -&(&i2 * &cp))
        .t(f(10), ir, &i2 * &dp)
        .t(f(3), ma, m1.clone())
        .t(g(8), pr, -&iwf);
    b.row("g3")
        .t(g(6), en, i.clone())
        .t(g(8), ir, -&(&i2 * &cm))
        .t(g(10), ir, &i2 * &dm)
        .t(g(3), ma, m1.clone())
        .t(f(10), pr, iwf.clone());
    b.row("f4")
        .t(f(7), en, i.clone())
        .t(f(10), dd, -&i)
        .t(f(10), ir, -&i)
        .t(f(9), ir, -&(&ir2 * &dp))
        .t(f(4), ma, m1.clone())
        .t(g(9), pr, -&iwf);
    b.row("g2")
        .t(g(5), en, i.clone())
        .t(g(8), dd, i.clone())
        .t(g(8), ir, i.clone())
        .t(g(9), ir, &ir2 * &cm)
        .t(g(2), ma, m1.clone())
        .t(f(9), pr, iwf.clone());
    b.row("f5").t(f(2), en, es.clone()).t(f(1), ir, &r2 * &cp).t(f(5), ma, m1.clone());
    b.row("g7").t(g(4), en, es.clone()).t(g(1), ir, &r2 * &dm).t(g(7), ma, m1.clone());
    b.row("f6").t(f(3), en, -&i).t(f(1), dd, m1.clone()).t(f(6), ma, m1.clone());
    b.row("g6").t(g(3), en, -&i).t(g(1), dd, m1.clone()).t(g(6), ma, m1.clone());
    b.row("f7")
        .t(f(4), en, es.clone())
        .t(f(1), ir, &r2 * &dp)
        .t(f(7), ma, m1.clone())
        .t(g(1), pr, wf.clone());
    b.row("g5")
        .t(g(2), en, es.clone())
        .t(g(1), ir, &r2 * &cm)
        .t(g(5), ma, m1.clone())
        .t(f(1), pr, wf.clone());
    b.row("f8")
        .t(f(2), dd, -&i)
        .t(f(2), ir, -&i)
        .t(f(3), ir, -&(&ir2 * &cp))
        .t(f(8), ma, m1.clone());
    b.row("g10")
        .t(g(4), dd, i.clone())
        .t(g(4), ir, i.clone())
        .t(g(3), ir, &ir2 * &dm)
        .t(g(10), ma, m1.clone());
    b.row("f9")
        .t(f(2), ir, &ir2 * &cp)
        .t(f(4), ir, -&(&ir2 * &dp))
        .t(f(9), ma, m1.clone())
        .t(g(2), pr, iwf.clone());
    b.row("g9").t(g(2), ir, &ir2 * &cm).t(g(4), ir, -&(&ir2 * &dm));
    if fixed {
        b.t(g(9), ma, m1.clone()).t(f(4), pr, -&iwf);
    } else {
        b.t(g(9), Kind::Unit, m1.clone()).t(f(4), pr, iwf.clone());
    }
    b.row("f10")
        .t(f(4), dd, i.clone())
        .t(f(4), ir, i.clone())
        .t(f(3), ir, &ir2 * &dp)
        .t(f(10), ma, m1.clone())
        .t(g(3), pr, iwf.clone());
    b.row("g8")
        .t(g(2), dd, -&i)
        .t(g(2), ir, -&i)
        .t(g(3), ir, -&(&ir2 * &cm))
        .t(g(8), ma, m1.clone())
        .t(f(3), pr, -&iwf);
    Ok(b.finish(format!("vector_doublet(j={j}, {})", variant_tag(v)), vec![], vec![]))
}

/// Branch label of [`crate::symmetry::ConstraintSet`] whose reduction is the
/// golden system labelled `delta`.
///
/// The golden relations label the eigenvalue `N = delta exp(i pi j)`, the
/// constraint sets `N = delta (-1)^(j+1)`; the two labels differ by a sign.
pub fn branch_delta(delta: i64) -> i64 {
    -delta
}

/// The eigen-relation `g = delta * sign * f` used to reduce the doublet system.
pub fn doublet_relation(delta: i64) -> Vec<(Symbol, Exact, Symbol)> {
    [
        (1, 1, 1),
        (2, 4, 1),
        (3, 3, 1),
        (4, 2, 1),
        (5, 7, 1),
        (6, 6, 1),
        (7, 5, 1),
        (8, 10, -1),
        (9, 9, -1),
        (10, 8, -1),
    ]
    .iter()
    .map(|&(gi, fi, s)| (Symbol::g(gi), Exact::int(s * delta), Symbol::f(fi)))
    .collect()
}

fn reduced_doublet(j: HalfInt, delta: i64, v: Variant) -> Result<RadialSystem> {
    if delta.abs() != 1 {
        return Err(Error::Config("delta must be +1 or -1".into()));
    }
    let (cp, dp, cm, _) = c_d_pm(j)?;
    let (cp, dp, cm) = (re(&cp), re(&dp), re(&cm));
    let i = Exact::i();
    let r2 = sqrt2();
    let fixed = v == Variant::Corrected;
    let dl = int(delta);
    let w = if fixed { r2.inverse()? } else { int(1) };
    let dw = &dl * &w;
    let idw = &i * &dw;
    let two = if fixed { r2.clone() } else { int(2) };
    let es = if fixed { -&i } else { i.clone() };
    let ir2 = &i * &r2;
    let (f, g) = (Symbol::f, Symbol::g);
    let m1 = int(-1);
    let (dd, ir, en, ma, pr) = (Kind::Ddr, Kind::InvR, Kind::Energy, Kind::Mass, Kind::Profile);
    let mut b = Builder::new();
    b.row("f1")
        .t(f(6), dd, m1.clone())
        .t(f(6), ir, int(-2))
        .t(f(5), ir, -&(&r2 * &cp))
        .t(f(7), ir, -&(&r2 * &dp))
        .t(f(1), ma, m1.clone())
        .t(f(7), pr, -&dw);
    b.row("f2")
        .t(f(5), en, i.clone())
        .t(f(8), dd, i.clone())
        .t(f(8), ir, i.clone())
        .t(f(9), ir, &ir2 * &cp)
        .t(f(2), ma, m1.clone());
    let i2 = &two * &i;
    let w3 = if fixed { idw.clone() } else { -&idw };
    b.row("f3")
        .t(f(6), en, i.clone())
        .t(f(8), ir, -&(&i2 * &cp))
        .t(f(10), ir, &i2 * &dp)
        .t(f(3), ma, m1.clone())
        .t(f(10), pr, w3);
    b.row("f4")
        .t(f(7), en, i.clone())
        .t(f(10), dd, -&i)
        .t(f(10), ir, -&i)
        .t(f(9), ir, -&(&ir2 * &dp))
        .t(f(4), ma, m1.clone())
        .t(f(9), pr, idw.clone());
    if !fixed {
        b.row("g2")
            .t(g(5), en, i.clone())
            .t(g(8), dd, i.clone())
            .t(g(8), ir, i.clone())
            .t(g(9), ir, &ir2 * &cm)
            .t(g(2), ma, m1.clone())
            .t(f(9), pr, &i * &w);
    }
    b.row("f5").t(f(2), en, es.clone()).t(f(1), ir, &r2 * &cp).t(f(5), ma, m1.clone());
    b.row("f6").t(f(3), en, -&i).t(f(1), dd, m1.clone()).t(f(6), ma, m1.clone());
    b.row("f7")
        .t(f(4), en, es.clone())
        .t(f(1), ir, &r2 * &dp)
        .t(f(7), ma, m1.clone())
        .t(f(1), pr, dw.clone());
    b.row("f8")
        .t(f(2), dd, -&i)
        .t(f(2), ir, -&i)
        .t(f(3), ir, -&(&ir2 * &cp))
        .t(f(8), ma, m1.clone());
    b.row("f9")
        .t(f(2), ir, &ir2 * &cp)
        .t(f(4), ir, -&(&ir2 * &dp))
        .t(f(9), ma, m1.clone())
        .t(f(4), pr, idw.clone());
    b.row("f10")
        .t(f(4), dd, i.clone())
        .t(f(4), ir, i.clone())
        .t(f(3), ir, &ir2 * &dp)
        .t(f(10), ma, m1)
        .t(f(3), pr, idw);
    let mut notes = vec![];
    if !fixed {
        notes.push("row g2 is printed in lower-sector symbols".to_string());
    }
    Ok(b.finish(format!("reduced_doublet(j={j}, delta={delta}, {})", variant_tag(v)), vec![], notes))
}
