//! Stationary wave operators in monopole backgrounds, angular ansatz families
//! and pointwise evaluation on fields.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{build_rep, isospin, Exact, ExactMatrix, FloatMatrix, Matrix, Representation, Spin};
use crate::error::{Error, Result};
use crate::wigner::{big_d, d_small, d_small_dtheta, HalfInt, Label};

/// Radial profile `W(r)` of the non-Abelian background.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Profile {
    /// `w0 * exp(-r / scale)`
    Exponential { w0: f64, scale: f64 },
    /// Piecewise-linear interpolation of samples; constant beyond the ends.
    Tabulated { r: Vec<f64>, w: Vec<f64> },
}

impl Default for Profile {
    fn default() -> Self {
        Profile::Exponential { w0: 1.0, scale: 1.0 }
    }
}

impl Profile {
    pub fn validate(&self) -> Result<()> {
        match self {
            Profile::Exponential { scale, .. } if *scale <= 0.0 => Err(Error::Config("profile scale must be positive".into())),
            Profile::Tabulated { r, w } => {
                if r.len() != w.len() || r.len() < 2 {
                    return Err(Error::Config("tabulated profile needs matching r/w arrays of length >= 2".into()));
                }
                if r.windows(2).any(|p| p[1] <= p[0]) {
                    return Err(Error::Config("tabulated profile r must be strictly increasing".into()));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            Profile::Exponential { w0, scale } => w0 * (-x / scale).exp(),
            Profile::Tabulated { r, w } => {
                if x <= r[0] {
                    return w[0];
                }
                if x >= r[r.len() - 1] {
                    return w[w.len() - 1];
                }
                let i = r.partition_point(|&v| v <= x) - 1;
                let t = (x - r[i]) / (r[i + 1] - r[i]);
                w[i] * (1.0 - t) + w[i + 1] * t
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Background {
    Abelian { lambda: HalfInt },
    Doublet { profile: Profile },
}

impl Background {
    pub fn lambda(&self) -> Option<HalfInt> {
        match self {
            Background::Abelian { lambda } => Some(*lambda),
            Background::Doublet { .. } => None,
        }
    }

    pub fn is_doublet(&self) -> bool {
        matches!(self, Background::Doublet { .. })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    F,
    G,
}

/// Radial unknown such as `f3` or `g7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub family: Family,
    pub index: u8,
}

impl Symbol {
    pub fn f(index: u8) -> Self {
        Symbol { family: Family::F, index }
    }

    pub fn g(index: u8) -> Self {
        Symbol { family: Family::G, index }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let bad = || Error::Config(format!("bad symbol '{s}'"));
        let (fam, idx) = s.split_at(1);
        let index: u8 = idx.parse().map_err(|_| bad())?;
        match fam {
            "f" => Ok(Symbol::f(index)),
            "g" => Ok(Symbol::g(index)),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::F => 'f',
            Family::G => 'g',
        };
        write!(f, "{c}{}", self.index)
    }
}

impl Serialize for Symbol {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Symbol {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Symbol::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// One component of an ansatz: `coeff * symbol(r) * D_label` in component `comp`.
#[derive(Clone, Debug, PartialEq)]
pub struct Slot {
    pub comp: usize,
    pub symbol: Symbol,
    pub coeff: Exact,
    pub label: Label,
}

#[derive(Clone, Debug)]
pub struct Ansatz {
    pub name: String,
    pub spin: Spin,
    pub n: usize,
    pub j: HalfInt,
    pub m: HalfInt,
    pub slots: Vec<Slot>,
    /// All radial symbols in display order, including vacuous ones.
    pub symbols: Vec<Symbol>,
    /// Symbols whose Wigner label exceeds `j`; they vanish identically.
    pub vacuous: Vec<Symbol>,
    /// Components carry an overall `1/r`.
    pub inv_r_prefactor: bool,
    pub lambda: Option<HalfInt>,
}

impl Ansatz {
    pub fn slot_of_comp(&self, comp: usize) -> Option<&Slot> {
        self.slots.iter().find(|s| s.comp == comp)
    }

    pub fn live_symbols(&self) -> Vec<Symbol> {
        let mut seen = BTreeSet::new();
        self.symbols.iter().filter(|s| !self.vacuous.contains(s) && seen.insert(**s)).copied().collect()
    }

    pub fn is_bottom_of_range(&self) -> bool {
        !self.vacuous.is_empty()
    }
}

/// Checks `|m| <= j` with `j - m` integral.
pub fn check_projection(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.0 < 0 {
        return Err(Error::Quantization(format!("j = {j} is negative")));
    }
    if m.0.abs() > j.0 || (j.0 - m.0) % 2 != 0 {
        return Err(Error::Quantization(format!("m = {m} is not an allowed projection for j = {j}")));
    }
    Ok(())
}

/// Range and parity checks of `j` for a given spin and background.
pub fn check_quantization(spin: Spin, lambda: Option<HalfInt>, j: HalfInt) -> Result<()> {
    if j.0 < 0 {
        return Err(Error::Quantization(format!("j = {j} is negative")));
    }
    match (spin, lambda) {
        (Spin::Half, Some(l)) => {
            if (j.0 + l.0) % 2 == 0 {
                return Err(Error::Quantization(format!("j - lambda must be a half-integer (j = {j}, lambda = {l})")));
            }
            if j.0 < l.0.abs() - 1 {
                return Err(Error::Quantization(format!("j = {j} below |lambda| - 1/2 for lambda = {l}")));
            }
        }
        (Spin::One, Some(l)) => {
            if (j.0 - l.0) % 2 != 0 {
                return Err(Error::Quantization(format!("j - lambda must be an integer (j = {j}, lambda = {l})")));
            }
            if j.0 < l.0.abs() - 2 {
                return Err(Error::Quantization(format!("j = {j} below |lambda| - 1 for lambda = {l}")));
            }
        }
        (Spin::Half, None) => {
            if !j.is_integer() {
                return Err(Error::Quantization(format!("spin-1/2 doublet needs integer j, got {j}")));
            }
        }
        (Spin::One, None) => {
            if j.is_integer() {
                return Err(Error::Quantization(format!("spin-1 doublet needs half-integer j, got {j}")));
            }
        }
    }
    Ok(())
}

/// Lowest `j` allowed for an Abelian charge `lambda`.
pub fn minimal_j(spin: Spin, lambda: HalfInt) -> HalfInt {
    let l = lambda.0.abs();
    match spin {
        Spin::Half => HalfInt((l - 1).abs()),
        Spin::One if l >= 2 => HalfInt(l - 2),
        Spin::One => HalfInt(l),
    }
}

/// True at the lowest `j` allowed for an Abelian charge `lambda != 0`.
pub fn is_minimal_j(spin: Spin, lambda: HalfInt, j: HalfInt) -> bool {
    lambda.0 != 0 && j == minimal_j(spin, lambda)
}

fn helicities(rep: &Representation) -> Vec<HalfInt> {
    rep.helicity_weights()
        .expect("diagonal i J12")
        .iter()
        .map(|w| HalfInt::from_f64(w.to_c64().re).expect("half-integer weight"))
        .collect()
}

/// Abelian family: component `k` carries `f_{k+1} D^j_{-m, lambda - s_k}`.
pub fn abelian_ansatz(spin: Spin, lambda: HalfInt, j: HalfInt, m: HalfInt) -> Result<Ansatz> {
    check_quantization(spin, Some(lambda), j)?;
    check_projection(j, m)?;
    let rep = build_rep(spin);
    let s = helicities(&rep);
    let mut slots = vec![];
    let mut symbols = vec![];
    let mut vacuous = vec![];
    for (k, sk) in s.iter().enumerate() {
        let sym = Symbol::f(k as u8 + 1);
        symbols.push(sym);
        let label = Label::new(j, -m, lambda - *sk);
        if label.is_valid() {
            slots.push(Slot {
                comp: k,
                symbol: sym,
                coeff: Exact::one(),
                label,
            });
        } else {
            vacuous.push(sym);
        }
    }
    if slots.is_empty() {
        return Err(Error::Quantization(format!("no admissible components at j = {j}, lambda = {lambda}")));
    }
    Ok(Ansatz {
        name: format!("abelian-spin-{}", if spin == Spin::Half { "half" } else { "one" }),
        spin,
        n: spin.dim(),
        j,
        m,
        slots,
        symbols,
        vacuous,
        inv_r_prefactor: spin == Spin::Half,
        lambda: Some(lambda),
    })
}

/// Effective charge of each isotopic sector: `-t^3`.
pub fn doublet_lambda(iso: usize) -> HalfInt {
    if iso == 0 {
        HalfInt(-1)
    } else {
        HalfInt(1)
    }
}

/// General doublet family: `T+ (x) (f_k D_{-1/2 - s_k}) + T- (x) (g_k D_{1/2 - s_k})`.
pub fn doublet_ansatz(spin: Spin, j: HalfInt, m: HalfInt) -> Result<Ansatz> {
    check_quantization(spin, None, j)?;
    check_projection(j, m)?;
    let rep = build_rep(spin);
    let s = helicities(&rep);
    let d = spin.dim();
    let mut slots = vec![];
    let mut symbols = vec![];
    let mut vacuous = vec![];
    for iso in 0..2 {
        for (k, sk) in s.iter().enumerate() {
            let sym = if iso == 0 { Symbol::f(k as u8 + 1) } else { Symbol::g(k as u8 + 1) };
            symbols.push(sym);
            let label = Label::new(j, -m, doublet_lambda(iso) - *sk);
            if label.is_valid() {
                slots.push(Slot {
                    comp: iso * d + k,
                    symbol: sym,
                    coeff: Exact::one(),
                    label,
                });
            } else {
                vacuous.push(sym);
            }
        }
    }
    Ok(Ansatz {
        name: format!("doublet-spin-{}", if spin == Spin::Half { "half" } else { "one" }),
        spin,
        n: 2 * d,
        j,
        m,
        slots,
        symbols,
        vacuous,
        inv_r_prefactor: false,
        lambda: None,
    })
}

/// Spin-1/2 doublet written directly in its N-eigenform: the lower isotopic
/// sector repeats the upper radial functions in reverse order, times `delta`.
pub fn doublet_half_eigen_ansatz(j: HalfInt, m: HalfInt, delta: i64) -> Result<Ansatz> {
    if delta.abs() != 1 {
        return Err(Error::Config("delta must be +1 or -1".into()));
    }
    let mut a = doublet_ansatz(Spin::Half, j, m)?;
    let d = Exact::int(delta);
    let lower = [4u8, 3, 2, 1];
    a.slots = a
        .slots
        .into_iter()
        .map(|mut s| {
            if s.symbol.family == Family::G {
                s.symbol = Symbol::f(lower[s.comp - 4]);
                s.coeff = d.clone();
            }
            s
        })
        .collect();
    a.symbols.retain(|s| s.family == Family::F);
    a.vacuous.retain(|s| s.family == Family::F && !a.slots.iter().any(|x| x.symbol == *s));
    a.name = format!("doublet-spin-half-eigen(delta={delta})");
    Ok(a)
}

/// Exact operator data shared by the formal and numerical separation routes.
///
/// The stationary operator is
/// `E eps + DR d/dr + (C + i B1 d/dtheta + B2 (i d/dphi - sig cos(theta)) / sin(theta)) / r + W X - m`.
#[derive(Clone, Debug)]
pub struct OperatorData {
    pub spin: Spin,
    pub n: usize,
    pub energy: ExactMatrix,
    pub ddr: ExactMatrix,
    pub conn: ExactMatrix,
    pub b1: ExactMatrix,
    pub b2: ExactMatrix,
    pub mix: Option<ExactMatrix>,
    /// `lambda_eff - s_k` for each component.
    pub sig: Vec<HalfInt>,
}

impl OperatorData {
    pub fn new(spin: Spin, background: &Background) -> Self {
        let rep = build_rep(spin);
        let g = &rep.matrices;
        let i = Exact::i();
        let conn = (&(&g[1] * &rep.generator(3, 1)) + &(&g[2] * &rep.generator(3, 2))).scale(&i);
        let s = helicities(&rep);
        match background {
            Background::Abelian { lambda } => OperatorData {
                spin,
                n: rep.dim(),
                energy: g[0].clone(),
                ddr: g[3].scale(&i),
                conn,
                b1: g[1].clone(),
                b2: g[2].clone(),
                mix: None,
                sig: s.iter().map(|sk| *lambda - *sk).collect(),
            },
            Background::Doublet { .. } => {
                let id2 = ExactMatrix::identity(2);
                let k = |m: &ExactMatrix| id2.kron(m);
                let mix = &isospin(2).kron(&g[1]) - &isospin(1).kron(&g[2]);
                let sig = (0..2).flat_map(|iso| s.iter().map(move |sk| doublet_lambda(iso) - *sk)).collect();
                OperatorData {
                    spin,
                    n: 2 * rep.dim(),
                    energy: k(&g[0]),
                    ddr: k(&g[3].scale(&i)),
                    conn: k(&conn),
                    b1: k(&g[1]),
                    b2: k(&g[2]),
                    mix: Some(mix),
                    sig,
                }
            }
        }
    }
}

/// Scalar parameters entering a pointwise evaluation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Params {
    pub energy: f64,
    pub mass: f64,
    /// Background profile value at the evaluation radius.
    pub w: f64,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DerivMode {
    Analytic,
    Centered(f64),
}

pub trait RadialFn: Send + Sync + fmt::Debug {
    fn value(&self, r: f64) -> Complex64;

    /// Analytic derivative; falls back to a centered difference.
    fn deriv(&self, r: f64) -> Complex64 {
        let h = 1e-5 * r.max(1.0);
        (self.value(r + h) - self.value(r - h)) / (2.0 * h)
    }
}

/// `c r^a exp(-b r)`.
#[derive(Clone, Debug)]
pub struct PowerExp {
    pub c: Complex64,
    pub a: f64,
    pub b: f64,
}

impl RadialFn for PowerExp {
    fn value(&self, r: f64) -> Complex64 {
        self.c * r.powf(self.a) * (-self.b * r).exp()
    }

    fn deriv(&self, r: f64) -> Complex64 {
        self.c * (self.a * r.powf(self.a - 1.0) - self.b * r.powf(self.a)) * (-self.b * r).exp()
    }
}

/// `value + slope (r - at)`.
#[derive(Clone, Debug)]
pub struct Linear {
    pub at: f64,
    pub value: Complex64,
    pub slope: Complex64,
}

impl RadialFn for Linear {
    fn value(&self, r: f64) -> Complex64 {
        self.value + self.slope * (r - self.at)
    }

    fn deriv(&self, _r: f64) -> Complex64 {
        self.slope
    }
}

/// `g(r) / r`.
#[derive(Clone, Debug)]
pub struct OverR(pub Arc<dyn RadialFn>);

impl RadialFn for OverR {
    fn value(&self, r: f64) -> Complex64 {
        self.0.value(r) / r
    }

    fn deriv(&self, r: f64) -> Complex64 {
        self.0.deriv(r) / r - self.0.value(r) / (r * r)
    }
}

/// `sum c_k g_k(r)`.
#[derive(Clone, Debug)]
pub struct LinComb(pub Vec<(Complex64, Arc<dyn RadialFn>)>);

impl RadialFn for LinComb {
    fn value(&self, r: f64) -> Complex64 {
        self.0.iter().map(|(c, g)| c * g.value(r)).sum()
    }

    fn deriv(&self, r: f64) -> Complex64 {
        self.0.iter().map(|(c, g)| c * g.deriv(r)).sum()
    }
}

#[derive(Clone, Debug)]
pub struct FieldTerm {
    pub comp: usize,
    pub coeff: Complex64,
    pub radial: Arc<dyn RadialFn>,
    pub label: Label,
}

/// Multi-component function given as a sum of radial times D-function products.
#[derive(Clone, Debug, Default)]
pub struct Field {
    pub n: usize,
    pub terms: Vec<FieldTerm>,
}

/// Value, radial derivative, theta derivative and `i d/dphi` of one term at a point.
#[derive(Clone, Copy, Debug)]
struct TermJet {
    v: Complex64,
    dr: Complex64,
    dth: Complex64,
    iphi: Complex64,
}

impl Field {
    pub fn new(n: usize) -> Self {
        Field { n, terms: vec![] }
    }

    /// Builds a field from an ansatz; symbols without a radial function are zero.
    pub fn from_ansatz(a: &Ansatz, radial: &dyn Fn(Symbol) -> Option<Arc<dyn RadialFn>>) -> Self {
        let mut f = Field::new(a.n);
        for s in &a.slots {
            if let Some(g) = radial(s.symbol) {
                let g: Arc<dyn RadialFn> = if a.inv_r_prefactor { Arc::new(OverR(g)) } else { g };
                f.terms.push(FieldTerm {
                    comp: s.comp,
                    coeff: s.coeff.to_c64(),
                    radial: g,
                    label: s.label,
                });
            }
        }
        f
    }

    fn jet(t: &FieldTerm, r: f64, theta: f64, phi: f64, mode: DerivMode) -> TermJet {
        let l = &t.label;
        let d = d_small(l.j, l.mp, l.sigma, theta);
        let dd = d_small_dtheta(l.j, l.mp, l.sigma, theta);
        let ph = Complex64::from_polar(1.0, -l.mp.value() * phi);
        let g = t.radial.value(r);
        let gp = match mode {
            DerivMode::Analytic => t.radial.deriv(r),
            DerivMode::Centered(h) => (t.radial.value(r + h) - t.radial.value(r - h)) / (2.0 * h),
        };
        let c = t.coeff * ph;
        TermJet {
            v: c * g * d,
            dr: c * gp * d,
            dth: c * g * dd,
            iphi: c * g * d * l.mp.value(),
        }
    }

    pub fn eval(&self, r: f64, theta: f64, phi: f64) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.n];
        for t in &self.terms {
            out[t.comp] += t.coeff * t.radial.value(r) * big_d(&t.label, phi, theta);
        }
        out
    }

    pub fn scaled(&self, c: Complex64) -> Field {
        let mut f = self.clone();
        for t in &mut f.terms {
            t.coeff *= c;
        }
        f
    }

    pub fn plus(&self, other: &Field) -> Field {
        let mut f = self.clone();
        f.terms.extend(other.terms.iter().cloned());
        f
    }
}

/// Float copy of [`OperatorData`] used for pointwise evaluation.
#[derive(Clone, Debug)]
struct FloatOp {
    energy: FloatMatrix,
    ddr: FloatMatrix,
    conn: FloatMatrix,
    b1: FloatMatrix,
    b2: FloatMatrix,
    mix: Option<FloatMatrix>,
}

#[derive(Clone, Debug)]
pub struct WaveOperator {
    pub spin: Spin,
    pub background: Background,
    pub mass: f64,
    pub energy: f64,
    pub data: OperatorData,
    float: FloatOp,
}

impl WaveOperator {
    pub fn new(spin: Spin, background: Background, mass: f64, energy: f64) -> Result<Self> {
        if let Background::Doublet { profile } = &background {
            profile.validate()?;
        }
        if !mass.is_finite() || !energy.is_finite() {
            return Err(Error::Config("mass and energy must be finite".into()));
        }
        let data = OperatorData::new(spin, &background);
        let float = FloatOp {
            energy: data.energy.to_float(),
            ddr: data.ddr.to_float(),
            conn: data.conn.to_float(),
            b1: data.b1.to_float(),
            b2: data.b2.to_float(),
            mix: data.mix.as_ref().map(Matrix::to_float),
        };
        Ok(WaveOperator {
            spin,
            background,
            mass,
            energy,
            data,
            float,
        })
    }

    pub fn n(&self) -> usize {
        self.data.n
    }

    pub fn params_at(&self, r: f64) -> Params {
        let w = match &self.background {
            Background::Doublet { profile } => profile.eval(r),
            Background::Abelian { .. } => 0.0,
        };
        Params {
            energy: self.energy,
            mass: self.mass,
            w,
        }
    }

    /// Copy of the operator at the opposite Abelian charge.
    pub fn charge_flipped(&self) -> Result<Self> {
        match &self.background {
            Background::Abelian { lambda } => WaveOperator::new(self.spin, Background::Abelian { lambda: -*lambda }, self.mass, self.energy),
            Background::Doublet { .. } => Ok(self.clone()),
        }
    }

    /// `(H psi)(r, theta, phi)` with the physical parameters.
    pub fn apply(&self, field: &Field, r: f64, theta: f64, phi: f64, mode: DerivMode) -> Vec<Complex64> {
        self.apply_with(field, r, theta, phi, mode, self.params_at(r))
    }

    pub fn apply_with(&self, field: &Field, r: f64, theta: f64, phi: f64, mode: DerivMode, p: Params) -> Vec<Complex64> {
        let n = self.n();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let (st, ct) = (theta.sin(), theta.cos());
        let i = Complex64::new(0.0, 1.0);
        let f = &self.float;
        for t in &field.terms {
            let jt = Field::jet(t, r, theta, phi, mode);
            let l = t.comp;
            let cot_part = (jt.iphi - self.data.sig[l].value() * ct * jt.v) / st;
            for k in 0..n {
                let mut acc = f.energy[(k, l)] * p.energy * jt.v + f.ddr[(k, l)] * jt.dr + f.conn[(k, l)] * jt.v / r;
                acc += (i * f.b1[(k, l)] * jt.dth + f.b2[(k, l)] * cot_part) / r;
                if let Some(x) = &f.mix {
                    acc += x[(k, l)] * p.w * jt.v;
                }
                out[k] += acc;
            }
            out[l] -= p.mass * jt.v;
        }
        out
    }

    /// Angular part `i B1 d/dtheta + B2 (i d/dphi - sig cos(theta)) / sin(theta)` at fixed `r`.
    pub fn angular(&self, field: &Field, r: f64, theta: f64, phi: f64) -> Vec<Complex64> {
        let n = self.n();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        let (st, ct) = (theta.sin(), theta.cos());
        let i = Complex64::new(0.0, 1.0);
        for t in &field.terms {
            let jt = Field::jet(t, r, theta, phi, DerivMode::Analytic);
            let l = t.comp;
            let cot_part = (jt.iphi - self.data.sig[l].value() * ct * jt.v) / st;
            for (k, o) in out.iter_mut().enumerate() {
                *o += i * self.float.b1[(k, l)] * jt.dth + self.float.b2[(k, l)] * cot_part;
            }
        }
        out
    }
}

/// Grid sizes shared by checks that integrate or sample fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    #[serde(default = "default_n_theta")]
    pub n_theta: usize,
    #[serde(default = "default_n_phi")]
    pub n_phi: usize,
    #[serde(default = "default_n_r")]
    pub n_r: usize,
    #[serde(default = "default_r_max")]
    pub r_max: f64,
}

fn default_n_theta() -> usize {
    12
}
fn default_n_phi() -> usize {
    16
}
fn default_n_r() -> usize {
    1200
}
fn default_r_max() -> f64 {
    30.0
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            n_theta: default_n_theta(),
            n_phi: default_n_phi(),
            n_r: default_n_r(),
            r_max: default_r_max(),
        }
    }
}

/// JSON configuration of a model instance.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelConfig {
    pub spin: Spin,
    pub background: Background,
    #[serde(default = "default_mass")]
    pub mass: f64,
    #[serde(default = "default_energy")]
    pub energy: f64,
    pub j: HalfInt,
    #[serde(default)]
    pub m: HalfInt,
    #[serde(default)]
    pub grid: GridConfig,
    #[serde(default)]
    pub seed: u64,
}

fn default_mass() -> f64 {
    1.0
}
fn default_energy() -> f64 {
    0.5
}

impl ModelConfig {
    pub fn from_json(s: &str) -> Result<Self> {
        let c: ModelConfig = serde_json::from_str(s)?;
        c.validate()?;
        Ok(c)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn validate(&self) -> Result<()> {
        check_quantization(self.spin, self.background.lambda(), self.j)?;
        check_projection(self.j, self.m)?;
        if let Background::Doublet { profile } = &self.background {
            profile.validate()?;
        }
        Ok(())
    }

    pub fn operator(&self) -> Result<WaveOperator> {
        WaveOperator::new(self.spin, self.background.clone(), self.mass, self.energy)
    }

    pub fn ansatz(&self) -> Result<Ansatz> {
        match self.background {
            Background::Abelian { lambda } => abelian_ansatz(self.spin, lambda, self.j, self.m),
            Background::Doublet { .. } => doublet_ansatz(self.spin, self.j, self.m),
        }
    }
}
