//! Radial systems: rows of linear terms in the radial unknowns.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::Exact;
use crate::model::{Params, Symbol};

/// How a radial unknown enters a term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    /// `f'(r)`
    Ddr,
    /// `f(r) / r`
    InvR,
    /// `eps f(r)`
    Energy,
    /// `m f(r)`
    Mass,
    /// `W(r) f(r)`
    Profile,
    /// bare `f(r)`; only occurs in systems transcribed with typos
    Unit,
}

impl Kind {
    pub const ALL: [Kind; 6] = [Kind::Ddr, Kind::InvR, Kind::Energy, Kind::Mass, Kind::Profile, Kind::Unit];
}

pub type Monomial = (Symbol, Kind);

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RadialRow {
    pub name: String,
    pub terms: BTreeMap<Monomial, Exact>,
}

impl RadialRow {
    pub fn new(name: impl Into<String>) -> Self {
        RadialRow {
            name: name.into(),
            terms: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, s: Symbol, k: Kind, c: Exact) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((s, k)).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&(s, k));
        }
    }

    pub fn with(mut self, s: Symbol, k: Kind, c: Exact) -> Self {
        self.add(s, k, c);
        self
    }

    pub fn get(&self, s: Symbol, k: Kind) -> Exact {
        self.terms.get(&(s, k)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Symbol carrying the mass term, when there is exactly one.
    pub fn head(&self) -> Option<Symbol> {
        let mut it = self.terms.keys().filter(|(_, k)| *k == Kind::Mass).map(|(s, _)| *s);
        let first = it.next()?;
        if it.next().is_some() {
            None
        } else {
            Some(first)
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().map(|(s, _)| *s).collect()
    }

    pub fn scaled(&self, c: &Exact) -> RadialRow {
        let mut r = RadialRow::new(self.name.clone());
        for (k, v) in &self.terms {
            r.add(k.0, k.1, v * c);
        }
        r
    }

    /// Rescaled so that the mass term of the head symbol is `-1`.
    pub fn normalized(&self) -> Option<RadialRow> {
        let h = self.head()?;
        let c = self.get(h, Kind::Mass);
        let s = (-&c).inverse().ok()?;
        Some(self.scaled(&s))
    }

    /// Replaces symbols by linear combinations of other symbols.
    pub fn substitute(&self, rel: &BTreeMap<Symbol, Vec<(Exact, Symbol)>>) -> RadialRow {
        let mut r = RadialRow::new(self.name.clone());
        for ((s, k), v) in &self.terms {
            match rel.get(s) {
                Some(combo) => {
                    for (c, t) in combo {
                        r.add(*t, *k, v * c);
                    }
                }
                None => r.add(*s, *k, v.clone()),
            }
        }
        r
    }

    /// Drops every term on the listed symbols.
    pub fn without(&self, drop: &[Symbol]) -> RadialRow {
        let mut r = self.clone();
        r.terms.retain(|(s, _), _| !drop.contains(s));
        r
    }

    /// Numerical value of the row for given values and derivatives of the unknowns.
    pub fn eval(&self, vals: &BTreeMap<Symbol, (Complex64, Complex64)>, r: f64, p: Params) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for ((s, k), c) in &self.terms {
            let (f, fp) = vals.get(s).copied().unwrap_or_default();
            let x = match k {
                Kind::Ddr => fp,
                Kind::InvR => f / r,
                Kind::Energy => f * p.energy,
                Kind::Mass => f * p.mass,
                Kind::Profile => f * p.w,
                Kind::Unit => f,
            };
            acc += c.to_c64() * x;
        }
        acc
    }
}

fn fmt_coeff(c: &Exact) -> (bool, String) {
    // returns (negative, magnitude text); magnitude "" means unit
    let compound = (!c.re.is_zero() && !c.im.is_zero()) || c.re.terms().count() > 1 || c.im.terms().count() > 1;
    if compound {
        return (false, format!("({c})"));
    }
    let neg = (c.im.is_zero() && c.re.signum() < 0) || (c.re.is_zero() && c.im.signum() < 0);
    let a = if neg { -c } else { c.clone() };
    let s = if a == Exact::one() { String::new() } else { a.to_string() };
    (neg, s)
}

impl fmt::Display for RadialRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0 = 0");
        }
        let mut first = true;
        for ((s, k), c) in &self.terms {
            let (neg, mag) = fmt_coeff(c);
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let mag = if mag.is_empty() { mag } else { format!("{mag} ") };
            let body = match k {
                Kind::Ddr => format!("{s}'"),
                Kind::InvR => format!("{s}/r"),
                Kind::Energy => format!("eps {s}"),
                Kind::Mass => format!("m {s}"),
                Kind::Profile => format!("W {s}"),
                Kind::Unit => format!("{s}"),
            };
            write!(f, "{sep}{mag}{body}")?;
        }
        write!(f, " = 0")
    }
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct RadialSystem {
    pub name: String,
    pub rows: Vec<RadialRow>,
    /// Unknowns whose angular factor vanishes identically for this `j`.
    pub vacuous: Vec<Symbol>,
    pub notes: Vec<String>,
}

impl RadialSystem {
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.rows.iter().flat_map(RadialRow::symbols).collect()
    }

    /// Drops rows headed by, and terms on, the given symbols.
    pub fn restrict(&self, drop: &[Symbol]) -> RadialSystem {
        let rows = self
            .rows
            .iter()
            .filter(|r| r.head().is_none_or(|h| !drop.contains(&h)))
            .map(|r| r.without(drop))
            .filter(|r| !r.is_zero())
            .collect();
        RadialSystem {
            name: self.name.clone(),
            rows,
            vacuous: drop.to_vec(),
            notes: self.notes.clone(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<_> = self
            .rows
            .iter()
            .map(|r| {
                let terms: Vec<_> = r
                    .terms
                    .iter()
                    .map(|((s, k), c)| {
                        let z = c.to_c64();
                        serde_json::json!({"symbol": s, "kind": k, "coeff": c.to_string(), "value": [z.re, z.im]})
                    })
                    .collect();
                serde_json::json!({"row": r.name, "head": r.head(), "text": r.to_string(), "terms": terms})
            })
            .collect();
        serde_json::json!({"name": self.name, "rows": rows, "vacuous": self.vacuous, "notes": self.notes})
    }

    pub fn to_markdown(&self) -> String {
        let mut s = format!("### {}\n\n", self.name);
        for r in &self.rows {
            s.push_str(&format!("- `{}`: {}\n", r.name, r));
        }
        if !self.vacuous.is_empty() {
            let v: Vec<String> = self.vacuous.iter().map(ToString::to_string).collect();
            s.push_str(&format!("\nvanishing unknowns: {}\n", v.join(", ")));
        }
        for n in &self.notes {
            s.push_str(&format!("\n> {n}\n"));
        }
        s
    }
}

impl fmt::Display for RadialSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for r in &self.rows {
            writeln!(f, "  [{}] {}", r.name, r)?;
        }
        Ok(())
    }
}
