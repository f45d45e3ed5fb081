//! Eigen-relations `N Psi = N Psi` of a discrete operator on an ansatz.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::operator::DiscreteOperator;
use crate::algebra::linsolve::solve_late_pivots;
use crate::algebra::Exact;
use crate::model::{Ansatz, Background, OperatorData, Symbol};
use crate::wigner::HalfInt;
use crate::{Error, Result};

/// `symbol = sum coeff * other`; an empty sum means the symbol vanishes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Relation {
    pub symbol: Symbol,
    pub combo: Vec<(Exact, Symbol)>,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.combo.is_empty() {
            return write!(f, "{} = 0", self.symbol);
        }
        let parts: Vec<String> = self
            .combo
            .iter()
            .map(|(c, s)| {
                if *c == Exact::one() {
                    s.to_string()
                } else if *c == Exact::int(-1) {
                    format!("-{s}")
                } else {
                    format!("{c} {s}")
                }
            })
            .collect();
        write!(f, "{} = {}", self.symbol, parts.join(" + "))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstraintSet {
    /// Eigenvalue `N`.
    pub eigenvalue: Exact,
    /// `delta` in `N = delta (-1)^(j+1)`.
    pub delta: i64,
    pub j: HalfInt,
    pub relations: Vec<Relation>,
    pub free: Vec<Symbol>,
}

impl ConstraintSet {
    pub fn zeroed(&self) -> Vec<Symbol> {
        self.relations.iter().filter(|r| r.combo.is_empty()).map(|r| r.symbol).collect()
    }

    pub fn eigenvalue_text(&self) -> String {
        let sign = if self.delta > 0 { "" } else { "-" };
        format!("N = {sign}(-1)^(j+1) = {}", self.eigenvalue)
    }

    /// Substitution map for [`crate::separation::RadialRow::substitute`].
    pub fn substitution(&self) -> BTreeMap<Symbol, Vec<(Exact, Symbol)>> {
        self.relations.iter().map(|r| (r.symbol, r.combo.clone())).collect()
    }

    /// Builds a set from explicit relations `dependent = coeff * free`.
    pub fn from_relations(j: HalfInt, delta: i64, rel: &[(Symbol, Exact, Symbol)]) -> Self {
        let relations: Vec<Relation> = rel
            .iter()
            .map(|(d, c, f)| Relation {
                symbol: *d,
                combo: vec![(c.clone(), *f)],
            })
            .collect();
        let mut free: Vec<Symbol> = rel.iter().map(|r| r.2).collect();
        free.sort();
        free.dedup();
        let eigenvalue = &Exact::int(delta) * &DiscreteOperator::label_phase(j + HalfInt(2));
        ConstraintSet {
            eigenvalue,
            delta,
            j,
            relations,
            free,
        }
    }

    /// True when both sets impose the same relations.
    pub fn same_relations(&self, other: &ConstraintSet) -> bool {
        let norm = |c: &ConstraintSet| {
            let mut v: Vec<(Symbol, Vec<(Exact, Symbol)>)> = c.relations.iter().map(|r| (r.symbol, r.combo.clone())).collect();
            v.sort_by_key(|a| a.0);
            v
        };
        norm(self) == norm(other)
    }
}

impl fmt::Display for ConstraintSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relations.iter().map(ToString::to_string).collect();
        write!(f, "{}: {}", self.eigenvalue_text(), rels.join(", "))
    }
}

/// Labels of the components the image is compared with.
fn target_sigmas(op: &DiscreteOperator, a: &Ansatz) -> Vec<HalfInt> {
    let bg = match a.lambda {
        Some(l) if op.charge_flip => Background::Abelian { lambda: -l },
        Some(l) => Background::Abelian { lambda: l },
        None => Background::Doublet { profile: Default::default() },
    };
    OperatorData::new(a.spin, &bg).sig
}

/// Solves `N_hat Psi = N Psi` on the ansatz for every `N` in `{1, -1, i, -i}`.
///
/// Each branch with a nonzero solution yields one constraint set. An empty
/// result means only the null function is an eigenfunction.
pub fn eigen_constraints(op: &DiscreteOperator, a: &Ansatz) -> Result<Vec<ConstraintSet>> {
    if op.n() != a.n || op.spin != a.spin {
        return Err(Error::Shape(format!("operator {} does not act on ansatz {}", op, a.name)));
    }
    let tgt = target_sigmas(op, a);
    let live = a.live_symbols();
    let col: BTreeMap<Symbol, usize> = live.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let phase = DiscreteOperator::label_phase(a.j);
    // image[k] and own[k]: coefficient vectors of component k
    let mut image = vec![vec![Exact::zero(); live.len()]; a.n];
    let mut own = vec![vec![Exact::zero(); live.len()]; a.n];
    for sl in &a.slots {
        let c = col[&sl.symbol];
        own[sl.comp][c] = &own[sl.comp][c] + &sl.coeff;
        for (k, img) in image.iter_mut().enumerate() {
            let mkl = &op.matrix[(k, sl.comp)];
            if mkl.is_zero() {
                continue;
            }
            if -sl.label.sigma != tgt[k] {
                return Err(Error::Shape(format!(
                    "reflected label of {} lands on sigma {} in component {}, expected {}",
                    sl.symbol,
                    -sl.label.sigma,
                    k + 1,
                    tgt[k]
                )));
            }
            img[c] = &img[c] + &(&(mkl * &phase) * &sl.coeff);
        }
    }
    let mut out = vec![];
    let base = DiscreteOperator::label_phase(a.j + HalfInt(2));
    for nv in [Exact::one(), Exact::int(-1), Exact::i(), -&Exact::i()] {
        let rows: Vec<Vec<Exact>> = (0..a.n).map(|k| image[k].iter().zip(&own[k]).map(|(x, y)| x - &(&nv * y)).collect()).collect();
        let sol = solve_late_pivots(&rows, live.len());
        if sol.len() == live.len() {
            continue;
        }
        let ratio = &nv / &base;
        let delta = if ratio == Exact::one() {
            1
        } else if ratio == Exact::int(-1) {
            -1
        } else {
            continue;
        };
        let pivots: Vec<usize> = sol.iter().map(|(p, _)| *p).collect();
        let mut relations: Vec<Relation> = sol
            .into_iter()
            .map(|(p, combo)| Relation {
                symbol: live[p],
                combo: combo.into_iter().map(|(c, f)| (c, live[f])).collect(),
            })
            .collect();
        relations.sort_by_key(|x| x.symbol);
        let free = (0..live.len()).filter(|i| !pivots.contains(i)).map(|i| live[i]).collect();
        out.push(ConstraintSet {
            eigenvalue: nv,
            delta,
            j: a.j,
            relations,
            free,
        });
    }
    out.sort_by_key(|x| std::cmp::Reverse(x.delta));
    Ok(out)
}
