//! Compatibility of eigen-relations with a radial system.

use std::collections::BTreeMap;

use serde::Serialize;

use super::constraints::ConstraintSet;
use crate::algebra::linsolve::rank;
use crate::algebra::Exact;
use crate::model::Symbol;
use crate::separation::{Kind, RadialRow, RadialSystem};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub rows: Vec<String>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Compatibility {
    pub compatible: bool,
    /// Rank of the substituted rows with every monomial independent.
    pub rank: usize,
    /// Number of unknowns left after substitution.
    pub unknowns: usize,
    #[serde(skip)]
    pub reduced: Option<RadialSystem>,
    pub witnesses: Vec<Witness>,
}

fn row_vectors(rows: &[RadialRow]) -> Vec<Vec<Exact>> {
    let mut keys: Vec<(Symbol, Kind)> = rows.iter().flat_map(|r| r.terms.keys().copied()).collect();
    keys.sort();
    keys.dedup();
    rows.iter()
        .map(|r| keys.iter().map(|k| r.terms.get(k).cloned().unwrap_or_default()).collect())
        .collect()
}

/// Substitutes the relations of `c` into `sys` and decides whether the
/// result is a consistent system for the remaining unknowns.
///
/// `eps`, `m`, `1/r`, `d/dr` and `W` are treated as independent symbols, so a
/// contradiction found here holds for all parameter values.
pub fn compatibility(c: &ConstraintSet, sys: &RadialSystem) -> Result<Compatibility> {
    let syms = sys.symbols();
    for r in &c.relations {
        if !syms.contains(&r.symbol) {
            return Err(Error::Shape(format!("relation on {} which the system does not contain", r.symbol)));
        }
    }
    let sub = c.substitution();
    let rows: Vec<RadialRow> = sys.rows.iter().map(|r| r.substitute(&sub)).filter(|r| !r.is_zero()).collect();
    let unknowns: Vec<Symbol> = rows
        .iter()
        .flat_map(RadialRow::symbols)
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let rk = rank(&row_vectors(&rows));
    let mut witnesses = vec![];
    let mut by_head: BTreeMap<Symbol, Vec<&RadialRow>> = BTreeMap::new();
    for r in &rows {
        match r.head() {
            Some(h) => by_head.entry(h).or_default().push(r),
            None => witnesses.push(Witness {
                rows: vec![r.name.clone()],
                reason: format!("reduces to a relation without mass term: {r}"),
            }),
        }
    }
    for (h, group) in &by_head {
        let first = group[0];
        for other in &group[1..] {
            if rank(&row_vectors(&[first.clone(), (*other).clone()])) > 1 {
                witnesses.push(Witness {
                    rows: vec![first.name.clone(), other.name.clone()],
                    reason: format!("both rows fix {h} but are not proportional: [{first}] vs [{other}]"),
                });
            }
        }
    }
    let compatible = rk == unknowns.len() && witnesses.is_empty() && unknowns.iter().all(|s| by_head.contains_key(s));
    let reduced = compatible.then(|| RadialSystem {
        name: format!("{} reduced by {}", sys.name, c.eigenvalue_text()),
        rows: unknowns.iter().filter_map(|s| by_head[s][0].normalized()).collect(),
        vacuous: sys.vacuous.clone(),
        notes: vec![],
    });
    Ok(Compatibility {
        compatible,
        rank: rk,
        unknowns: unknowns.len(),
        reduced,
        witnesses,
    })
}

/// Same test with `eps` and `m` fixed to the given rationals, folding their
/// terms into plain coefficients.
pub fn compatibility_at(c: &ConstraintSet, sys: &RadialSystem, eps: (i64, i64), m: (i64, i64)) -> Result<Compatibility> {
    let e = Exact::ratio(eps.0, eps.1);
    let mm = Exact::ratio(m.0, m.1);
    let mut folded = sys.clone();
    for row in &mut folded.rows {
        let mut r = RadialRow::new(row.name.clone());
        for ((s, k), v) in &row.terms {
            match k {
                Kind::Energy => r.add(*s, Kind::Unit, v * &e),
                Kind::Mass => r.add(*s, Kind::Unit, v * &mm),
                _ => r.add(*s, *k, v.clone()),
            }
        }
        *row = r;
    }
    // the head is no longer marked; rank alone decides
    let sub = c.substitution();
    let rows: Vec<RadialRow> = folded.rows.iter().map(|r| r.substitute(&sub)).filter(|r| !r.is_zero()).collect();
    let unknowns = rows.iter().flat_map(RadialRow::symbols).collect::<std::collections::BTreeSet<_>>().len();
    let rk = rank(&row_vectors(&rows));
    Ok(Compatibility {
        compatible: rk == unknowns,
        rank: rk,
        unknowns,
        reduced: None,
        witnesses: vec![],
    })
}
