//! Equality of radial systems up to row order, row scaling and symbol rescaling.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::system::{RadialRow, RadialSystem};
use crate::algebra::Exact;
use crate::model::Symbol;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RowDiff {
    pub row: String,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct EqualityReport {
    pub equal: bool,
    /// Pairs `(row of a, row of b)`.
    pub row_map: Vec<(String, String)>,
    /// Symbols of `b` that had to be negated.
    pub negated: Vec<Symbol>,
    pub diffs: Vec<RowDiff>,
}

/// A symbol relabelling `b`-symbol -> `(sign, a-symbol)`.
pub type SymbolMap = BTreeMap<Symbol, (i64, Symbol)>;

fn relabel(row: &RadialRow, map: &SymbolMap) -> RadialRow {
    let mut r = RadialRow::new(row.name.clone());
    for ((s, k), c) in &row.terms {
        match map.get(s) {
            Some((sg, t)) => r.add(*t, *k, c * &Exact::int(*sg)),
            None => r.add(*s, *k, c.clone()),
        }
    }
    r
}

/// Ratio `a / b` if `a` is a nonzero multiple of `b`.
fn proportional(a: &RadialRow, b: &RadialRow) -> Option<Exact> {
    if a.terms.len() != b.terms.len() || a.terms.keys().ne(b.terms.keys()) {
        return None;
    }
    let (k0, a0) = a.terms.iter().next()?;
    let lam = a0 / &b.terms[k0];
    a.terms.iter().all(|(k, v)| *v == &lam * &b.terms[k]).then_some(lam)
}

fn describe(a: &RadialRow, b: &RadialRow) -> String {
    let ka: BTreeSet<_> = a.terms.keys().collect();
    let kb: BTreeSet<_> = b.terms.keys().collect();
    if ka != kb {
        let only_a: Vec<String> = ka.difference(&kb).map(|(s, k)| format!("{s}:{k:?}")).collect();
        let only_b: Vec<String> = kb.difference(&ka).map(|(s, k)| format!("{s}:{k:?}")).collect();
        return format!("terms only in first [{}], only in second [{}]", only_a.join(", "), only_b.join(", "));
    }
    let nb = b.normalized().unwrap_or_else(|| b.clone());
    let na = a.normalized().unwrap_or_else(|| a.clone());
    let bad: Vec<String> = na
        .terms
        .iter()
        .filter(|(k, v)| **v != nb.terms[*k])
        .map(|((s, k), v)| format!("{s}:{k:?} {v} vs {}", nb.terms[&(*s, *k)]))
        .collect();
    format!("coefficients differ: {}", bad.join("; "))
}

/// Compares two systems after applying `map` to the symbols of `b`.
pub fn systems_equal_mapped(a: &RadialSystem, b: &RadialSystem, map: &SymbolMap, allow_sign: bool) -> EqualityReport {
    let bm: Vec<RadialRow> = b.rows.iter().map(|r| relabel(r, map)).collect();
    if allow_sign {
        if let Some(neg) = sign_solution(&a.rows, &bm) {
            let negmap: SymbolMap = neg.iter().map(|s| (*s, (-1, *s))).collect();
            let bm2: Vec<RadialRow> = bm.iter().map(|r| relabel(r, &negmap)).collect();
            let mut rep = match_rows(&a.rows, &bm2);
            rep.negated = neg;
            return rep;
        }
    }
    match_rows(&a.rows, &bm)
}

/// Equality up to row permutation and scaling, optionally allowing symbol sign flips.
pub fn systems_equal(a: &RadialSystem, b: &RadialSystem, allow_sign: bool) -> EqualityReport {
    systems_equal_mapped(a, b, &SymbolMap::new(), allow_sign)
}

fn match_rows(a: &[RadialRow], b: &[RadialRow]) -> EqualityReport {
    let mut used = vec![false; b.len()];
    let mut row_map = vec![];
    let mut diffs = vec![];
    for ra in a {
        let hit = (0..b.len()).find(|&i| !used[i] && proportional(ra, &b[i]).is_some());
        match hit {
            Some(i) => {
                used[i] = true;
                row_map.push((ra.name.clone(), b[i].name.clone()));
            }
            None => {
                // closest candidate: same head, else same symbol set
                let cand = (0..b.len())
                    .filter(|&i| !used[i])
                    .find(|&i| ra.head().is_some() && b[i].head() == ra.head())
                    .or_else(|| (0..b.len()).filter(|&i| !used[i]).find(|&i| b[i].symbols() == ra.symbols()));
                let detail = match cand {
                    Some(i) => format!("vs {}: {}", b[i].name, describe(ra, &b[i])),
                    None => "no row with matching structure".to_string(),
                };
                diffs.push(RowDiff { row: ra.name.clone(), detail });
            }
        }
    }
    for (i, u) in used.iter().enumerate() {
        if !u {
            diffs.push(RowDiff {
                row: b[i].name.clone(),
                detail: "unmatched row of second system".into(),
            });
        }
    }
    EqualityReport {
        equal: diffs.is_empty(),
        row_map,
        negated: vec![],
        diffs,
    }
}

/// Finds sign flips of `b`'s symbols that make rows with equal heads proportional.
fn sign_solution(a: &[RadialRow], b: &[RadialRow]) -> Option<Vec<Symbol>> {
    // parity graph: edge (s, t, p) means sign(s) * sign(t) = p
    let mut edges: Vec<(Symbol, Symbol, i64)> = vec![];
    for ra in a {
        let h = ra.head()?;
        let rb = b.iter().find(|r| r.head() == Some(h))?;
        if ra.terms.keys().ne(rb.terms.keys()) {
            return None;
        }
        let ah = &ra.terms[&(h, crate::separation::Kind::Mass)];
        let bh = &rb.terms[&(h, crate::separation::Kind::Mass)];
        for (key, av) in &ra.terms {
            let q = &(av * bh) / &(ah * &rb.terms[key]);
            let p = if q == Exact::one() {
                1
            } else if q == Exact::int(-1) {
                -1
            } else {
                return None;
            };
            edges.push((h, key.0, p));
        }
    }
    let mut sign: BTreeMap<Symbol, i64> = BTreeMap::new();
    let syms: BTreeSet<Symbol> = edges.iter().flat_map(|e| [e.0, e.1]).collect();
    for root in syms {
        if sign.contains_key(&root) {
            continue;
        }
        sign.insert(root, 1);
        let mut changed = true;
        while changed {
            changed = false;
            for &(s, t, p) in &edges {
                match (sign.get(&s).copied(), sign.get(&t).copied()) {
                    (Some(x), None) => {
                        sign.insert(t, x * p);
                        changed = true;
                    }
                    (None, Some(y)) => {
                        sign.insert(s, y * p);
                        changed = true;
                    }
                    (Some(x), Some(y)) if x * y != p => return None,
                    _ => {}
                }
            }
        }
    }
    Some(sign.into_iter().filter(|(_, v)| *v < 0).map(|(s, _)| s).collect())
}

/// Searches a signed permutation of `b`'s symbols under which the systems agree.
///
/// Candidates for each symbol are restricted to symbols with the same term
/// signature; the search is exhaustive within those classes.
pub fn find_symbol_map(a: &RadialSystem, b: &RadialSystem) -> Option<(SymbolMap, EqualityReport)> {
    let sig = |sys: &RadialSystem| -> BTreeMap<Symbol, Vec<String>> {
        let mut m: BTreeMap<Symbol, Vec<String>> = BTreeMap::new();
        for r in &sys.rows {
            for (s, k) in r.terms.keys() {
                m.entry(*s).or_default().push(format!("{k:?}"));
            }
        }
        for v in m.values_mut() {
            v.sort();
        }
        m
    };
    let (sa, sb) = (sig(a), sig(b));
    let bsyms: Vec<Symbol> = sb.keys().copied().collect();
    let cands: Vec<Vec<Symbol>> = bsyms
        .iter()
        .map(|s| sa.iter().filter(|(_, v)| **v == sb[s]).map(|(t, _)| *t).collect())
        .collect();
    let mut assign: Vec<Symbol> = vec![];
    let mut used = BTreeSet::new();
    fn go(
        idx: usize,
        bsyms: &[Symbol],
        cands: &[Vec<Symbol>],
        assign: &mut Vec<Symbol>,
        used: &mut BTreeSet<Symbol>,
        a: &RadialSystem,
        b: &RadialSystem,
    ) -> Option<(SymbolMap, EqualityReport)> {
        if idx == bsyms.len() {
            let map: SymbolMap = bsyms.iter().zip(assign.iter()).map(|(s, t)| (*s, (1, *t))).collect();
            let rep = systems_equal_mapped(a, b, &map, true);
            if rep.equal {
                let map = map
                    .into_iter()
                    .map(|(s, (_, t))| (s, (if rep.negated.contains(&t) { -1 } else { 1 }, t)))
                    .collect();
                return Some((map, rep));
            }
            return None;
        }
        for t in &cands[idx] {
            if used.contains(t) {
                continue;
            }
            used.insert(*t);
            assign.push(*t);
            if let Some(x) = go(idx + 1, bsyms, cands, assign, used, a, b) {
                return Some(x);
            }
            assign.pop();
            used.remove(t);
        }
        None
    }
    go(0, &bsyms, &cands, &mut assign, &mut used, a, b)
}

/// Compares a recovered system with a golden one after removing from the
/// golden system the unknowns the recovered system does not carry.
///
/// A golden row headed by a removed unknown must vanish once the removed
/// unknowns are set to zero; otherwise it is reported as a difference.
pub fn systems_equal_on_support(recovered: &RadialSystem, golden: &RadialSystem) -> EqualityReport {
    let own = recovered.symbols();
    let absent: Vec<Symbol> = golden.symbols().into_iter().filter(|s| !own.contains(s)).collect();
    if absent.is_empty() {
        return systems_equal(recovered, golden, false);
    }
    let mut rep = systems_equal(recovered, &golden.restrict(&absent), false);
    for r in &golden.rows {
        if r.head().is_some_and(|h| absent.contains(&h)) {
            let rest = r.without(&absent);
            if !rest.is_zero() {
                rep.equal = false;
                rep.diffs.push(RowDiff {
                    row: r.name.clone(),
                    detail: format!("absent unknown's row does not vanish: {rest}"),
                });
            }
        }
    }
    rep
}
