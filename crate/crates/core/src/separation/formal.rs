//! Exact separation by the sigma-ladder identities of the Wigner functions.

use std::collections::BTreeMap;

use super::system::{Kind, RadialRow, RadialSystem};
use crate::algebra::Exact;
use crate::model::{Ansatz, OperatorData, Slot, Symbol};
use crate::wigner::{sigma_ladder, HalfInt, Label};
use crate::{Error, Result};

/// Row names: the head symbol, disambiguated by component when symbols repeat.
pub(crate) fn row_names(a: &Ansatz) -> Vec<String> {
    let mut count: BTreeMap<Symbol, usize> = BTreeMap::new();
    for s in &a.slots {
        *count.entry(s.symbol).or_default() += 1;
    }
    (0..a.n)
        .map(|k| match a.slot_of_comp(k) {
            Some(s) if count[&s.symbol] == 1 => s.symbol.to_string(),
            Some(s) => format!("{}@{}", s.symbol, k + 1),
            None => format!("row{}", k + 1),
        })
        .collect()
}

/// Label that row `k` projects onto.
pub(crate) fn row_label(data: &OperatorData, a: &Ansatz, k: usize) -> Label {
    Label::new(a.j, -a.m, data.sig[k])
}

fn half() -> Exact {
    Exact::ratio(1, 2)
}

/// Exact radial system of `data` on the ansatz `a`.
///
/// Each row is the coefficient of `D^j_{-m, sig_k}` in component `k`.
/// Components whose label lies outside `[-j, j]` give no row.
pub fn separate_exact(data: &OperatorData, a: &Ansatz) -> Result<RadialSystem> {
    if data.n != a.n {
        return Err(Error::Shape(format!("operator has {} components, ansatz {}", data.n, a.n)));
    }
    for s in &a.slots {
        if s.label.sigma != data.sig[s.comp] {
            return Err(Error::Shape(format!(
                "slot {} carries sigma {} but the operator expects {}",
                s.symbol, s.label.sigma, data.sig[s.comp]
            )));
        }
    }
    let names = row_names(a);
    let i = Exact::i();
    let mut rows = vec![];
    for (k, name) in names.iter().enumerate().take(a.n) {
        let lab = row_label(data, a, k);
        if !lab.is_valid() {
            continue;
        }
        let mut row = RadialRow::new(name.clone());
        for sl in &a.slots {
            add_slot(&mut row, data, a, k, sl, &i)?;
        }
        if !row.is_zero() {
            rows.push(row);
        }
    }
    Ok(RadialSystem {
        name: format!("{} (j={}, m={})", a.name, a.j, a.m),
        rows,
        vacuous: a.vacuous.clone(),
        notes: vec![],
    })
}

fn same(sk: HalfInt, sl: HalfInt, what: &str) -> Result<()> {
    if sk != sl {
        return Err(Error::Certification(format!("{what} couples sigma {sl} to sigma {sk}")));
    }
    Ok(())
}

fn add_slot(row: &mut RadialRow, data: &OperatorData, a: &Ansatz, k: usize, sl: &Slot, i: &Exact) -> Result<()> {
    let l = sl.comp;
    let (sk, sg) = (data.sig[k], data.sig[l]);
    let c = &sl.coeff;
    let s = sl.symbol;
    let e = &data.energy[(k, l)];
    if !e.is_zero() {
        same(sk, sg, "energy term")?;
        row.add(s, Kind::Energy, e * c);
    }
    let dr = &data.ddr[(k, l)];
    if !dr.is_zero() {
        same(sk, sg, "radial derivative")?;
        row.add(s, Kind::Ddr, dr * c);
        if a.inv_r_prefactor {
            row.add(s, Kind::InvR, -&(dr * c));
        }
    }
    let cn = &data.conn[(k, l)];
    if !cn.is_zero() {
        same(sk, sg, "connection term")?;
        row.add(s, Kind::InvR, cn * c);
    }
    if let Some(x) = &data.mix {
        let v = &x[(k, l)];
        if !v.is_zero() {
            same(sk, sg, "mixing term")?;
            row.add(s, Kind::Profile, v * c);
        }
    }
    let (b1, b2) = (&data.b1[(k, l)], &data.b2[(k, l)]);
    if !b1.is_zero() || !b2.is_zero() {
        let (lo_a, hi_b) = sigma_ladder(a.j, sg)?;
        let lo = &(&half() * &Exact::real(lo_a)) * &(&(i * b1) - b2);
        let hi = -&(&(&half() * &Exact::real(hi_b)) * &(&(i * b1) + b2));
        if !lo.is_zero() {
            same(sk, sg - HalfInt(2), "lowering term")?;
            row.add(s, Kind::InvR, &lo * c);
        }
        if !hi.is_zero() {
            same(sk, sg + HalfInt(2), "raising term")?;
            row.add(s, Kind::InvR, &hi * c);
        }
    }
    if k == l {
        row.add(s, Kind::Mass, -c);
    }
    Ok(())
}
