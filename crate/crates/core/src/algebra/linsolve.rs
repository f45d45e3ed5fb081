//! Exact Gaussian elimination over [`Exact`] scalars.

use super::surd::Exact;

/// Reduced row echelon form. Pivots are searched in `col_order`;
/// returns the reduced rows and the pivot column of each.
pub fn rref(rows: &[Vec<Exact>], col_order: &[usize]) -> (Vec<Vec<Exact>>, Vec<usize>) {
    let mut m: Vec<Vec<Exact>> = rows.to_vec();
    let mut pivots = vec![];
    let mut r = 0;
    for &c in col_order {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inverse().expect("nonzero pivot");
        m[r] = m[r].iter().map(|x| x * &inv).collect();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let sub: Vec<Exact> = m[r].iter().map(|x| x * &f).collect();
                for (a, b) in m[i].iter_mut().zip(sub) {
                    *a = &*a - &b;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

pub fn rank(rows: &[Vec<Exact>]) -> usize {
    let n = rows.first().map_or(0, Vec::len);
    rref(rows, &(0..n).collect::<Vec<_>>()).1.len()
}

/// Nullspace of `rows` written as `pivot = sum coeff * free`, pivots taken
/// from the end of the column range so that early columns stay free.
pub fn solve_late_pivots(rows: &[Vec<Exact>], n: usize) -> Vec<(usize, Vec<(Exact, usize)>)> {
    let order: Vec<usize> = (0..n).rev().collect();
    let (m, piv) = rref(rows, &order);
    let free: Vec<usize> = (0..n).filter(|c| !piv.contains(c)).collect();
    piv.iter()
        .zip(&m)
        .map(|(&p, row)| {
            let combo = free.iter().filter(|&&f| !row[f].is_zero()).map(|&f| (-&row[f], f)).collect();
            (p, combo)
        })
        .collect()
}
