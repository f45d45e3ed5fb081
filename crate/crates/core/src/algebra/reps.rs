//! Spin 1/2 (Dirac) and spin 1 (Duffin-Kemmer-Petiau) matrix representations.
//!
//! Dirac matrices are in the Weyl basis with metric (+,-,-,-). The 10x10 DKP
//! matrices are built from the Proca first-order system, transformed to a
//! cyclic basis in which `iJ^{12}` is diagonal with weights (+1, 0, -1) on each
//! triplet, and finally rephased so that the tensor components carry a factor `i`.

use serde::{Deserialize, Serialize};

use super::matrix::{ExactMatrix, FloatMatrix, Matrix};
use super::surd::{rat, Exact, Surd};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Spin {
    #[serde(rename = "1/2")]
    Half,
    #[serde(rename = "1")]
    One,
}

impl Spin {
    pub fn dim(self) -> usize {
        match self {
            Spin::Half => 4,
            Spin::One => 10,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Spin::Half => "1/2",
            Spin::One => "1",
        }
    }
}

impl std::str::FromStr for Spin {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "1/2" | "half" | "0.5" => Ok(Spin::Half),
            "1" | "one" | "vector" => Ok(Spin::One),
            _ => Err(Error::Config(format!("unknown spin '{s}' (expected 1/2 or 1)"))),
        }
    }
}

/// Minkowski metric diagonal entry.
pub fn metric(a: usize) -> i64 {
    if a == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug)]
pub struct Representation {
    pub spin: Spin,
    /// `gamma^a` for spin 1/2, `beta^a` for spin 1.
    pub matrices: [ExactMatrix; 4],
}

fn ex(re: i64, im: i64) -> Exact {
    Exact::new(Surd::from_int(re), Surd::from_int(im))
}

fn pauli(k: usize) -> ExactMatrix {
    let z = Exact::zero;
    let rows = match k {
        0 => vec![vec![ex(1, 0), z()], vec![z(), ex(1, 0)]],
        1 => vec![vec![z(), ex(1, 0)], vec![ex(1, 0), z()]],
        2 => vec![vec![z(), ex(0, -1)], vec![ex(0, 1), z()]],
        _ => vec![vec![ex(1, 0), z()], vec![z(), ex(-1, 0)]],
    };
    Matrix::from_rows(rows).expect("pauli")
}

fn block2(a: &ExactMatrix, b: &ExactMatrix, c: &ExactMatrix, d: &ExactMatrix) -> ExactMatrix {
    let n = a.rows();
    let mut m = ExactMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = a[(i, j)].clone();
            m[(i, j + n)] = b[(i, j)].clone();
            m[(i + n, j)] = c[(i, j)].clone();
            m[(i + n, j + n)] = d[(i, j)].clone();
        }
    }
    m
}

/// Isospin matrices `t^a = sigma^a / 2` (a = 1, 2, 3) and `sigma^1`.
pub fn isospin(a: usize) -> ExactMatrix {
    pauli(a).scale(&Exact::ratio(1, 2))
}

pub fn pauli_matrix(a: usize) -> ExactMatrix {
    pauli(a)
}

pub fn build_dirac_rep() -> Representation {
    let z = ExactMatrix::zeros(2, 2);
    let g0 = block2(&z, &pauli(0), &pauli(0), &z);
    let gi = |k| block2(&z, &(-&pauli(k)), &pauli(k), &z);
    Representation {
        spin: Spin::Half,
        matrices: [g0, gi(1), gi(2), gi(3)],
    }
}

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

fn pair_index(a: usize, b: usize) -> Option<(usize, i64)> {
    PAIRS.iter().enumerate().find_map(|(k, &(p, q))| {
        if (p, q) == (a, b) {
            Some((4 + k, 1))
        } else if (q, p) == (a, b) {
            Some((4 + k, -1))
        } else {
            None
        }
    })
}

/// Cartesian Proca form: components (psi_0..psi_3, psi_01, psi_02, psi_03, psi_23, psi_31, psi_12).
fn proca_beta(c: usize) -> ExactMatrix {
    let mut b = ExactMatrix::zeros(10, 10);
    for (k, &(p, q)) in PAIRS.iter().enumerate() {
        if c == p {
            b[(4 + k, q)] = &b[(4 + k, q)] + &Exact::int(1);
        }
        if c == q {
            b[(4 + k, p)] = &b[(4 + k, p)] - &Exact::int(1);
        }
    }
    for a in 0..4 {
        if a == c {
            continue;
        }
        let (k, s) = pair_index(a, c).expect("pair");
        b[(a, k)] = &b[(a, k)] + &Exact::int(-metric(c) * s);
    }
    b
}

fn cyclic_transform() -> (ExactMatrix, ExactMatrix) {
    let h = Surd::sqrt_rational(&rat(1, 2)).expect("sqrt");
    let p = Exact::real(h.clone());
    let n = Exact::real(-h.clone());
    let pi = Exact::imag(h);
    let z = Exact::zero;
    let u3 = Matrix::from_rows(vec![vec![n, pi.clone(), z()], vec![z(), z(), Exact::one()], vec![p, pi, z()]]).expect("u");
    let mut u = ExactMatrix::zeros(10, 10);
    u[(0, 0)] = Exact::one();
    for blk in 0..3 {
        for i in 0..3 {
            for j in 0..3 {
                u[(1 + 3 * blk + i, 1 + 3 * blk + j)] = u3[(i, j)].clone();
            }
        }
    }
    let ui = u.adjoint();
    (u, ui)
}

pub fn build_dkp_rep() -> Representation {
    let (u, ui) = cyclic_transform();
    let mut s = vec![Exact::one(); 4];
    s.extend(vec![Exact::i(); 6]);
    let sm = ExactMatrix::diag(s.clone());
    let si = ExactMatrix::diag(s.iter().map(|x| x.inverse().expect("unit")).collect());
    let m = |c| &(&si * &(&(&u * &proca_beta(c)) * &ui)) * &sm;
    Representation {
        spin: Spin::One,
        matrices: [m(0), m(1), m(2), m(3)],
    }
}

pub fn build_rep(spin: Spin) -> Representation {
    match spin {
        Spin::Half => build_dirac_rep(),
        Spin::One => build_dkp_rep(),
    }
}

fn antidiag(n: usize, v: Exact) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, n - 1 - i)] = v.clone();
    }
    m
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.matrices[0].rows()
    }

    pub fn gamma(&self, a: usize) -> &ExactMatrix {
        &self.matrices[a]
    }

    /// Lorentz generator: `[g^a, g^b] / 4` for spin 1/2, `[b^a, b^b]` for spin 1.
    pub fn generator(&self, a: usize, b: usize) -> ExactMatrix {
        let c = self.matrices[a].commutator(&self.matrices[b]).expect("square");
        match self.spin {
            Spin::Half => c.scale(&Exact::ratio(1, 4)),
            Spin::One => c,
        }
    }

    /// Diagonal of `i J^{12}`; `None` when it is not diagonal in this basis.
    pub fn helicity_weights(&self) -> Option<Vec<Exact>> {
        let w = self.generator(1, 2).scale(&Exact::i());
        if !w.is_diagonal() {
            return None;
        }
        Some((0..w.rows()).map(|i| w[(i, i)].clone()).collect())
    }

    /// Cartesian reflection matrix.
    pub fn cartesian_reflection(&self) -> ExactMatrix {
        match self.spin {
            Spin::Half => self.matrices[0].scale(&Exact::i()),
            Spin::One => {
                let mut d = vec![Exact::one()];
                d.extend(vec![Exact::int(-1); 6]);
                d.extend(vec![Exact::one(); 3]);
                ExactMatrix::diag(d)
            }
        }
    }

    /// Reflection matrix acting in the spherical tetrad frame.
    pub fn spherical_reflection(&self) -> ExactMatrix {
        match self.spin {
            Spin::Half => antidiag(4, Exact::int(-1)),
            Spin::One => {
                let e = antidiag(3, Exact::one());
                let mut m = ExactMatrix::zeros(10, 10);
                m[(0, 0)] = Exact::one();
                for (blk, sign) in [(0usize, 1i64), (1, 1), (2, -1)] {
                    for i in 0..3 {
                        for j in 0..3 {
                            m[(1 + 3 * blk + i, 1 + 3 * blk + j)] = e[(i, j)].scale(&Surd::from_int(sign));
                        }
                    }
                }
                m
            }
        }
    }

    /// Matrix defining the conjugate row vector: `gamma^0` or `2 (beta^0)^2 - 1`.
    pub fn adjoint_metric(&self) -> ExactMatrix {
        match self.spin {
            Spin::Half => self.matrices[0].clone(),
            Spin::One => {
                let b2 = &self.matrices[0] * &self.matrices[0];
                &b2.scale(&Exact::int(2)) - &ExactMatrix::identity(10)
            }
        }
    }

    pub fn to_float(&self) -> [FloatMatrix; 4] {
        [0, 1, 2, 3].map(|a| self.matrices[a].to_float())
    }
}

/// Free-function form of [`Representation::spherical_reflection`].
pub fn to_spherical_reflection(rep: &Representation) -> ExactMatrix {
    rep.spherical_reflection()
}
