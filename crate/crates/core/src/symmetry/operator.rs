//! Discrete reflection operators `[pi (x)] Pi (x) P` and their action on fields.

use std::fmt;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::{build_rep, pauli_matrix, Exact, ExactMatrix, FloatMatrix, Spin};
use crate::model::{Background, Field, FieldTerm, WaveOperator};
use crate::wigner::{HalfInt, Label};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiscreteKind {
    /// `pi (x) Pi_bisp (x) P` on the Abelian spin-1/2 problem.
    NBispinor,
    /// `pi (x) Pi_vect (x) P` on the Abelian spin-1 problem.
    NVector,
    /// `Pi (x) P` with the charge left alone.
    NaiveParity,
    /// `sigma_1 (x) Pi (x) P` on a doublet.
    Doublet,
}

#[derive(Clone, Debug)]
pub struct DiscreteOperator {
    pub kind: DiscreteKind,
    pub spin: Spin,
    /// Matrix acting on components after `P`.
    pub matrix: ExactMatrix,
    /// The operator also flips the sign of the monopole charge.
    pub charge_flip: bool,
    float: FloatMatrix,
}

impl fmt::Display for DiscreteOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match (self.kind, self.spin) {
            (DiscreteKind::NBispinor, _) => "pi x Pi_bisp x P",
            (DiscreteKind::NVector, _) => "pi x Pi_vect x P",
            (DiscreteKind::NaiveParity, Spin::Half) => "Pi_bisp x P",
            (DiscreteKind::NaiveParity, Spin::One) => "Pi_vect x P",
            (DiscreteKind::Doublet, Spin::Half) => "sigma1 x Pi_bisp x P",
            (DiscreteKind::Doublet, Spin::One) => "sigma1 x Pi_vect x P",
        };
        f.write_str(s)
    }
}

impl DiscreteOperator {
    fn new(kind: DiscreteKind, spin: Spin, matrix: ExactMatrix, charge_flip: bool) -> Self {
        let float = matrix.to_float();
        DiscreteOperator {
            kind,
            spin,
            matrix,
            charge_flip,
            float,
        }
    }

    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    /// `Phi(x) = M Psi(-x)` expressed again as a sum of Wigner terms, using
    /// `D^j_{m' s}(pi - theta, phi + pi) = exp(i pi j) D^j_{m', -s}(theta, phi)`.
    pub fn apply_field(&self, field: &Field) -> Field {
        let mut out = Field::new(field.n);
        for t in &field.terms {
            let ph = Exact::i_pow(t.label.j.0 as i64).to_c64();
            for k in 0..self.n() {
                let m = self.float[(k, t.comp)];
                if m.norm() > 0.0 {
                    out.terms.push(FieldTerm {
                        comp: k,
                        coeff: t.coeff * m * ph,
                        radial: t.radial.clone(),
                        label: Label::new(t.label.j, t.label.mp, -t.label.sigma),
                    });
                }
            }
        }
        out
    }

    /// `M v` for component values `v` already taken at the reflected point.
    pub fn apply_values(&self, v: &[Complex64]) -> Vec<Complex64> {
        self.float.apply(v)
    }

    /// Operator that the image of `h` must be compared with.
    pub fn target(&self, h: &WaveOperator) -> Result<WaveOperator> {
        if self.charge_flip {
            h.charge_flipped()
        } else {
            Ok(h.clone())
        }
    }

    /// Exact phase `exp(i pi j)` of the label map.
    pub fn label_phase(j: HalfInt) -> Exact {
        Exact::i_pow(j.0 as i64)
    }
}

/// The operator that commutes with the wave operator of `(spin, background)`.
pub fn build_discrete_operator(spin: Spin, background: &Background) -> DiscreteOperator {
    let pi = build_rep(spin).spherical_reflection();
    match background {
        Background::Abelian { .. } => {
            let kind = if spin == Spin::Half { DiscreteKind::NBispinor } else { DiscreteKind::NVector };
            DiscreteOperator::new(kind, spin, pi, true)
        }
        Background::Doublet { .. } => DiscreteOperator::new(DiscreteKind::Doublet, spin, pauli_matrix(1).kron(&pi), false),
    }
}

/// Reflection without the charge flip; used as a negative control.
pub fn naive_parity(spin: Spin) -> DiscreteOperator {
    DiscreteOperator::new(DiscreteKind::NaiveParity, spin, build_rep(spin).spherical_reflection(), false)
}

/// Matrix `-gamma^0 gamma^3` of the spin-1/2 angular operator `K = -gamma^0 gamma^3 Sigma`.
pub fn k_matrix() -> ExactMatrix {
    let g = build_rep(Spin::Half).matrices;
    -&(&g[0] * &g[3])
}
