//! Matrix elements between states, the reflection selection-rule factor and
//! the half-sphere form of the integrals.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{build_rep, pauli_matrix, Exact, ExactMatrix, FloatMatrix, Spin};
use crate::model::{Background, Field, ModelConfig};
use crate::quadrature::{bilinear, Observable, RadialGrid, Region};
use crate::symmetry::{build_discrete_operator, constrained_profiles, eigen_constraints, field_with, seeded_profiles};
use crate::wigner::{HalfInt, SphereGrid};
use crate::{Error, Result};

/// How the bra is conjugated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum Adjoint {
    /// `psi^dagger A` with `A = gamma^0` (spin 1/2) or `2 (beta^0)^2 - 1` (spin 1).
    #[default]
    Bar,
    Dagger,
}

/// Matrix `A` of the conjugate row vector for a field with `n` components.
pub fn adjoint_matrix(spin: Spin, n: usize, adjoint: Adjoint) -> Result<ExactMatrix> {
    let d = spin.dim();
    if n != d && n != 2 * d {
        return Err(Error::Shape(format!("{n} components for a spin-{} field", spin.label())));
    }
    let a = match adjoint {
        Adjoint::Dagger => ExactMatrix::identity(d),
        Adjoint::Bar => build_rep(spin).adjoint_metric(),
    };
    Ok(if n == d { a } else { ExactMatrix::identity(2).kron(&a) })
}

/// Observables used in the selection-rule checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Probe {
    /// Unit matrix.
    Scalar,
    /// `i gamma^0 gamma^1 gamma^2 gamma^3`; spin 1/2 only.
    Pseudoscalar,
    X,
    Y,
    Z,
}

impl fmt::Display for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Probe::Scalar => "scalar",
            Probe::Pseudoscalar => "pseudoscalar",
            Probe::X => "x",
            Probe::Y => "y",
            Probe::Z => "z",
        };
        f.write_str(s)
    }
}

fn one(_: f64, _: f64) -> Complex64 {
    Complex64::new(1.0, 0.0)
}
fn unit_x(th: f64, ph: f64) -> Complex64 {
    Complex64::new(th.sin() * ph.cos(), 0.0)
}
fn unit_y(th: f64, ph: f64) -> Complex64 {
    Complex64::new(th.sin() * ph.sin(), 0.0)
}
fn unit_z(th: f64, _: f64) -> Complex64 {
    Complex64::new(th.cos(), 0.0)
}

impl Probe {
    /// Component matrix of the observable for an `n`-component field.
    pub fn matrix(self, spin: Spin, n: usize) -> Result<ExactMatrix> {
        let d = spin.dim();
        let m = match self {
            Probe::Pseudoscalar => {
                if spin != Spin::Half {
                    return Err(Error::Config("the pseudoscalar probe is defined for spin 1/2".into()));
                }
                let g = build_rep(spin).matrices;
                (&(&(&g[0] * &g[1]) * &g[2]) * &g[3]).scale(&Exact::i())
            }
            _ => ExactMatrix::identity(d),
        };
        Ok(if n == d { m } else { ExactMatrix::identity(2).kron(&m) })
    }

    pub fn observable(self, spin: Spin, n: usize, adjoint: Adjoint) -> Result<Observable<'static>> {
        let m = &adjoint_matrix(spin, n, adjoint)? * &self.matrix(spin, n)?;
        let (angular, radial_power): (&'static dyn Fn(f64, f64) -> Complex64, i32) = match self {
            Probe::Scalar | Probe::Pseudoscalar => (&one, 0),
            Probe::X => (&unit_x, 1),
            Probe::Y => (&unit_y, 1),
            Probe::Z => (&unit_z, 1),
        };
        Ok(Observable {
            matrix: m.to_float(),
            radial_power,
            angular,
        })
    }

    /// Sign `omega` in `Pi G(-r) Pi = omega G(r)`, with `Pi` the reflection matrix.
    pub fn omega(self, spin: Spin) -> Result<i64> {
        let pi = build_rep(spin).spherical_reflection();
        let m = self.matrix(spin, spin.dim())?;
        let conj = &(&pi * &m) * &pi;
        let matrix_sign = if conj == m {
            1
        } else if conj == -&m {
            -1
        } else {
            return Err(Error::Certification(format!("{self} has no definite reflection sign")));
        };
        let angular_sign = match self {
            Probe::Scalar | Probe::Pseudoscalar => 1,
            _ => -1,
        };
        Ok(matrix_sign * angular_sign)
    }
}

/// `int bra-bar G ket dV`.
pub fn matrix_element(bra: &Field, probe: Probe, ket: &Field, spin: Spin, adjoint: Adjoint, radial: &RadialGrid, sphere: &SphereGrid) -> Result<Complex64> {
    bilinear(bra, &probe.observable(spin, bra.n, adjoint)?, ket, radial, sphere, Region::Full)
}

/// `f / sqrt(<f|f>)`.
pub fn normalized(f: &Field, radial: &RadialGrid, sphere: &SphereGrid) -> Result<Field> {
    let id = Observable::matrix(FloatMatrix::identity(f.n));
    let norm = bilinear(f, &id, f, radial, sphere, Region::Full)?.re;
    if norm <= 0.0 || !norm.is_finite() {
        return Err(Error::Certification("state has zero norm on the grid".into()));
    }
    Ok(f.scaled(Complex64::new(norm.sqrt().recip(), 0.0)))
}

/// `1 + omega delta delta' (-1)^(j + j' + 1)`; `j + j'` must be an integer.
pub fn parity_factor(omega: i64, delta: i64, delta_p: i64, j: HalfInt, jp: HalfInt) -> Result<f64> {
    for (name, v) in [("omega", omega), ("delta", delta), ("delta'", delta_p)] {
        if v.abs() != 1 {
            return Err(Error::Config(format!("{name} must be +1 or -1, got {v}")));
        }
    }
    let s = j.0 + jp.0;
    if s % 2 != 0 {
        return Err(Error::Config(format!("j + j' = {} is not an integer", HalfInt(s))));
    }
    let sign = if (s / 2 + 1) % 2 == 0 { 1 } else { -1 };
    Ok((1 + omega * delta * delta_p * sign) as f64)
}

#[derive(Clone, Debug, Serialize)]
pub struct HalfSphere {
    pub full: [f64; 2],
    pub upper: [f64; 2],
    pub factor: f64,
    /// `|full - factor * upper|`.
    pub residual: f64,
}

/// Compares the full-sphere matrix element with `factor` times its upper
/// half-sphere part.
#[allow(clippy::too_many_arguments)]
pub fn halfsphere_consistency(
    bra: &Field,
    probe: Probe,
    ket: &Field,
    spin: Spin,
    adjoint: Adjoint,
    factor: f64,
    radial: &RadialGrid,
    sphere: &SphereGrid,
) -> Result<HalfSphere> {
    let g = probe.observable(spin, bra.n, adjoint)?;
    let full = bilinear(bra, &g, ket, radial, sphere, Region::Full)?;
    let upper = bilinear(bra, &g, ket, radial, sphere, Region::Upper)?;
    Ok(HalfSphere {
        full: [full.re, full.im],
        upper: [upper.re, upper.im],
        factor,
        residual: (full - factor * upper).norm(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    /// `max |lhs(-r) - phase M rhs(r)|`.
    pub residual: f64,
    /// `max |lhs|`, for scale.
    pub scale: f64,
    pub points: usize,
}

/// Pointwise check of `lhs(-r) = phase M rhs(r)`.
///
/// `-r` is `(pi - theta, phi + pi)` with `phi + pi` left unwrapped so that
/// half-integer `m'` keeps its branch.
pub fn cross_charge_relation_check(
    lhs: &Field,
    matrix: &FloatMatrix,
    phase: Complex64,
    rhs: &Field,
    sphere: &SphereGrid,
    radii: &[f64],
) -> Result<RelationReport> {
    if lhs.n != rhs.n || matrix.rows() != lhs.n || matrix.cols() != rhs.n {
        return Err(Error::Shape(format!("relation between fields of {} and {} components", lhs.n, rhs.n)));
    }
    let mut residual: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &r in radii {
        for i in 0..sphere.len() {
            let (th, ph, _) = sphere.node(i);
            let a = lhs.eval(r, PI - th, ph + PI);
            let b = matrix.apply(&rhs.eval(r, th, ph));
            for (x, y) in a.iter().zip(&b) {
                residual = residual.max((x - phase * y).norm());
                scale = scale.max(x.norm());
            }
        }
    }
    Ok(RelationReport {
        residual,
        scale,
        points: radii.len() * sphere.len(),
    })
}

/// The two isotopic halves of a doublet field, as fields of half the size.
pub fn isotopic_split(f: &Field) -> Result<(Field, Field)> {
    if !f.n.is_multiple_of(2) {
        return Err(Error::Shape(format!("{} components do not split into two halves", f.n)));
    }
    let h = f.n / 2;
    let (mut up, mut down) = (Field::new(h), Field::new(h));
    for t in &f.terms {
        let mut t = t.clone();
        if t.comp < h {
            up.terms.push(t);
        } else {
            t.comp -= h;
            down.terms.push(t);
        }
    }
    Ok((up, down))
}

/// Pointwise check of `bar(psi+-)(-r) (-r) psi+-(-r) = -bar(psi-+)(r) r psi-+(r)`
/// for each Cartesian component of `r`.
pub fn doublet_density_relation(f: &Field, spin: Spin, adjoint: Adjoint, sphere: &SphereGrid, radii: &[f64]) -> Result<RelationReport> {
    let (up, down) = isotopic_split(f)?;
    let a = adjoint_matrix(spin, up.n, adjoint)?.to_float();
    let form = |f: &Field, r: f64, th: f64, ph: f64| -> Complex64 {
        let v = f.eval(r, th, ph);
        let av = a.apply(&v);
        v.iter().zip(&av).map(|(x, y)| x.conj() * y).sum()
    };
    let mut residual: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &r in radii {
        for i in 0..sphere.len() {
            let (th, ph, _) = sphere.node(i);
            let (tr, pr) = (PI - th, ph + PI);
            for (p, q) in [(&up, &down), (&down, &up)] {
                let (lhs_density, rhs_density) = (form(p, r, tr, pr), form(q, r, th, ph));
                for c in [unit_x, unit_y, unit_z] {
                    let lhs = lhs_density * r * c(tr, pr);
                    let rhs = -(rhs_density * r * c(th, ph));
                    residual = residual.max((lhs - rhs).norm());
                    scale = scale.max(lhs.norm());
                }
            }
        }
    }
    Ok(RelationReport {
        residual,
        scale,
        points: radii.len() * sphere.len(),
    })
}

/// `<psi|r|psi>` computed directly and as the sum over the isotopic halves.
#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub direct: [[f64; 2]; 3],
    pub upper_half: [[f64; 2]; 3],
    pub lower_half: [[f64; 2]; 3],
    /// Largest `|direct - (upper_half + lower_half)|` over the components.
    pub residual: f64,
    /// Largest `|direct|`.
    pub magnitude: f64,
}

pub fn position_decomposition(f: &Field, spin: Spin, adjoint: Adjoint, radial: &RadialGrid, sphere: &SphereGrid) -> Result<Decomposition> {
    let (up, down) = isotopic_split(f)?;
    let c = |z: Complex64| [z.re, z.im];
    let mut out = Decomposition {
        direct: [[0.0; 2]; 3],
        upper_half: [[0.0; 2]; 3],
        lower_half: [[0.0; 2]; 3],
        residual: 0.0,
        magnitude: 0.0,
    };
    for (k, p) in [Probe::X, Probe::Y, Probe::Z].into_iter().enumerate() {
        let d = matrix_element(f, p, f, spin, adjoint, radial, sphere)?;
        let u = matrix_element(&up, p, &up, spin, adjoint, radial, sphere)?;
        let l = matrix_element(&down, p, &down, spin, adjoint, radial, sphere)?;
        out.direct[k] = c(d);
        out.upper_half[k] = c(u);
        out.lower_half[k] = c(l);
        out.residual = out.residual.max((d - u - l).norm());
        out.magnitude = out.magnitude.max(d.norm());
    }
    Ok(out)
}

/// `1 - delta^2 (-1)^(2j)`, the factor multiplying the doublet position
/// expectation value; exact.
pub fn doublet_position_factor(delta: i64, j: HalfInt) -> i64 {
    let s = if j.0 % 2 == 0 { 1 } else { -1 };
    1 - delta * delta * s
}

/// Normalized eigenstate of the discrete operator of `(spin, background)` in
/// branch `delta`, with seeded radial profiles.
#[allow(clippy::too_many_arguments)]
pub fn eigenstate(
    spin: Spin,
    background: &Background,
    j: HalfInt,
    m: HalfInt,
    delta: i64,
    seed: u64,
    radial: &RadialGrid,
    sphere: &SphereGrid,
) -> Result<Field> {
    let cfg = ModelConfig {
        spin,
        background: background.clone(),
        mass: 1.0,
        energy: 0.5,
        j,
        m,
        grid: Default::default(),
        seed,
    };
    cfg.validate()?;
    let a = cfg.ansatz()?;
    let n = build_discrete_operator(spin, background);
    let branch = eigen_constraints(&n, &a)?
        .into_iter()
        .find(|c| c.delta == delta)
        .ok_or_else(|| Error::Certification(format!("no eigenstates with delta = {delta} at j = {j}")))?;
    let p = constrained_profiles(&branch, &seeded_profiles(&a.live_symbols(), seed));
    normalized(&field_with(&a, &p), radial, sphere)
}

/// `delta (-1)^(j+1)`, read as `delta i^(2j+2)` at half-integer `j`.
pub fn reflection_eigenvalue(delta: i64, j: HalfInt) -> Complex64 {
    Complex64::new(delta as f64, 0.0) * Complex64::new(0.0, 1.0).powi(j.0 + 2)
}

/// Reflection matrix applied after `P`: `Pi` or `sigma_1 (x) Pi` on doublets.
pub fn reflection_matrix(spin: Spin, doublet: bool) -> FloatMatrix {
    let pi = build_rep(spin).spherical_reflection();
    if doublet {
        pauli_matrix(1).kron(&pi).to_float()
    } else {
        pi.to_float()
    }
}
