//! Grid checks of the discrete operators: commutation with the wave operator,
//! self-conjugacy, the minimal-j image and the angular operator `K`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::constraints::ConstraintSet;
use super::operator::{k_matrix, DiscreteOperator};
use crate::model::{Ansatz, Field, LinComb, PowerExp, RadialFn, Symbol, WaveOperator};
use crate::quadrature::{inner, RadialGrid};
use crate::wigner::SphereGrid;
use crate::{Error, Result};

pub type Profiles = BTreeMap<Symbol, Arc<dyn RadialFn>>;

/// Seeded profiles `c r^a exp(-b r)` with small integer `a >= 1`.
pub fn seeded_profiles(symbols: &[Symbol], seed: u64) -> Profiles {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    symbols
        .iter()
        .map(|s| {
            let c = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let a = rng.gen_range(1..=3) as f64;
            let b = rng.gen_range(0.8..1.4);
            (*s, Arc::new(PowerExp { c, a, b }) as Arc<dyn RadialFn>)
        })
        .collect()
}

/// Field on `a` with the given profiles; missing symbols are zero.
pub fn field_with(a: &Ansatz, p: &Profiles) -> Field {
    Field::from_ansatz(a, &|s| p.get(&s).cloned())
}

/// Profiles obeying the relations of `c`: free symbols take `p`, the others
/// the prescribed combinations.
pub fn constrained_profiles(c: &ConstraintSet, p: &Profiles) -> Profiles {
    let mut out: Profiles = c.free.iter().filter_map(|s| p.get(s).map(|g| (*s, g.clone()))).collect();
    for r in &c.relations {
        let terms: Vec<(Complex64, Arc<dyn RadialFn>)> = r.combo.iter().filter_map(|(k, s)| p.get(s).map(|g| (k.to_c64(), g.clone()))).collect();
        if !terms.is_empty() {
            out.insert(r.symbol, Arc::new(LinComb(terms)));
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutatorReport {
    pub operator: String,
    /// `max |N H psi - H' N psi|` over the sampled points.
    pub residual: f64,
    /// `max |N H psi|`, for scale.
    pub scale: f64,
    pub points: usize,
}

/// Pointwise `N H psi` against `H' N psi`, where `H'` is the operator at the
/// flipped charge when `n` flips it.
pub fn commutator_check(n: &DiscreteOperator, h: &WaveOperator, psi: &Field, grid: &SphereGrid, radii: &[f64]) -> Result<CommutatorReport> {
    if n.n() != h.n() || psi.n != h.n() {
        return Err(Error::Shape(format!("operator sizes {} and {} with field of {}", n.n(), h.n(), psi.n)));
    }
    let target = n.target(h)?;
    let image = n.apply_field(psi);
    let mut residual: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for &r in radii {
        for i in 0..grid.len() {
            let (th, ph, _) = grid.node(i);
            // phi + pi is not wrapped: half-integer m' makes D change sign over 2 pi
            let lhs = n.apply_values(&h.apply(psi, r, PI - th, ph + PI, crate::model::DerivMode::Analytic));
            let rhs = target.apply(&image, r, th, ph, crate::model::DerivMode::Analytic);
            for (x, y) in lhs.iter().zip(&rhs) {
                residual = residual.max((x - y).norm());
                scale = scale.max(x.norm());
            }
        }
    }
    Ok(CommutatorReport {
        operator: n.to_string(),
        residual,
        scale,
        points: radii.len() * grid.len(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SelfConjugacy {
    pub operator: String,
    pub lhs: [f64; 2],
    pub rhs: [f64; 2],
    pub asymmetry: f64,
    /// Both inner products are below the floor; the ratio means nothing.
    pub degenerate: bool,
}

pub const ASYMMETRY_FLOOR: f64 = 1e-14;

/// Phase that makes the reflection an involution on `f`: the label transport
/// squares to `(-1)^(2j)`, so half-integer `j` takes a factor `i`.
pub fn involution_phase(f: &Field) -> Complex64 {
    if f.terms.iter().all(|t| t.label.j.is_integer()) {
        Complex64::new(1.0, 0.0)
    } else {
        Complex64::new(0.0, 1.0)
    }
}

/// `<psi|N phi>` against `<N psi|phi>`, with `N` scaled by [`involution_phase`].
///
/// `psi` and `phi` are pairs `(state, partner)`; the partner is the state that
/// the charge flip sends it to and is ignored when `n` has no flip.
pub fn self_conjugacy_probe(
    n: &DiscreteOperator,
    psi: (&Field, &Field),
    phi: (&Field, &Field),
    radial: &RadialGrid,
    sphere: &SphereGrid,
) -> Result<SelfConjugacy> {
    let (psi_p, phi_p) = if n.charge_flip { (psi.1, phi.1) } else { (psi.0, phi.0) };
    for f in [psi.0, psi_p, phi.0, phi_p] {
        if f.n != n.n() {
            return Err(Error::Shape(format!("operator of size {} with field of {}", n.n(), f.n)));
        }
    }
    let lhs = involution_phase(phi_p) * inner(psi.0, &n.apply_field(phi_p), radial, sphere)?;
    let rhs = involution_phase(psi_p).conj() * inner(&n.apply_field(psi_p), phi.0, radial, sphere)?;
    let big = lhs.norm().max(rhs.norm());
    Ok(SelfConjugacy {
        operator: n.to_string(),
        lhs: [lhs.re, lhs.im],
        rhs: [rhs.re, rhs.im],
        asymmetry: (lhs - rhs).norm() / big.max(ASYMMETRY_FLOOR),
        degenerate: big < 1e3 * ASYMMETRY_FLOOR,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ImageVerdict {
    Inside,
    Outside,
}

#[derive(Clone, Debug, Serialize)]
pub struct MinimalJImage {
    pub verdict: ImageVerdict,
    /// Components (1-based) carried by the ansatz.
    pub ansatz_components: Vec<usize>,
    /// Components (1-based) carried by the image.
    pub image_components: Vec<usize>,
    /// The image lies in the component pattern of the flipped-charge family.
    pub matches_flipped_family: bool,
}

/// Support of `N psi` compared with the component pattern of the ansatz.
pub fn minimal_j_image_check(n: &DiscreteOperator, a: &Ansatz, flipped: Option<&Ansatz>) -> Result<MinimalJImage> {
    if n.n() != a.n {
        return Err(Error::Shape("operator and ansatz sizes differ".into()));
    }
    let own: Vec<usize> = a.slots.iter().map(|s| s.comp + 1).collect();
    let mut img: Vec<usize> = vec![];
    for s in &a.slots {
        for k in 0..n.n() {
            if !n.matrix[(k, s.comp)].is_zero() && !img.contains(&(k + 1)) {
                img.push(k + 1);
            }
        }
    }
    img.sort();
    let inside = img.iter().all(|k| own.contains(k));
    let matches_flipped_family = flipped.is_some_and(|b| {
        let other: Vec<usize> = b.slots.iter().map(|s| s.comp + 1).collect();
        img.iter().all(|k| other.contains(k))
    });
    Ok(MinimalJImage {
        verdict: if inside { ImageVerdict::Inside } else { ImageVerdict::Outside },
        ansatz_components: own,
        image_components: img,
        matches_flipped_family,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct KReport {
    /// Best-fit eigenvalue `<psi, K psi> / <psi, psi>` over the sampled nodes.
    pub eigenvalue: [f64; 2],
    /// `max |K psi - kappa psi|`.
    pub residual: f64,
    /// `max |K psi|`.
    pub norm: f64,
}

/// Applies `K = -gamma^0 gamma^3 Sigma` to a spin-1/2 Abelian field at radius `r`.
pub fn k_check(h: &WaveOperator, psi: &Field, grid: &SphereGrid, r: f64) -> Result<KReport> {
    if h.n() != 4 || h.background.is_doublet() {
        return Err(Error::Shape("K is defined for the Abelian spin-1/2 operator".into()));
    }
    let km = k_matrix().to_float();
    let mut num = Complex64::new(0.0, 0.0);
    let mut den = 0.0;
    let mut samples = vec![];
    for i in 0..grid.len() {
        let (th, ph, _) = grid.node(i);
        let v = psi.eval(r, th, ph);
        let kv = km.apply(&h.angular(psi, r, th, ph));
        for (a, b) in v.iter().zip(&kv) {
            num += a.conj() * b;
            den += a.norm_sqr();
        }
        samples.push((v, kv));
    }
    let kappa = if den > 0.0 { num / den } else { Complex64::new(0.0, 0.0) };
    let mut residual: f64 = 0.0;
    let mut norm: f64 = 0.0;
    for (v, kv) in &samples {
        for (a, b) in v.iter().zip(kv) {
            residual = residual.max((b - kappa * a).norm());
            norm = norm.max(b.norm());
        }
    }
    Ok(KReport {
        eigenvalue: [kappa.re, kappa.im],
        residual,
        norm,
    })
}
