//! Volume integrals of bilinear forms between fields.
//!
//! Fields are sums of `radial(r) * D(theta, phi)` terms, so every integral
//! splits into a radial trapezoid sum and a sphere quadrature per term pair.

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::FloatMatrix;
use crate::model::Field;
use crate::wigner::{big_d, SphereGrid};
use crate::{Error, Result};

/// Trapezoid nodes `r_k = k h`, `k = 1..=n`; integrands are assumed to vanish at `r = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct RadialGrid {
    pub r: Vec<f64>,
    pub w: Vec<f64>,
}

impl RadialGrid {
    pub fn trapezoid(r_max: f64, n: usize) -> Result<Self> {
        if n < 2 || r_max <= 0.0 || !r_max.is_finite() {
            return Err(Error::Config("radial grid needs n >= 2 and r_max > 0".into()));
        }
        let h = r_max / n as f64;
        let r: Vec<f64> = (1..=n).map(|k| k as f64 * h).collect();
        let mut w = vec![h; n];
        w[n - 1] = h / 2.0;
        Ok(RadialGrid { r, w })
    }

    pub fn r_max(&self) -> f64 {
        *self.r.last().expect("nonempty")
    }

    pub fn refined(&self) -> Self {
        RadialGrid::trapezoid(self.r_max(), 2 * self.r.len()).expect("valid grid")
    }
}

/// Which part of the sphere is integrated over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Region {
    Full,
    /// Nodes with `cos(theta) > 0`.
    Upper,
}

/// `G(r, theta, phi) = r^power * angular(theta, phi) * matrix`.
pub struct Observable<'a> {
    pub matrix: FloatMatrix,
    pub radial_power: i32,
    pub angular: &'a dyn Fn(f64, f64) -> Complex64,
}

impl<'a> Observable<'a> {
    pub fn matrix(matrix: FloatMatrix) -> Self {
        Observable {
            matrix,
            radial_power: 0,
            angular: &|_, _| Complex64::new(1.0, 0.0),
        }
    }
}

/// `int bra(x)^dagger G(x) ket(x) r^2 dr dOmega`.
pub fn bilinear(bra: &Field, g: &Observable<'_>, ket: &Field, radial: &RadialGrid, sphere: &SphereGrid, region: Region) -> Result<Complex64> {
    if bra.n != ket.n || g.matrix.rows() != bra.n || g.matrix.cols() != ket.n {
        return Err(Error::Shape(format!("bilinear form of sizes {}x{}x{}", bra.n, g.matrix.rows(), ket.n)));
    }
    let nodes: Vec<usize> = (0..sphere.len()).filter(|&i| region == Region::Full || sphere.is_upper(i)).collect();
    let ang = |f: &Field| -> Vec<Vec<Complex64>> {
        f.terms
            .iter()
            .map(|t| {
                nodes
                    .iter()
                    .map(|&i| {
                        let (th, ph, _) = sphere.node(i);
                        big_d(&t.label, ph, th)
                    })
                    .collect()
            })
            .collect()
    };
    let rad = |f: &Field| -> Vec<Vec<Complex64>> { f.terms.iter().map(|t| radial.r.iter().map(|&r| t.radial.value(r)).collect()).collect() };
    let (ab, ak) = (ang(bra), ang(ket));
    let (rb, rk) = (rad(bra), rad(ket));
    let wang: Vec<Complex64> = nodes
        .iter()
        .map(|&i| {
            let (th, ph, w) = sphere.node(i);
            w * (g.angular)(th, ph)
        })
        .collect();
    let wrad: Vec<f64> = radial.r.iter().zip(&radial.w).map(|(r, w)| w * r.powi(2 + g.radial_power)).collect();
    let mut total = Complex64::new(0.0, 0.0);
    for (t, bt) in bra.terms.iter().enumerate() {
        for (u, kt) in ket.terms.iter().enumerate() {
            let m = g.matrix[(bt.comp, kt.comp)];
            if m.norm() == 0.0 {
                continue;
            }
            let a: Complex64 = (0..nodes.len()).map(|n| ab[t][n].conj() * wang[n] * ak[u][n]).sum();
            if a.norm() == 0.0 {
                continue;
            }
            let r: Complex64 = (0..wrad.len()).map(|k| rb[t][k].conj() * wrad[k] * rk[u][k]).sum();
            total += bt.coeff.conj() * m * kt.coeff * a * r;
        }
    }
    Ok(total)
}

/// Plain inner product `<bra|ket>`.
pub fn inner(bra: &Field, ket: &Field, radial: &RadialGrid, sphere: &SphereGrid) -> Result<Complex64> {
    bilinear(bra, &Observable::matrix(FloatMatrix::identity(bra.n)), ket, radial, sphere, Region::Full)
}
