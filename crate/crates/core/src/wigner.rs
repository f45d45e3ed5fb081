//! Wigner d- and D-functions, sigma-ladder coefficients and sphere quadrature.
//!
//! `D^j_{m' s}(phi, theta, 0) = exp(-i m' phi) d^j_{m' s}(theta)`. Quantum
//! numbers are stored doubled so half-integers stay exact.

use std::f64::consts::PI;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{rat, Surd};
use crate::error::{Error, Result};

/// A half-integer stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct HalfInt(pub i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);

    pub fn from_int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Parses `"3/2"`, `"-1/2"`, `"1"` or a decimal such as `"1.5"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("'{s}' is not an integer or half-integer"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i32 = n.trim().parse().map_err(|_| bad())?;
            match d.trim() {
                "2" => Ok(HalfInt(n)),
                "1" => Ok(HalfInt(2 * n)),
                _ => Err(bad()),
            }
        } else {
            let x: f64 = s.parse().map_err(|_| bad())?;
            HalfInt::from_f64(x).ok_or_else(bad)
        }
    }

    pub fn from_f64(x: f64) -> Option<Self> {
        let t = (2.0 * x).round();
        if (2.0 * x - t).abs() > 1e-9 {
            None
        } else {
            Some(HalfInt(t as i32))
        }
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 + o.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt(self.0 - o.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl Serialize for HalfInt {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HalfInt {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            S(String),
            F(f64),
        }
        match Repr::deserialize(d)? {
            Repr::S(s) => HalfInt::parse(&s).map_err(serde::de::Error::custom),
            Repr::F(x) => HalfInt::from_f64(x).ok_or_else(|| serde::de::Error::custom("not a half-integer")),
        }
    }
}

/// Angular label `(j, m', sigma)` of a D-function.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Label {
    pub j: HalfInt,
    pub mp: HalfInt,
    pub sigma: HalfInt,
}

impl Label {
    pub fn new(j: HalfInt, mp: HalfInt, sigma: HalfInt) -> Self {
        Label { j, mp, sigma }
    }

    /// True when the D-function is a nonzero function.
    pub fn is_valid(&self) -> bool {
        self.j.0 >= 0 && self.mp.0.abs() <= self.j.0 && self.sigma.0.abs() <= self.j.0 && (self.j.0 - self.mp.0) % 2 == 0 && (self.j.0 - self.sigma.0) % 2 == 0
    }

    pub fn with_sigma(&self, sigma: HalfInt) -> Self {
        Label { sigma, ..*self }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D^{}_{{{},{}}}", self.j, self.mp, self.sigma)
    }
}

fn factorial(n: i32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Small Wigner function `d^j_{m' s}(theta)`; zero for invalid labels.
pub fn d_small(j: HalfInt, mp: HalfInt, s: HalfInt, theta: f64) -> f64 {
    let lab = Label::new(j, mp, s);
    if !lab.is_valid() {
        return 0.0;
    }
    // integer offsets
    let jpm = (j.0 + mp.0) / 2;
    let jmm = (j.0 - mp.0) / 2;
    let jps = (j.0 + s.0) / 2;
    let jms = (j.0 - s.0) / 2;
    let pref = (factorial(jpm) * factorial(jmm) * factorial(jps) * factorial(jms)).sqrt();
    let (c, sn) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let kmin = 0.max((s.0 - mp.0) / 2);
    let kmax = jps.min(jmm);
    let mut sum = 0.0;
    for k in kmin..=kmax {
        let a = jps - k;
        let b = jmm - k;
        let e = k - (s.0 - mp.0) / 2;
        let sign = if (k - (s.0 - mp.0) / 2) % 2 == 0 { 1.0 } else { -1.0 };
        let cpow = j.0 - 2 * k + (s.0 - mp.0) / 2;
        let spow = 2 * k - (s.0 - mp.0) / 2;
        sum += sign / (factorial(a) * factorial(k) * factorial(b) * factorial(e)) * c.powi(cpow) * sn.powi(spow);
    }
    pref * sum
}

/// Raising/lowering coefficients `(a, b)` with
/// `a = sqrt((j+s)(j-s+1))` and `b = sqrt((j-s)(j+s+1))`.
pub fn sigma_ladder(j: HalfInt, s: HalfInt) -> Result<(Surd, Surd)> {
    let a4 = (j.0 + s.0) as i64 * (j.0 - s.0 + 2) as i64;
    let b4 = (j.0 - s.0) as i64 * (j.0 + s.0 + 2) as i64;
    if a4 < 0 || b4 < 0 {
        return Err(Error::Domain(format!("ladder coefficient undefined for j={j}, sigma={s}")));
    }
    Ok((Surd::sqrt_rational(&rat(a4, 4))?, Surd::sqrt_rational(&rat(b4, 4))?))
}

fn ladder_f64(j: HalfInt, s: HalfInt) -> (f64, f64) {
    let a4 = (j.0 + s.0) as f64 * (j.0 - s.0 + 2) as f64;
    let b4 = (j.0 - s.0) as f64 * (j.0 + s.0 + 2) as f64;
    (0.5 * a4.max(0.0).sqrt(), 0.5 * b4.max(0.0).sqrt())
}

/// `d/dtheta d^j_{m' s} = (a d_{s-1} - b d_{s+1}) / 2`.
pub fn d_small_dtheta(j: HalfInt, mp: HalfInt, s: HalfInt, theta: f64) -> f64 {
    if !Label::new(j, mp, s).is_valid() {
        return 0.0;
    }
    let (a, b) = ladder_f64(j, s);
    0.5 * (a * d_small(j, mp, s - HalfInt(2), theta) - b * d_small(j, mp, s + HalfInt(2), theta))
}

/// `D^j_{m' s}(phi, theta, 0)`.
pub fn big_d(l: &Label, phi: f64, theta: f64) -> Complex64 {
    let d = d_small(l.j, l.mp, l.sigma, theta);
    Complex64::from_polar(d, -l.mp.value() * phi)
}

/// Full rotation matrix `D^j_{m' m}(alpha, beta, gamma)` indexed from `m = j` down to `-j`.
pub fn rotation_matrix(j: HalfInt, alpha: f64, beta: f64, gamma: f64) -> crate::algebra::FloatMatrix {
    let n = (j.0 + 1) as usize;
    let mut m = crate::algebra::FloatMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            let mp = HalfInt(j.0 - 2 * a as i32);
            let mm = HalfInt(j.0 - 2 * b as i32);
            let d = d_small(j, mp, mm, beta);
            m[(a, b)] = Complex64::from_polar(d, -mp.value() * alpha - mm.value() * gamma);
        }
    }
    m
}

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            if n == 1 {
                p1 = z;
                p0 = 1.0;
            }
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
            let dz = p1 / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        x[i] = z;
        x[n - 1 - i] = -z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
        w[n - 1 - i] = w[i];
    }
    (x, w)
}

/// Product quadrature on the unit sphere: Gauss-Legendre in `cos(theta)`, uniform in `phi`.
#[derive(Clone, Debug, Serialize)]
pub struct SphereGrid {
    pub n_theta: usize,
    pub n_phi: usize,
    pub theta: Vec<f64>,
    pub theta_weight: Vec<f64>,
    pub phi: Vec<f64>,
}

impl SphereGrid {
    pub fn new(n_theta: usize, n_phi: usize) -> Result<Self> {
        if n_theta == 0 || n_phi == 0 || n_phi % 2 == 1 || n_theta % 2 == 1 {
            return Err(Error::Config("sphere grid needs even, positive n_theta and n_phi".into()));
        }
        let (x, w) = gauss_legendre(n_theta);
        Ok(SphereGrid {
            n_theta,
            n_phi,
            theta: x.iter().map(|c| c.acos()).collect(),
            theta_weight: w,
            phi: (0..n_phi).map(|k| 2.0 * PI * k as f64 / n_phi as f64).collect(),
        })
    }

    /// Default sizes for functions up to `j_max`.
    pub fn for_j(j_max: HalfInt) -> Self {
        let cj = (j_max.0 + 1) / 2;
        let nt = (2 * cj + 4) as usize;
        let np = (4 * cj + 4) as usize;
        SphereGrid::new(nt + nt % 2, np + np % 2).expect("valid sizes")
    }

    pub fn len(&self) -> usize {
        self.n_theta * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(theta, phi, weight)` of node `i` (theta-major).
    pub fn node(&self, i: usize) -> (f64, f64, f64) {
        let (a, b) = (i / self.n_phi, i % self.n_phi);
        (self.theta[a], self.phi[b], self.theta_weight[a] * 2.0 * PI / self.n_phi as f64)
    }

    /// Index of the antipodal node `(pi - theta, phi + pi)`.
    pub fn antipode(&self, i: usize) -> usize {
        let (a, b) = (i / self.n_phi, i % self.n_phi);
        (self.n_theta - 1 - a) * self.n_phi + (b + self.n_phi / 2) % self.n_phi
    }

    /// True for nodes in the upper hemisphere `cos(theta) > 0`.
    pub fn is_upper(&self, i: usize) -> bool {
        self.theta[i / self.n_phi] < PI / 2.0
    }

    pub fn refined(&self) -> Self {
        SphereGrid::new(2 * self.n_theta, 2 * self.n_phi).expect("valid sizes")
    }
}
