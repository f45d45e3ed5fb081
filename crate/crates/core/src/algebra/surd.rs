//! Exact numbers of the form `sum_k q_k * sqrt(k)` with rational `q_k` and
//! square-free `k`, plus their complex extension.
//!
//! The square roots of distinct square-free integers are linearly independent
//! over the rationals, so the sparse map below is a canonical form and
//! structural equality is exact equality.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn rat_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Splits `n > 0` into `(s, k)` with `n = s^2 k` and `k` square-free.
pub fn square_free_split(mut n: u64) -> (u64, u64) {
    let mut s = 1u64;
    let mut k = 1u64;
    let mut p = 2u64;
    while p * p <= n {
        let mut e = 0;
        while n.is_multiple_of(p) {
            n /= p;
            e += 1;
        }
        for _ in 0..e / 2 {
            s *= p;
        }
        if e % 2 == 1 {
            k *= p;
        }
        p += 1;
    }
    k *= n;
    (s, k)
}

fn largest_prime_factor(mut n: u64) -> u64 {
    let mut best = 1;
    let mut p = 2;
    while p * p <= n {
        while n.is_multiple_of(p) {
            best = p;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        best = best.max(n);
    }
    best
}

/// Real element of the multi-quadratic field generated by square roots of integers.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    terms: BTreeMap<u64, Rational>,
}

impl Surd {
    pub fn zero() -> Self {
        Surd::default()
    }

    pub fn one() -> Self {
        Surd::from_rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Surd::from_rational(rat(n, 1))
    }

    pub fn from_rational(q: Rational) -> Self {
        Surd::term(q, 1)
    }

    /// `q * sqrt(k)` for any `k >= 0`; `k` need not be square-free.
    pub fn term(q: Rational, k: u64) -> Self {
        let mut out = Surd::zero();
        if q.is_zero() || k == 0 {
            return out;
        }
        let (s, kf) = square_free_split(k);
        out.terms.insert(kf, q * BigInt::from(s));
        out
    }

    /// Principal square root of a non-negative rational.
    pub fn sqrt_rational(q: &Rational) -> Result<Self> {
        if q.is_negative() {
            return Err(Error::Domain(format!("square root of negative rational {q}")));
        }
        if q.is_zero() {
            return Ok(Surd::zero());
        }
        let num = q.numer().to_u64().ok_or_else(|| Error::Domain("radicand too large".into()))?;
        let den = q.denom().to_u64().ok_or_else(|| Error::Domain("radicand too large".into()))?;
        // sqrt(n/d) = sqrt(n d) / d
        Ok(Surd::term(rat(1, den as i64), num * den))
    }

    pub fn sqrt_int(n: i64) -> Result<Self> {
        Surd::sqrt_rational(&rat(n, 1))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.terms.iter().map(|(k, q)| (*k, q))
    }

    /// `Some(q)` when the value is rational.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms.iter().map(|(k, q)| rat_to_f64(q) * (*k as f64).sqrt()).sum()
    }

    fn add_term(&mut self, k: u64, q: Rational) {
        if q.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rational::zero);
        *e += q;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    fn scale_rational(&self, q: &Rational) -> Surd {
        if q.is_zero() {
            return Surd::zero();
        }
        Surd {
            terms: self.terms.iter().map(|(k, v)| (*k, v * q)).collect(),
        }
    }

    /// Galois conjugate flipping the sign of `sqrt(p)`.
    fn conjugate_at(&self, p: u64) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(k, v)| (*k, if k % p == 0 { -v.clone() } else { v.clone() })).collect(),
        }
    }

    pub fn inverse(&self) -> Result<Surd> {
        if self.is_zero() {
            return Err(Error::Domain("division by exact zero".into()));
        }
        let p = self.terms.keys().map(|k| largest_prime_factor(*k)).max().unwrap_or(1);
        if p == 1 {
            let q = self.terms.get(&1).cloned().unwrap_or_else(Rational::zero);
            return Ok(Surd::from_rational(q.recip()));
        }
        let c = self.conjugate_at(p);
        let n = self * &c;
        Ok(&c * &n.inverse()?)
    }

    pub fn signum(&self) -> i32 {
        let v = self.to_f64();
        if self.is_zero() {
            0
        } else if v > 0.0 {
            1
        } else {
            -1
        }
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, q) in &self.terms {
            let neg = q.is_negative();
            let a = q.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let one = a.is_one();
            match (*k, one) {
                (1, _) => write!(f, "{a}")?,
                (k, true) => write!(f, "sqrt({k})")?,
                (k, false) => write!(f, "{a}*sqrt({k})")?,
            }
        }
        Ok(())
    }
}

impl Add<&Surd> for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (k, q) in &rhs.terms {
            out.add_term(*k, q.clone());
        }
        out
    }
}

impl Sub<&Surd> for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        self + &(-rhs)
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(k, q)| (*k, -q.clone())).collect(),
        }
    }
}

impl Mul<&Surd> for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (a, qa) in &self.terms {
            for (b, qb) in &rhs.terms {
                let g = a.gcd(b);
                let k = (a / g) * (b / g);
                out.add_term(k, qa * qb * BigInt::from(g));
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($t:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr<$t> for $t {
            type Output = $t;
            fn $m(self, rhs: $t) -> $t { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Surd, Add add, Sub sub, Mul mul);

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

/// Exact complex number `re + i im` over [`Surd`].
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Exact {
    pub re: Surd,
    pub im: Surd,
}

impl Exact {
    pub fn new(re: Surd, im: Surd) -> Self {
        Exact { re, im }
    }

    pub fn zero() -> Self {
        Exact::default()
    }

    pub fn one() -> Self {
        Exact::real(Surd::one())
    }

    pub fn i() -> Self {
        Exact::new(Surd::zero(), Surd::one())
    }

    pub fn real(re: Surd) -> Self {
        Exact::new(re, Surd::zero())
    }

    pub fn imag(im: Surd) -> Self {
        Exact::new(Surd::zero(), im)
    }

    pub fn int(n: i64) -> Self {
        Exact::real(Surd::from_int(n))
    }

    pub fn ratio(p: i64, q: i64) -> Self {
        Exact::real(Surd::from_rational(rat(p, q)))
    }

    /// `i^n`.
    pub fn i_pow(n: i64) -> Self {
        match n.rem_euclid(4) {
            0 => Exact::int(1),
            1 => Exact::i(),
            2 => Exact::int(-1),
            _ => -Exact::i(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Exact::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Surd {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn inverse(&self) -> Result<Self> {
        let n = self.norm_sqr().inverse()?;
        let c = self.conj();
        Ok(Exact::new(&c.re * &n, &c.im * &n))
    }

    pub fn scale(&self, s: &Surd) -> Self {
        Exact::new(&self.re * s, &self.im * s)
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        Exact::new(self.re.scale_rational(q), self.im.scale_rational(q))
    }

    pub fn to_c64(&self) -> num_complex::Complex64 {
        num_complex::Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

impl serde::Serialize for Exact {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl fmt::Debug for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.re),
            (true, false) => {
                if self.im == Surd::one() {
                    write!(f, "i")
                } else if self.im == -Surd::one() {
                    write!(f, "-i")
                } else if self.im.terms.len() == 1 {
                    write!(f, "{}i", self.im)
                } else {
                    write!(f, "({})i", self.im)
                }
            }
            (false, false) => write!(f, "({}) + ({})i", self.re, self.im),
        }
    }
}

impl Add<&Exact> for &Exact {
    type Output = Exact;
    fn add(self, rhs: &Exact) -> Exact {
        Exact::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&Exact> for &Exact {
    type Output = Exact;
    fn sub(self, rhs: &Exact) -> Exact {
        Exact::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&Exact> for &Exact {
    type Output = Exact;
    fn mul(self, rhs: &Exact) -> Exact {
        Exact::new(&(&self.re * &rhs.re) - &(&self.im * &rhs.im), &(&self.re * &rhs.im) + &(&self.im * &rhs.re))
    }
}

impl Div<&Exact> for &Exact {
    type Output = Exact;
    /// Panics on division by zero; use [`Exact::inverse`] to handle it.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Exact) -> Exact {
        self * &rhs.inverse().expect("exact division by zero")
    }
}

impl Neg for &Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        Exact::new(-&self.re, -&self.im)
    }
}

forward_owned!(Exact, Add add, Sub sub, Mul mul, Div div);

impl Neg for Exact {
    type Output = Exact;
    fn neg(self) -> Exact {
        -&self
    }
}

impl AddAssign<&Exact> for Exact {
    fn add_assign(&mut self, rhs: &Exact) {
        *self = &*self + rhs;
    }
}

/// Best rational approximation of `x` with denominator at most `max_den`.
pub fn rational_approx(x: f64, max_den: i64) -> Option<(i64, i64)> {
    if !x.is_finite() {
        return None;
    }
    let (mut h0, mut h1) = (0i64, 1i64);
    let (mut k0, mut k1) = (1i64, 0i64);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        if a.abs() > 1e15 {
            break;
        }
        let a = a as i64;
        let h2 = a.checked_mul(h1)?.checked_add(h0)?;
        let k2 = a.checked_mul(k1)?.checked_add(k0)?;
        if k2 > max_den {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a as f64;
        if frac.abs() < 1e-15 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        None
    } else {
        Some((h1, k1))
    }
}

/// Snaps a real number to `sign * sqrt(p/q)` when such a value lies within `tol`.
///
/// The square is matched against rationals with denominator up to `max_den`.
pub fn snap_real(x: f64, tol: f64, max_den: i64) -> Option<Surd> {
    if x.abs() <= tol {
        return Some(Surd::zero());
    }
    let (p, q) = rational_approx(x * x, max_den)?;
    if p <= 0 {
        return None;
    }
    let s = Surd::sqrt_rational(&rat(p, q)).ok()?;
    let s = if x < 0.0 { -s } else { s };
    if (s.to_f64() - x).abs() <= tol {
        Some(s)
    } else {
        None
    }
}

pub fn snap_complex(z: num_complex::Complex64, tol: f64, max_den: i64) -> Option<Exact> {
    Some(Exact::new(snap_real(z.re, tol, max_den)?, snap_real(z.im, tol, max_den)?))
}
