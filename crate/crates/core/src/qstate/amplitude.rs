use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::surd::Surd;

/// Entrywise tolerance used whenever a float-backed value is compared.
pub const FLOAT_TOL: f64 = 1e-12;

/// A complex number in the exact ring `Q[√k…, i]`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Debug)]
pub struct ExactComplex {
    pub re: Surd,
    pub im: Surd,
}

impl ExactComplex {
    pub fn new(re: Surd, im: Surd) -> Self {
        Self { re, im }
    }

    pub fn conj(&self) -> Self {
        Self {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> Surd {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }
}

/// A probability amplitude, backed either exactly or by `f64`.
///
/// Arithmetic between two exact values stays exact; anything touching a
/// float-backed value is promoted to float.
#[derive(Clone, Debug)]
pub enum Amplitude {
    Exact(ExactComplex),
    Float(Complex64),
}

/// A real number with the same dual backing as [`Amplitude`].
#[derive(Clone, Debug)]
pub enum Real {
    Exact(Surd),
    Float(f64),
}

impl Amplitude {
    pub fn zero() -> Self {
        Amplitude::Exact(ExactComplex::default())
    }

    pub fn one() -> Self {
        Amplitude::Exact(ExactComplex::new(Surd::one(), Surd::zero()))
    }

    pub fn i() -> Self {
        Amplitude::Exact(ExactComplex::new(Surd::zero(), Surd::one()))
    }

    pub fn real(re: Surd) -> Self {
        Amplitude::Exact(ExactComplex::new(re, Surd::zero()))
    }

    pub fn rational(q: BigRational) -> Self {
        Self::real(Surd::from_rational(q))
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        Amplitude::Float(Complex64::new(re, im))
    }

    /// `√q` exactly when the radicand can be factored, otherwise as a float.
    pub fn sqrt_rational(q: &BigRational) -> Self {
        match Surd::sqrt(q) {
            Some(s) => Self::real(s),
            None => {
                use num_traits::ToPrimitive;
                Self::from_f64(q.to_f64().unwrap_or(f64::NAN).sqrt(), 0.0)
            }
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Amplitude::Exact(_))
    }

    pub fn to_complex64(&self) -> Complex64 {
        match self {
            Amplitude::Exact(e) => e.to_complex64(),
            Amplitude::Float(c) => *c,
        }
    }

    pub fn conj(&self) -> Self {
        match self {
            Amplitude::Exact(e) => Amplitude::Exact(e.conj()),
            Amplitude::Float(c) => Amplitude::Float(c.conj()),
        }
    }

    pub fn norm_sqr(&self) -> Real {
        match self {
            Amplitude::Exact(e) => Real::Exact(e.norm_sqr()),
            Amplitude::Float(c) => Real::Float(c.norm_sqr()),
        }
    }

    /// Exact zero for exact backing, `|z| ≤ FLOAT_TOL` for float.
    pub fn is_zero(&self) -> bool {
        match self {
            Amplitude::Exact(e) => e.re.is_zero() && e.im.is_zero(),
            Amplitude::Float(c) => c.norm() <= FLOAT_TOL,
        }
    }

    /// Equality in the backing's own sense (exact or within `FLOAT_TOL`).
    pub fn approx_eq(&self, other: &Amplitude) -> bool {
        (self - other).is_zero()
    }

    fn promote(&self, other: &Amplitude) -> Option<(ExactComplex, ExactComplex)> {
        match (self, other) {
            (Amplitude::Exact(a), Amplitude::Exact(b)) => Some((a.clone(), b.clone())),
            _ => None,
        }
    }
}

impl Real {
    pub fn zero() -> Self {
        Real::Exact(Surd::zero())
    }

    /// Never returns `-0.0`.
    pub fn to_f64(&self) -> f64 {
        let x = match self {
            Real::Exact(s) => s.to_f64(),
            Real::Float(x) => *x,
        };
        x + 0.0
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        match self {
            Real::Exact(s) => s.to_rational(),
            Real::Float(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Real::Exact(s) => s.is_zero(),
            Real::Float(x) => x.abs() <= FLOAT_TOL,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Real::Exact(s) => s.to_rational().is_some_and(|q| q.is_one()),
            Real::Float(x) => (x - 1.0).abs() <= FLOAT_TOL,
        }
    }

    pub fn approx_eq(&self, other: &Real) -> bool {
        (self - other).is_zero()
    }
}

impl Add for &Amplitude {
    type Output = Amplitude;
    fn add(self, rhs: &Amplitude) -> Amplitude {
        match self.promote(rhs) {
            Some((a, b)) => Amplitude::Exact(ExactComplex::new(&a.re + &b.re, &a.im + &b.im)),
            None => Amplitude::Float(self.to_complex64() + rhs.to_complex64()),
        }
    }
}

impl Sub for &Amplitude {
    type Output = Amplitude;
    fn sub(self, rhs: &Amplitude) -> Amplitude {
        match self.promote(rhs) {
            Some((a, b)) => Amplitude::Exact(ExactComplex::new(&a.re - &b.re, &a.im - &b.im)),
            None => Amplitude::Float(self.to_complex64() - rhs.to_complex64()),
        }
    }
}

impl Mul for &Amplitude {
    type Output = Amplitude;
    fn mul(self, rhs: &Amplitude) -> Amplitude {
        match self.promote(rhs) {
            Some((a, b)) => {
                let re = &(&a.re * &b.re) - &(&a.im * &b.im);
                let im = &(&a.re * &b.im) + &(&a.im * &b.re);
                Amplitude::Exact(ExactComplex::new(re, im))
            }
            None => Amplitude::Float(self.to_complex64() * rhs.to_complex64()),
        }
    }
}

impl Neg for &Amplitude {
    type Output = Amplitude;
    fn neg(self) -> Amplitude {
        match self {
            Amplitude::Exact(e) => Amplitude::Exact(ExactComplex::new(-&e.re, -&e.im)),
            Amplitude::Float(c) => Amplitude::Float(-c),
        }
    }
}

impl Add for Amplitude {
    type Output = Amplitude;
    fn add(self, rhs: Amplitude) -> Amplitude {
        &self + &rhs
    }
}

impl Sub for Amplitude {
    type Output = Amplitude;
    fn sub(self, rhs: Amplitude) -> Amplitude {
        &self - &rhs
    }
}

impl Mul for Amplitude {
    type Output = Amplitude;
    fn mul(self, rhs: Amplitude) -> Amplitude {
        &self * &rhs
    }
}

impl Neg for Amplitude {
    type Output = Amplitude;
    fn neg(self) -> Amplitude {
        -&self
    }
}

impl Add for &Real {
    type Output = Real;
    fn add(self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a + b),
            _ => Real::Float(self.to_f64() + rhs.to_f64()),
        }
    }
}

impl Sub for &Real {
    type Output = Real;
    fn sub(self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a - b),
            _ => Real::Float(self.to_f64() - rhs.to_f64()),
        }
    }
}

impl Mul for &Real {
    type Output = Real;
    fn mul(self, rhs: &Real) -> Real {
        match (self, rhs) {
            (Real::Exact(a), Real::Exact(b)) => Real::Exact(a * b),
            _ => Real::Float(self.to_f64() * rhs.to_f64()),
        }
    }
}

impl fmt::Display for Amplitude {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Amplitude::Exact(e) if e.im.is_zero() => write!(f, "{}", e.re),
            Amplitude::Exact(e) => write!(f, "({}) + i({})", e.re, e.im),
            Amplitude::Float(c) => write!(f, "{c}"),
        }
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(s) => write!(f, "{s}"),
            Real::Float(x) => write!(f, "{x}"),
        }
    }
}

impl Zero for Amplitude {
    fn zero() -> Self {
        Amplitude::zero()
    }
    fn is_zero(&self) -> bool {
        Amplitude::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn exact_times_exact_stays_exact() {
        let a = Amplitude::sqrt_rational(&q(1, 2));
        let p = &a * &a;
        assert!(p.is_exact());
        assert_eq!(p.norm_sqr().to_rational(), Some(q(1, 4)));
    }

    #[test]
    fn float_promotes() {
        let a = Amplitude::sqrt_rational(&q(1, 2));
        let b = Amplitude::from_f64(0.5, 0.0);
        assert!(!(&a * &b).is_exact());
    }

    #[test]
    fn conj_and_modulus() {
        let z = &Amplitude::sqrt_rational(&q(1, 2)) + &(&Amplitude::i() * &Amplitude::rational(q(1, 3)));
        let m = &z * &z.conj();
        match m {
            Amplitude::Exact(e) => {
                assert!(e.im.is_zero());
                assert_eq!(e.re.to_rational(), Some(q(11, 18)));
            }
            _ => panic!("expected exact"),
        }
    }
}
