//! Exact real numbers of the form `Σ cₖ·√k` with rational `cₖ` and squarefree `k`.
//!
//! Square roots of distinct squarefree integers are linearly independent over
//! the rationals, so the canonical map representation gives exact equality and
//! an exact zero test. The set is a ring (closed under `+`, `−`, `×`), and it
//! contains the square root of every rational whose numerator and denominator
//! are small enough to factor, which covers every fixture amplitude used here
//! (`√(1/3)`, `1/√2`, `cos(π/12)`, ...).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest radicand we are willing to factor by trial division.
const MAX_RADICAND: u64 = 1 << 48;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Surd {
    // squarefree radicand -> nonzero coefficient
    terms: BTreeMap<u64, BigRational>,
}

impl Surd {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        Self { terms }
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `coeff · √radicand` for an arbitrary (not necessarily squarefree) radicand.
    pub fn term(coeff: BigRational, radicand: u64) -> Self {
        if radicand == 0 || coeff.is_zero() {
            return Self::zero();
        }
        let (outside, core) = split_square(radicand);
        let mut terms = BTreeMap::new();
        terms.insert(core, coeff * BigRational::from_integer(BigInt::from(outside)));
        Self { terms }
    }

    /// Exact square root of a nonnegative rational, when its radicand is small
    /// enough to factor. Returns `None` for negative input or oversized radicands.
    pub fn sqrt(q: &BigRational) -> Option<Self> {
        if q.is_negative() {
            return None;
        }
        if q.is_zero() {
            return Some(Self::zero());
        }
        // √(n/d) = √(n·d) / d
        let n = q.numer().to_u64()?;
        let d = q.denom().to_u64()?;
        let nd = n.checked_mul(d)?;
        if nd > MAX_RADICAND {
            return None;
        }
        let coeff = BigRational::new(BigInt::one(), BigInt::from(d));
        Some(Self::term(coeff, nd))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a rational, if it has no irrational part.
    pub fn to_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(k, c)| c.to_f64().unwrap_or(f64::NAN) * (*k as f64).sqrt())
            .fold(0.0, |acc, x| acc + x)
    }

    /// Iterate `(radicand, coefficient)` pairs in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    fn add_term(&mut self, radicand: u64, coeff: BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(radicand).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&radicand);
        }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(k, c)| (*k, c * q)).collect(),
        }
    }
}

/// Split `n = outside² · core` with `core` squarefree.
fn split_square(mut n: u64) -> (u64, u64) {
    let mut outside = 1u64;
    let mut core = 1u64;
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut count = 0;
        while n.is_multiple_of(p) {
            n /= p;
            count += 1;
        }
        outside *= p.pow(count / 2);
        if count % 2 == 1 {
            core *= p;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // leftover n is 1 or a prime
    core *= n;
    (outside, core)
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, rhs: &Surd) -> Surd {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, rhs: &Surd) -> Surd {
        let mut out = Surd::zero();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                // √k1·√k2 = g·√((k1/g)(k2/g)), and the product of the cofactors
                // stays squarefree because both radicands are.
                let g = k1.gcd(k2);
                let radicand = (k1 / g) * (k2 / g);
                let coeff = c1 * c2 * BigRational::from_integer(BigInt::from(g));
                out.add_term(radicand, coeff);
            }
        }
        out
    }
}

impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd {
            terms: self.terms.iter().map(|(k, c)| (*k, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Surd {
            type Output = Surd;
            fn $m(self, rhs: Surd) -> Surd {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        -&self
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if *k == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}·√{k}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Surd({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn squarefree_split() {
        assert_eq!(split_square(12), (2, 3));
        assert_eq!(split_square(72), (6, 2));
        assert_eq!(split_square(1), (1, 1));
        assert_eq!(split_square(97), (1, 97));
    }

    #[test]
    fn sqrt_squares_back() {
        for (n, d) in [(1, 3), (2, 3), (1, 2), (5, 7), (9, 4), (1, 10)] {
            let r = Surd::sqrt(&q(n, d)).unwrap();
            assert_eq!((&r * &r).to_rational(), Some(q(n, d)));
        }
    }

    #[test]
    fn mixed_radicands_multiply() {
        // (√2 + √3)(√2 − √3) = −1
        let a = &Surd::term(q(1, 1), 2) + &Surd::term(q(1, 1), 3);
        let b = &Surd::term(q(1, 1), 2) - &Surd::term(q(1, 1), 3);
        assert_eq!((&a * &b).to_rational(), Some(q(-1, 1)));
        // √6·√10 = 2√15
        let c = &Surd::term(q(1, 1), 6) * &Surd::term(q(1, 1), 10);
        assert_eq!(c, Surd::term(q(2, 1), 15));
    }

    #[test]
    fn negative_has_no_root() {
        assert!(Surd::sqrt(&q(-1, 2)).is_none());
    }

    #[test]
    fn float_view() {
        let r = Surd::sqrt(&q(1, 3)).unwrap();
        assert!((r.to_f64() - (1.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }
}
