use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::amplitude::{Amplitude, ExactComplex};
use super::surd::Surd;
use crate::error::{Error, Result};

/// A phase angle.
///
/// Rational multiples of π are kept symbolically; `e^{iχ}` is exact whenever
/// the multiple has a denominator dividing 12, and a float otherwise.
#[derive(Clone, Debug, PartialEq)]
pub enum Phase {
    /// `χ = r·π`.
    PiMultiple(BigRational),
    Radians(f64),
}

impl Phase {
    pub fn zero() -> Self {
        Phase::PiMultiple(BigRational::zero())
    }

    pub fn pi() -> Self {
        Phase::PiMultiple(BigRational::one())
    }

    pub fn pi_times(numer: i64, denom: i64) -> Self {
        Phase::PiMultiple(BigRational::new(numer.into(), denom.into()))
    }

    pub fn radians(&self) -> f64 {
        match self {
            Phase::PiMultiple(r) => r.to_f64().unwrap_or(f64::NAN) * std::f64::consts::PI,
            Phase::Radians(x) => *x,
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Phase::PiMultiple(r) => Phase::PiMultiple(-r.clone()),
            Phase::Radians(x) => Phase::Radians(-x),
        }
    }

    /// Index `k` with `χ = kπ/12 (mod 2π)`, when one exists.
    fn twelfths(&self) -> Option<i64> {
        let Phase::PiMultiple(r) = self else {
            return None;
        };
        let scaled = r * BigRational::from_integer(BigInt::from(12));
        if !scaled.is_integer() {
            return None;
        }
        let k = scaled.to_integer().mod_floor(&BigInt::from(24));
        k.to_i64()
    }

    /// Whether `e^{iχ}` is representable exactly.
    pub fn is_exact(&self) -> bool {
        self.twelfths().is_some()
    }

    /// `e^{iχ}`.
    pub fn unit(&self) -> Amplitude {
        match self.twelfths() {
            Some(k) => Amplitude::Exact(ExactComplex::new(cos_twelfths(k), cos_twelfths(6 - k))),
            None => {
                let x = self.radians();
                Amplitude::from_f64(x.cos(), x.sin())
            }
        }
    }
}

/// `cos(kπ/12)` exactly.
fn cos_twelfths(k: i64) -> Surd {
    let k = k.rem_euclid(24);
    let k = if k > 12 { 24 - k } else { k };
    if k > 6 {
        return -cos_twelfths(12 - k);
    }
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    match k {
        0 => Surd::one(),
        // (√6 + √2)/4
        1 => &Surd::term(q(1, 4), 6) + &Surd::term(q(1, 4), 2),
        2 => Surd::term(q(1, 2), 3),
        3 => Surd::term(q(1, 2), 2),
        4 => Surd::from_rational(q(1, 2)),
        5 => &Surd::term(q(1, 4), 6) - &Surd::term(q(1, 4), 2),
        6 => Surd::zero(),
        _ => unreachable!(),
    }
}

impl fmt::Display for Phase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phase::Radians(x) => write!(f, "{x}"),
            Phase::PiMultiple(r) if r.is_zero() => write!(f, "0"),
            Phase::PiMultiple(r) => {
                let n = r.numer();
                let d = r.denom();
                let sign = if n.is_negative() { "-" } else { "" };
                let n = n.abs();
                let head = if n.is_one() {
                    "pi".to_string()
                } else {
                    format!("{n}pi")
                };
                if d.is_one() {
                    write!(f, "{sign}{head}")
                } else {
                    write!(f, "{sign}{head}/{d}")
                }
            }
        }
    }
}

impl FromStr for Phase {
    type Err = Error;

    /// Accepts `0`, `pi`, `-pi/2`, `2pi/3`, `3*pi/4`, `π`, or plain radians (`1.25`).
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.trim().replace('π', "pi").replace(['*', ' '], "");
        let bad = || Error::Parse(format!("invalid phase `{s}`"));
        if let Some(pos) = t.find("pi") {
            let (head, tail) = t.split_at(pos);
            let tail = &tail[2..];
            let (sign, head) = match head.strip_prefix('-') {
                Some(h) => (-1, h),
                None => (1, head.strip_prefix('+').unwrap_or(head)),
            };
            let numer: i64 = if head.is_empty() {
                1
            } else {
                head.parse().map_err(|_| bad())?
            };
            let denom: i64 = match tail.strip_prefix('/') {
                Some(d) => d.parse().map_err(|_| bad())?,
                None if tail.is_empty() => 1,
                None => return Err(bad()),
            };
            if denom == 0 {
                return Err(bad());
            }
            return Ok(Phase::pi_times(sign * numer, denom));
        }
        if let Ok(n) = t.parse::<i64>() {
            if n == 0 {
                return Ok(Phase::zero());
            }
        }
        t.parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .map(Phase::Radians)
            .ok_or_else(bad)
    }
}
