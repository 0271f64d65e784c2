//! Exact rational coefficients.
//!
//! A [`Coefficient`] is an arbitrary-precision fraction kept in lowest terms
//! with a positive denominator. Every spectrum entry is one of these; floats
//! only appear through [`Coefficient::to_f64`].

use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::DtmError;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coefficient(BigRational);

impl Coefficient {
    pub fn zero() -> Self {
        Coefficient(BigRational::zero())
    }

    pub fn one() -> Self {
        Coefficient(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Coefficient(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den`, reduced. Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Coefficient(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, DtmError> {
        if den.is_zero() {
            return Err(DtmError::Parse("zero denominator".into()));
        }
        Ok(Coefficient(BigRational::new(num, den)))
    }

    /// `1 / n!`
    pub fn inv_factorial(n: usize) -> Self {
        Coefficient(BigRational::new(BigInt::one(), factorial(n).into()))
    }

    /// The exact binary value of a finite float.
    pub fn from_f64_exact(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(Coefficient)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn abs(&self) -> Self {
        Coefficient(self.0.abs())
    }

    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Coefficient(self.0.recip()))
        }
    }

    /// Integer power, negative exponents allowed for nonzero bases.
    pub fn pow(&self, exp: i32) -> Self {
        Coefficient(num_traits::Pow::pow(&self.0, exp))
    }

    /// Nearest `f64`. Exact for dyadic values that fit the format.
    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        if let Some(x) = self.0.to_f64() {
            if x.is_finite() {
                return x;
            }
        }
        // Very large numerator and denominator overflow the direct route; scale both.
        let shift = self.numer().bits().max(self.denom().bits()).saturating_sub(900);
        let n = (self.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (self.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }

    /// Best rational approximation of `x` with denominator at most `max_den`,
    /// accepted only when it lies within `tol` of `x`.
    pub fn snap(x: f64, max_den: u64, tol: f64) -> Option<Self> {
        if !x.is_finite() {
            return None;
        }
        let (num, den) = best_rational(x, max_den.max(1));
        let c = Coefficient::new(num, den);
        if (c.to_f64() - x).abs() <= tol {
            Some(c)
        } else {
            None
        }
    }
}

/// Stern–Brocot / continued-fraction search for the closest fraction with a
/// bounded denominator.
fn best_rational(x: f64, max_den: u64) -> (i64, i64) {
    let sign = if x < 0.0 { -1 } else { 1 };
    let y = x.abs();
    if y > (i64::MAX / 2) as f64 {
        return (sign * (y as i64), 1);
    }
    let (mut p0, mut q0, mut p1, mut q1): (i128, i128, i128, i128) = (0, 1, 1, 0);
    let mut frac = y;
    let max_den = max_den as i128;
    loop {
        let a = frac.floor();
        let ai = a as i128;
        let q2 = q0 + ai * q1;
        if q2 > max_den {
            // semiconvergent check against the last convergent
            let k = (max_den - q0) / q1;
            let (ps, qs) = (p0 + k * p1, q0 + k * q1);
            let err_s = (ps as f64 / qs as f64 - y).abs();
            let err_c = (p1 as f64 / q1 as f64 - y).abs();
            let (p, q) = if err_s < err_c { (ps, qs) } else { (p1, q1) };
            return (sign * p as i64, q as i64);
        }
        let p2 = p0 + ai * p1;
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let rem = frac - a;
        if rem < 1e-18 || (p1 as f64 / q1 as f64 - y).abs() == 0.0 {
            return (sign * p1 as i64, q1 as i64);
        }
        frac = 1.0 / rem;
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

/// `n! / m!` for `n >= m`.
pub fn falling_ratio(n: usize, m: usize) -> BigUint {
    debug_assert!(n >= m);
    ((m + 1) as u64..=n as u64).fold(BigUint::one(), |acc, k| acc * k)
}

impl From<i64> for Coefficient {
    fn from(n: i64) -> Self {
        Coefficient::from_integer(n)
    }
}

impl From<BigInt> for Coefficient {
    fn from(n: BigInt) -> Self {
        Coefficient(BigRational::from_integer(n))
    }
}

impl From<BigUint> for Coefficient {
    fn from(n: BigUint) -> Self {
        Coefficient(BigRational::from_integer(n.into()))
    }
}

impl From<BigRational> for Coefficient {
    fn from(r: BigRational) -> Self {
        Coefficient(r)
    }
}

impl fmt::Display for Coefficient {
    /// Always `p/q`, including integers (`3/1`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Coefficient {
    type Err = DtmError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || DtmError::Parse(format!("invalid fraction {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Coefficient::from_big(num, den).map_err(|_| bad())
    }
}

impl Serialize for Coefficient {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Coefficient {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign_method:ident) => {
        impl $tr for Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: Coefficient) -> Coefficient {
                Coefficient(self.0.$method(rhs.0))
            }
        }
        impl<'a> $tr<&'a Coefficient> for &'a Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: &'a Coefficient) -> Coefficient {
                Coefficient((&self.0).$method(&rhs.0))
            }
        }
        impl<'a> $tr<&'a Coefficient> for Coefficient {
            type Output = Coefficient;
            fn $method(self, rhs: &'a Coefficient) -> Coefficient {
                Coefficient(self.0.$method(&rhs.0))
            }
        }
        impl $assign_tr<&Coefficient> for Coefficient {
            fn $assign_method(&mut self, rhs: &Coefficient) {
                self.0.$assign_method(&rhs.0);
            }
        }
        impl $assign_tr for Coefficient {
            fn $assign_method(&mut self, rhs: Coefficient) {
                self.0.$assign_method(rhs.0);
            }
        }
    };
}

forward_binop!(Add, add, AddAssign, add_assign);
forward_binop!(Sub, sub, SubAssign, sub_assign);
forward_binop!(Mul, mul, MulAssign, mul_assign);

impl Div for &Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: &Coefficient) -> Coefficient {
        Coefficient(&self.0 / &rhs.0)
    }
}

impl Div for Coefficient {
    type Output = Coefficient;
    fn div(self, rhs: Coefficient) -> Coefficient {
        Coefficient(self.0 / rhs.0)
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient(-self.0)
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;
    fn neg(self) -> Coefficient {
        Coefficient(-&self.0)
    }
}

impl Sum for Coefficient {
    fn sum<I: Iterator<Item = Coefficient>>(iter: I) -> Self {
        iter.fold(Coefficient::zero(), |acc, c| acc + c)
    }
}

impl Product for Coefficient {
    fn product<I: Iterator<Item = Coefficient>>(iter: I) -> Self {
        iter.fold(Coefficient::one(), |acc, c| acc * c)
    }
}
