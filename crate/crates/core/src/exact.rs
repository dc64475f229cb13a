//! Exact arithmetic: big-integer binomial coefficients and reduced rationals.
//!
//! Every bound in this crate is an [`ExactRatio`]; nothing on the bound or
//! verification paths touches floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// `C(a, b)`, zero when `b < 0` or `b > a`.
pub fn binomial(a: u64, b: i64) -> BigUint {
    if b < 0 || b as u64 > a {
        return BigUint::zero();
    }
    let b = (b as u64).min(a - b as u64);
    let mut acc = BigUint::one();
    for i in 0..b {
        // acc is C(a, i) here, so the division is exact.
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Convenience wrapper for signed arguments; negative `a` yields zero.
pub fn binom(a: i64, b: i64) -> BigUint {
    if a < 0 {
        return BigUint::zero();
    }
    binomial(a as u64, b)
}

/// An arbitrary-precision rational kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Contract("zero denominator".into()));
        }
        Ok(ExactRatio(BigRational::new(numer.into(), denom)))
    }

    /// `numer / denom` for unsigned counts; panics on a zero denominator.
    pub fn of(numer: impl Into<BigUint>, denom: impl Into<BigUint>) -> Self {
        let d: BigUint = denom.into();
        assert!(!d.is_zero(), "ExactRatio::of with zero denominator");
        ExactRatio(BigRational::new(
            BigInt::from(numer.into()),
            BigInt::from(d),
        ))
    }

    pub fn integer(value: impl Into<BigInt>) -> Self {
        ExactRatio(BigRational::from_integer(value.into()))
    }

    pub fn zero() -> Self {
        ExactRatio(BigRational::zero())
    }

    pub fn one() -> Self {
        ExactRatio(BigRational::one())
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

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn abs(&self) -> Self {
        ExactRatio(self.0.abs())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::Contract("reciprocal of zero".into()));
        }
        Ok(ExactRatio(self.0.recip()))
    }

    /// Rebuilds the value from its parts; a no-op for values produced by this type.
    pub fn normalized(&self) -> Self {
        ExactRatio(BigRational::new(self.numer().clone(), self.denom().clone()))
    }

    /// `self * count`, the usual shape of "ratio times family size".
    pub fn scale(&self, count: usize) -> Self {
        ExactRatio(&self.0 * BigInt::from(count))
    }

    /// Compares `count` against `self * base` without building the product ratio.
    pub fn cmp_count(&self, count: usize, base: usize) -> Ordering {
        let lhs = BigInt::from(count) * self.denom();
        let rhs = self.numer() * BigInt::from(base);
        rhs.cmp(&lhs).reverse()
    }

    /// Approximate value for display only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_rational(&self) -> &BigRational {
        &self.0
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for ExactRatio {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            line: 0,
            message: format!("not a rational: `{s}`"),
        };
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                ExactRatio::new(n, d)
            }
            None => Ok(ExactRatio::integer(
                s.trim().parse::<BigInt>().map_err(|_| bad())?,
            )),
        }
    }
}

impl From<u64> for ExactRatio {
    fn from(v: u64) -> Self {
        ExactRatio::integer(v)
    }
}

impl From<BigUint> for ExactRatio {
    fn from(v: BigUint) -> Self {
        ExactRatio::integer(BigInt::from(v))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: ExactRatio) -> ExactRatio {
                ExactRatio($trait::$method(self.0, rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRatio> for &'a ExactRatio {
            type Output = ExactRatio;
            fn $method(self, rhs: &'a ExactRatio) -> ExactRatio {
                ExactRatio($trait::$method(&self.0, &rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Div for ExactRatio {
    type Output = ExactRatio;
    fn div(self, rhs: ExactRatio) -> ExactRatio {
        assert!(!rhs.is_zero(), "division by zero ExactRatio");
        ExactRatio(self.0 / rhs.0)
    }
}

impl<'a> Div<&'a ExactRatio> for &'a ExactRatio {
    type Output = ExactRatio;
    fn div(self, rhs: &'a ExactRatio) -> ExactRatio {
        assert!(!rhs.is_zero(), "division by zero ExactRatio");
        ExactRatio(&self.0 / &rhs.0)
    }
}

impl Neg for ExactRatio {
    type Output = ExactRatio;
    fn neg(self) -> ExactRatio {
        ExactRatio(-self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pascal(rows: usize) -> Vec<Vec<u128>> {
        let mut tri: Vec<Vec<u128>> = vec![vec![1]];
        for a in 1..=rows {
            let prev = &tri[a - 1];
            let mut row = vec![1u128; a + 1];
            for b in 1..a {
                row[b] = prev[b - 1] + prev[b];
            }
            tri.push(row);
        }
        tri
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial(5, 0), BigUint::from(1u32));
        assert_eq!(binomial(6, 4), BigUint::from(15u32));
        assert_eq!(binomial(4, 7), BigUint::zero());
        assert_eq!(binomial(4, -1), BigUint::zero());
        assert_eq!(binom(-3, 1), BigUint::zero());
    }

    #[test]
    fn binomial_matches_pascal_triangle() {
        let tri = pascal(60);
        for (a, row) in tri.iter().enumerate() {
            for (b, v) in row.iter().enumerate() {
                assert_eq!(binomial(a as u64, b as i64), BigUint::from(*v), "C({a},{b})");
            }
        }
    }

    #[test]
    fn pascal_rule_on_grid() {
        for a in 1..=40u64 {
            for b in -2..=(a as i64 + 2) {
                assert_eq!(
                    binomial(a, b),
                    binomial(a - 1, b - 1) + binomial(a - 1, b),
                    "Pascal at ({a},{b})"
                );
            }
        }
    }

    #[test]
    fn display_and_parse() {
        let r = ExactRatio::of(6u32, 4u32);
        assert_eq!(r.to_string(), "3/2");
        assert_eq!(ExactRatio::of(4u32, 2u32).to_string(), "2");
        assert_eq!("3/2".parse::<ExactRatio>().unwrap(), r);
        assert_eq!("-6/4".parse::<ExactRatio>().unwrap().to_string(), "-3/2");
        assert!("1/0".parse::<ExactRatio>().is_err());
        assert!("x".parse::<ExactRatio>().is_err());
    }

    #[test]
    fn cmp_count_agrees_with_product() {
        let r = ExactRatio::of(3u32, 2u32);
        assert_eq!(r.cmp_count(3, 2), Ordering::Equal);
        assert_eq!(r.cmp_count(4, 2), Ordering::Greater);
        assert_eq!(r.cmp_count(2, 2), Ordering::Less);
    }

    proptest! {
        #[test]
        fn reciprocal_product_is_one(p in 1i64..10_000, q in 1i64..10_000, neg in any::<bool>()) {
            let p = if neg { -p } else { p };
            let x = ExactRatio::new(p, q).unwrap();
            let y = ExactRatio::new(q, p).unwrap();
            prop_assert_eq!(&x * &y, ExactRatio::one());
            prop_assert_eq!(x.recip().unwrap(), y);
        }

        #[test]
        fn normalization_is_idempotent(p in -10_000i64..10_000, q in 1i64..10_000) {
            let x = ExactRatio::new(p, q).unwrap();
            let once = x.normalized();
            prop_assert_eq!(&once, &x);
            prop_assert_eq!(once.normalized(), once.clone());
            prop_assert!(once.denom().is_positive());
            prop_assert!(num_integer::Integer::gcd(once.numer(), once.denom()) == BigInt::one() || p == 0);
        }
    }
}
