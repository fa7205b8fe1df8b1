//! Exact rational numbers over arbitrary-precision integers.
//!
//! Every value is kept in canonical form (positive denominator, coprime
//! numerator and denominator), so structural equality and hashing coincide
//! with numeric equality. The text form is `p/q`, or just `p` when `q = 1`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed rational {0:?}: expected `p` or `p/q` with decimal digits")]
    Malformed(String),
}

/// An exact fraction in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    /// Builds `num / den` in canonical form.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self, ArithError> {
        let den = den.into();
        if den.is_zero() {
            return Err(ArithError::ZeroDenominator);
        }
        Ok(Self::reduce(num.into(), den))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational {
            num: n.into(),
            den: BigInt::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    // den must be nonzero
    fn reduce(num: BigInt, den: BigInt) -> Self {
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num / &g, den / &g)
        };
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        if num.is_zero() {
            den = BigInt::one();
        }
        Rational { num, den }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    /// Lossy conversion for human-facing reports.
    pub fn to_f64(&self) -> f64 {
        match (self.num.to_f64(), self.den.to_f64()) {
            (Some(n), Some(d)) => n / d,
            _ => f64::NAN,
        }
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl From<BigInt> for Rational {
    fn from(n: BigInt) -> Self {
        Rational::from_integer(n)
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        // Fast path: both fractions fit in i64, so the cross products fit in i128.
        if let (Some(a), Some(b), Some(c), Some(d)) = (
            self.num.to_i64(),
            self.den.to_i64(),
            other.num.to_i64(),
            other.den.to_i64(),
        ) {
            return (i128::from(a) * i128::from(d)).cmp(&(i128::from(c) * i128::from(b)));
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn add(self, rhs: &'a Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::reduce(&self.num + &rhs.num, self.den.clone());
        }
        Rational::reduce(
            &self.num * &rhs.den + &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn sub(self, rhs: &'a Rational) -> Rational {
        if self.den == rhs.den {
            return Rational::reduce(&self.num - &rhs.num, self.den.clone());
        }
        Rational::reduce(
            &self.num * &rhs.den - &rhs.num * &self.den,
            &self.den * &rhs.den,
        )
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;

    fn mul(self, rhs: &'a Rational) -> Rational {
        Rational::reduce(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul);

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational {
            num: -self.num,
            den: self.den,
        }
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        -self.clone()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_int(s: &str, allow_sign: bool) -> Option<BigInt> {
    let digits = if allow_sign {
        s.strip_prefix('-').unwrap_or(s)
    } else {
        s
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

impl FromStr for Rational {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || ArithError::Malformed(s.to_string());
        match s.split_once('/') {
            None => parse_int(s, true)
                .map(Rational::from_integer)
                .ok_or_else(malformed),
            Some((n, d)) => {
                let n = parse_int(n, true).ok_or_else(malformed)?;
                let d = parse_int(d, false).ok_or_else(malformed)?;
                Rational::new(n, d)
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for building a rational from small integers. Panics on a zero
/// denominator.
pub fn q(num: i64, den: i64) -> Rational {
    Rational::new(num, den).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn make_reduces_and_normalizes_sign() {
        assert_eq!(q(2, 4).to_string(), "1/2");
        assert_eq!(q(3, -9).to_string(), "-1/3");
        assert_eq!(q(0, -5).to_string(), "0");
        assert_eq!(q(0, -5), Rational::zero());
        assert_eq!(Rational::new(1, 0), Err(ArithError::ZeroDenominator));
    }

    #[test]
    fn exact_identities() {
        assert_eq!(q(4, 1) + q(-1, 3) * q(1, 1), q(11, 3));
        assert_eq!(q(2, 3) + q(1, 3), Rational::one());
        assert_eq!(q(16, 3).cmp(&Rational::from(5)), Ordering::Greater);
    }

    #[test]
    fn phase_c_offset_for_x3() {
        // (x+1)(1-1/x) evaluated with plain integers: (x+1)(x-1)/x.
        let x = 3i64;
        let (n, d) = ((x + 1) * (x - 1), x);
        let expected = q(n, d);
        assert_eq!(expected.to_string(), "8/3");
        assert_eq!(Rational::from(4) * q(2, 3), expected);
        assert_eq!(
            Rational::from(x + 1) * (Rational::one() - q(1, x)),
            expected
        );
    }

    #[test]
    fn parse_and_render() {
        assert_eq!("16/3".parse::<Rational>().unwrap(), q(16, 3));
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from(7));
        assert_eq!("-6/4".parse::<Rational>().unwrap().to_string(), "-3/2");
        assert_eq!(q(-2, 4).to_string(), "-1/2");
        for bad in [
            "", "-", "1/", "/2", "1/-2", "+3", "1.5", " 1", "1/2/3", "a/b",
        ] {
            assert!(
                matches!(bad.parse::<Rational>(), Err(ArithError::Malformed(_))),
                "{bad:?}"
            );
        }
        assert_eq!("3/0".parse::<Rational>(), Err(ArithError::ZeroDenominator));
    }

    #[test]
    fn huge_values_compare_exactly() {
        let big: BigInt = BigInt::from(10).pow(40);
        let a = Rational::new(&big + 1, big.clone()).unwrap();
        let b = Rational::one();
        assert!(a > b);
        assert_eq!((&a - &b), Rational::new(1, big).unwrap());
    }

    #[test]
    fn serde_uses_text_form() {
        let s = serde_json::to_string(&q(-1, 2)).unwrap();
        assert_eq!(s, "\"-1/2\"");
        let back: Rational = serde_json::from_str(&s).unwrap();
        assert_eq!(back, q(-1, 2));
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (any::<i64>(), 1i64..=i64::MAX).prop_map(|(n, d)| q(n, d))
    }

    proptest! {
        #[test]
        fn field_laws(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
            prop_assert_eq!(&(&a + &b) - &b, a.clone());
            let diff = &a - &b;
            let sign = if diff.is_negative() {
                Ordering::Less
            } else if diff.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Equal
            };
            prop_assert_eq!(a.cmp(&b), sign);
        }

        #[test]
        fn canonical_form(n in any::<i64>(), d in any::<i64>().prop_filter("nonzero", |d| *d != 0)) {
            let r = q(n, d);
            prop_assert!(r.denom().is_positive());
            prop_assert!(r.numer().gcd(r.denom()).is_one());
            prop_assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
        }
    }
}
