//! Exact arbitrary-precision rational scalars.
//!
//! Every distance, ratio, and bound in this crate is a [`Rational`]; floating
//! point appears only in opt-in approximate rendering. Values are always kept
//! in lowest terms with a positive denominator.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

/// Exact rational number backed by arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num / den` in lowest terms.
    ///
    /// # Panics
    /// Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Self {
        Rational(BigRational::new(num, den))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    pub fn recip(&self) -> Self {
        Rational(self.0.recip())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// 10^-n, exactly.
    pub fn pow10_neg(n: u32) -> Self {
        Rational(BigRational::new(
            BigInt::one(),
            BigInt::from(10u32).pow(n),
        ))
    }

    /// Non-negative integer power.
    pub fn pow(&self, exp: u32) -> Self {
        Rational(self.0.pow(exp as i32))
    }

    /// Lossy conversion for approximate display only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

}

/// Error returned when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRationalError(pub String);

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts `p/q` or a bare integer `p`; `q` must be nonzero.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseRationalError(s.to_string());
        match s.split_once('/') {
            Some((num, den)) => {
                let num = BigInt::from_str(num.trim()).map_err(|_| err())?;
                let den = BigInt::from_str(den.trim()).map_err(|_| err())?;
                if den.is_zero() {
                    return Err(err());
                }
                Ok(Rational(BigRational::new(num, den)))
            }
            None => {
                let num = BigInt::from_str(s.trim()).map_err(|_| err())?;
                Ok(Rational(BigRational::from_integer(num)))
            }
        }
    }
}

impl fmt::Display for Rational {
    /// Renders `p/q` in lowest terms, or bare `p` when the value is integral.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((self.0).$method(rhs.0))
            }
        }
        impl $trait for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational((self.0).$method(&rhs.0))
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational((&self.0).$method(rhs.0))
            }
        }
    };
}

binop!(Add, add);
binop!(Sub, sub);
binop!(Mul, mul);
binop!(Div, div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |a, b| a + b)
    }
}

/// Total order helper usable in `max_by` chains.
pub fn cmp(a: &Rational, b: &Rational) -> Ordering {
    a.cmp(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_positive_denominator() {
        let r = Rational::new(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn integers_render_bare() {
        assert_eq!(Rational::new(14, 7).to_string(), "2");
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn parse_forms() {
        assert_eq!("2/3".parse::<Rational>().unwrap(), Rational::new(2, 3));
        assert_eq!("-5".parse::<Rational>().unwrap(), Rational::from_int(-5));
        assert_eq!("8/10".parse::<Rational>().unwrap(), Rational::new(4, 5));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
    }

    #[test]
    fn arithmetic_is_exact() {
        let a = Rational::new(1, 3);
        let b = Rational::new(1, 6);
        assert_eq!(&a + &b, Rational::new(1, 2));
        assert_eq!(&a - &b, b);
        assert_eq!(&a * &b, Rational::new(1, 18));
        assert_eq!(&a / &b, Rational::from_int(2));
    }

    #[test]
    fn pow10_neg() {
        assert_eq!(Rational::pow10_neg(0), Rational::one());
        assert_eq!(Rational::pow10_neg(3), Rational::new(1, 1000));
    }
}
