//! Exact scalars: elements of the quadratic field Q(sqrt(3)).
//!
//! Every coefficient in the engine is a `Scalar`, stored as `a + b*sqrt(3)`
//! with `a`, `b` arbitrary-precision rationals in lowest terms. The single
//! extension by sqrt(3) is all the example catalog needs.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use crate::error::CoreError;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    /// rational part
    pub a: BigRational,
    /// coefficient of sqrt(3)
    pub b: BigRational,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar {
            a: BigRational::one(),
            b: BigRational::zero(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            a: BigRational::from_integer(BigInt::from(n)),
            b: BigRational::zero(),
        }
    }

    pub fn from_frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar {
            a: BigRational::new(BigInt::from(num), BigInt::from(den)),
            b: BigRational::zero(),
        }
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar {
            a,
            b: BigRational::zero(),
        }
    }

    /// `a + b*sqrt(3)` from two rationals.
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Scalar { a, b }
    }

    pub fn sqrt3() -> Self {
        Scalar {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Field norm a^2 - 3 b^2; zero iff the element is zero.
    fn field_norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(BigInt::from(3)) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Scalar, CoreError> {
        if self.is_zero() {
            return Err(CoreError::DivisionByZero);
        }
        let n = self.field_norm();
        Ok(Scalar {
            a: &self.a / &n,
            b: -&self.b / &n,
        })
    }

    /// Exact sign: -1, 0 or 1.
    pub fn sign(&self) -> i32 {
        let sa = rational_sign(&self.a);
        let sb = rational_sign(&self.b);
        match (sa, sb) {
            (0, 0) => 0,
            (s, 0) | (0, s) => s,
            (s, t) if s == t => s,
            // a and b have opposite signs: sign(a + b*sqrt3) = sign(a) * sign(a^2 - 3 b^2)
            (s, _) => s * rational_sign(&self.field_norm()),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * 3f64.sqrt()
    }

    /// Parse a rational like `-4/3` or `7`.
    pub fn parse_rational(s: &str) -> Result<Scalar, CoreError> {
        let s = s.trim();
        let bad = || CoreError::Parse(format!("invalid rational `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n: BigInt = num.parse().map_err(|_| bad())?;
        let d: BigInt = match den {
            Some(d) => d.parse().map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(bad());
        }
        Ok(Scalar::from_rational(BigRational::new(n, d)))
    }
}

fn rational_sign(r: &BigRational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        Scalar {
            a: &self.a + &rhs.a,
            b: &self.b + &rhs.b,
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        Scalar {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let three = BigRational::from_integer(BigInt::from(3));
        Scalar {
            a: &self.a * &rhs.a + &three * &self.b * &rhs.b,
            b: &self.a * &rhs.b + &self.b * &rhs.a,
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        let inv = rhs.inv().expect("division by zero scalar");
        self * &inv
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -self.a,
            b: -self.b,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sqrt_part = |b: &BigRational| {
            if b.is_one() {
                "sqrt3".to_string()
            } else if (-b).is_one() {
                "-sqrt3".to_string()
            } else {
                format!("{b}*sqrt3")
            }
        };
        if self.a.is_zero() {
            write!(f, "{}", sqrt_part(&self.b))
        } else if self.b.is_positive() {
            write!(f, "{}+{}", self.a, sqrt_part(&self.b))
        } else {
            write!(f, "{}{}", self.a, sqrt_part(&self.b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(a: i64, b: i64) -> Scalar {
        Scalar::new(
            BigRational::from_integer(BigInt::from(a)),
            BigRational::from_integer(BigInt::from(b)),
        )
    }

    #[test]
    fn arithmetic() {
        // (1 + sqrt3)(1 - sqrt3) = -2
        assert_eq!(&s(1, 1) * &s(1, -1), s(-2, 0));
        assert_eq!(&s(2, 3) + &s(-2, -3), Scalar::zero());
    }

    #[test]
    fn inverse() {
        let x = s(1, 2); // 1 + 2 sqrt3
        let y = x.inv().unwrap();
        assert!((&x * &y).is_one());
        assert!(Scalar::zero().inv().is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(s(0, 0).sign(), 0);
        assert_eq!(s(2, -1).sign(), 1); // 2 - sqrt3 > 0
        assert_eq!(s(-2, 1).sign(), -1); // sqrt3 - 2 < 0
        assert_eq!(s(-1, 1).sign(), 1); // sqrt3 - 1 > 0
        assert_eq!(s(1, -1).sign(), -1);
    }

    #[test]
    fn parse_and_print() {
        let x = Scalar::parse_rational("-4/3").unwrap();
        assert_eq!(x, Scalar::from_frac(-4, 3));
        assert_eq!(x.to_string(), "-4/3");
        assert_eq!(s(1, -2).to_string(), "1-2*sqrt3");
        assert!(Scalar::parse_rational("1/0").is_err());
    }
}
