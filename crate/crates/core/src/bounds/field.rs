use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact element `a + b√6` of `Q(√6)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt6 {
    a: BigRational,
    b: BigRational,
}

pub(crate) fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl QSqrt6 {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn rational(a: BigRational) -> Self {
        Self { a, b: BigRational::zero() }
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::rational(rational(n, d))
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_ratio(n, 1)
    }

    pub fn sqrt6() -> Self {
        Self {
            a: BigRational::zero(),
            b: BigRational::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// Rational part.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of `√6`.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sa == sb || sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a² with 6b²
        let a2 = &self.a * &self.a;
        let b2 = &self.b * &self.b * BigRational::from_integer(BigInt::from(6));
        match a2.cmp(&b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        let norm = &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(BigInt::from(6));
        if norm.is_zero() {
            return None;
        }
        Some(Self {
            a: &self.a / &norm,
            b: -&self.b / &norm,
        })
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        a + b * 6f64.sqrt()
    }
}

impl Add for &QSqrt6 {
    type Output = QSqrt6;
    fn add(self, o: &QSqrt6) -> QSqrt6 {
        QSqrt6 {
            a: &self.a + &o.a,
            b: &self.b + &o.b,
        }
    }
}

impl Sub for &QSqrt6 {
    type Output = QSqrt6;
    fn sub(self, o: &QSqrt6) -> QSqrt6 {
        QSqrt6 {
            a: &self.a - &o.a,
            b: &self.b - &o.b,
        }
    }
}

impl Mul for &QSqrt6 {
    type Output = QSqrt6;
    fn mul(self, o: &QSqrt6) -> QSqrt6 {
        let six = BigRational::from_integer(BigInt::from(6));
        QSqrt6 {
            a: &self.a * &o.a + &self.b * &o.b * six,
            b: &self.a * &o.b + &self.b * &o.a,
        }
    }
}

impl Neg for &QSqrt6 {
    type Output = QSqrt6;
    fn neg(self) -> QSqrt6 {
        QSqrt6 {
            a: -&self.a,
            b: -&self.b,
        }
    }
}

impl fmt::Display for QSqrt6 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt6", self.b),
            (false, false) => {
                if self.b.is_negative() {
                    write!(f, "{} - {}*sqrt6", self.a, -&self.b)
                } else {
                    write!(f, "{} + {}*sqrt6", self.a, self.b)
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let s = QSqrt6::sqrt6();
        assert_eq!(&s * &s, QSqrt6::from_int(6));
        let x = QSqrt6::new(rational(3, 2), rational(-1, 3));
        let inv = x.inverse().unwrap();
        assert_eq!(&x * &inv, QSqrt6::one());
        assert!(QSqrt6::zero().inverse().is_none());
    }

    #[test]
    fn exact_sign() {
        // 5 − 2√6 ≈ 0.101 > 0, 4 − 2√6 < 0, 2√6 − 5 < 0
        assert_eq!(QSqrt6::new(rational(5, 1), rational(-2, 1)).signum(), Ordering::Greater);
        assert_eq!(QSqrt6::new(rational(4, 1), rational(-2, 1)).signum(), Ordering::Less);
        assert_eq!(QSqrt6::new(rational(-5, 1), rational(2, 1)).signum(), Ordering::Less);
        assert_eq!(QSqrt6::zero().signum(), Ordering::Equal);
    }

    #[test]
    fn display() {
        assert_eq!(QSqrt6::new(rational(1, 2), rational(-3, 1)).to_string(), "1/2 - 3*sqrt6");
        assert_eq!(QSqrt6::sqrt6().to_string(), "1*sqrt6");
    }
}
