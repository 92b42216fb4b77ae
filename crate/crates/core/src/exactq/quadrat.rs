use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::Rational;

use super::SeriesError;

/// An element `a + b√2` of Q(√2).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct QuadRat {
    pub a: Rational,
    pub b: Rational,
}

impl QuadRat {
    pub fn new(a: impl Into<Rational>, b: impl Into<Rational>) -> Self {
        QuadRat {
            a: a.into(),
            b: b.into(),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(1, 0)
    }

    pub fn sqrt2() -> Self {
        Self::new(0, 1)
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadRat {
            a,
            b: Rational::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    /// `a - b√2`.
    pub fn conjugate(&self) -> Self {
        QuadRat {
            a: self.a.clone(),
            b: Rational::from(-&self.b),
        }
    }

    /// `a² - 2b²`, the field norm.
    pub fn norm(&self) -> Rational {
        let a2 = Rational::from(&self.a * &self.a);
        let b2 = Rational::from(&self.b * &self.b);
        a2 - b2 * 2u32
    }

    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let n = self.norm();
        if n == 0 {
            return Err(SeriesError::QuadDivisionByZero);
        }
        let c = self.conjugate();
        Ok(QuadRat {
            a: c.a / &n,
            b: c.b / &n,
        })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        Ok(self * &rhs.inverse()?)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QuadRat {
            a: Rational::from(&self.a * c),
            b: Rational::from(&self.b * c),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &QuadRat {
    type Output = QuadRat;
    fn add(self, rhs: &QuadRat) -> QuadRat {
        QuadRat {
            a: Rational::from(&self.a + &rhs.a),
            b: Rational::from(&self.b + &rhs.b),
        }
    }
}

impl Sub for &QuadRat {
    type Output = QuadRat;
    fn sub(self, rhs: &QuadRat) -> QuadRat {
        QuadRat {
            a: Rational::from(&self.a - &rhs.a),
            b: Rational::from(&self.b - &rhs.b),
        }
    }
}

impl Mul for &QuadRat {
    type Output = QuadRat;
    fn mul(self, rhs: &QuadRat) -> QuadRat {
        let aa = Rational::from(&self.a * &rhs.a);
        let bb = Rational::from(&self.b * &rhs.b);
        let ab = Rational::from(&self.a * &rhs.b);
        let ba = Rational::from(&self.b * &rhs.a);
        QuadRat {
            a: aa + bb * 2u32,
            b: ab + ba,
        }
    }
}

impl Neg for &QuadRat {
    type Output = QuadRat;
    fn neg(self) -> QuadRat {
        QuadRat {
            a: Rational::from(-&self.a),
            b: Rational::from(-&self.b),
        }
    }
}

impl fmt::Display for QuadRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a == 0, self.b == 0) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt(2)", self.b),
            (false, false) if self.b < 0 => {
                write!(f, "{} - {}*sqrt(2)", self.a, Rational::from(-&self.b))
            }
            (false, false) => write!(f, "{} + {}*sqrt(2)", self.a, self.b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t0_and_its_inverse() {
        let t0 = QuadRat::new(Rational::from((3, 4)), Rational::from((-1, 2)));
        let inv = t0.inverse().unwrap();
        assert_eq!(inv, QuadRat::new(12, 8));
        assert_eq!(&t0 * &inv, QuadRat::one());
    }

    #[test]
    fn norm_is_rational_product_with_conjugate() {
        let x = QuadRat::new(Rational::from((5, 3)), -7);
        let p = &x * &x.conjugate();
        assert!(p.is_rational());
        assert_eq!(p.a, x.norm());
    }

    #[test]
    fn sqrt2_squared() {
        let r = QuadRat::sqrt2();
        assert_eq!(&r * &r, QuadRat::new(2, 0));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(
            QuadRat::zero().inverse(),
            Err(SeriesError::QuadDivisionByZero)
        );
    }

    #[test]
    fn display_forms() {
        assert_eq!(QuadRat::new(0, -48).to_string(), "-48*sqrt(2)");
        assert_eq!(QuadRat::new(12, 8).to_string(), "12 + 8*sqrt(2)");
        assert_eq!(
            QuadRat::new(Rational::from((3, 4)), Rational::from((-1, 2))).to_string(),
            "3/4 - 1/2*sqrt(2)"
        );
    }
}
