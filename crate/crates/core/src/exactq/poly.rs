use std::fmt;

use rug::{Integer, Rational};

use super::QuadRat;

/// Dense univariate polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    coeffs: Vec<Integer>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<Integer>) -> Self {
        while coeffs.last().is_some_and(|c| *c == 0) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Integer::from(c)).collect())
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64(&[c])
    }

    /// `c0 + c1·x`.
    pub fn linear(c0: i64, c1: i64) -> Self {
        Self::from_i64(&[c0, c1])
    }

    pub fn coeffs(&self) -> &[Integer] {
        &self.coeffs
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::default();
        }
        let mut out = vec![Integer::new(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let out = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_default();
                let b = other.coeffs.get(i).cloned().unwrap_or_default();
                a + b
            })
            .collect();
        Self::new(out)
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::new(self.coeffs.iter().map(|x| Integer::from(x * c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(1), |acc, _| acc.mul(self))
    }

    /// Product of the given factors.
    pub fn product(factors: &[IntPoly]) -> Self {
        factors.iter().fold(Self::constant(1), |acc, f| acc.mul(f))
    }

    pub fn eval(&self, x: &Integer) -> Integer {
        let mut acc = Integer::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_i64(&self, x: i64) -> Integer {
        self.eval(&Integer::from(x))
    }

    pub fn eval_rational(&self, x: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= x;
            acc += c;
        }
        acc
    }

    pub fn eval_quad(&self, x: &QuadRat) -> QuadRat {
        let mut acc = QuadRat::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x;
            acc.a += c;
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| Integer::from(c * i as u64))
                .collect(),
        )
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if *c == 0 {
                continue;
            }
            let mag = Integer::from(c.abs_ref());
            match (first, *c < 0) {
                (true, true) => write!(f, "-")?,
                (true, false) => {}
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
            }
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag == 1 => {}
                _ => write!(f, "{mag}*")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factored_cubic_matches_expanded() {
        let f = IntPoly::linear(1, 2).mul(&IntPoly::from_i64(&[1, 3, 3]));
        assert_eq!(f, IntPoly::from_i64(&[1, 5, 9, 6]));
        assert_eq!(f.eval_i64(2), Integer::from(95));
    }

    #[test]
    fn derivative_and_display() {
        let p = IntPoly::from_i64(&[1, -24, 16]);
        assert_eq!(p.derivative(), IntPoly::from_i64(&[-24, 32]));
        assert_eq!(p.to_string(), "16*x^2 - 24*x + 1");
        assert_eq!(IntPoly::default().degree(), None);
    }

    #[test]
    fn quad_eval_hits_root() {
        // 16z^2 - 24z + 1 vanishes at (3 - 2√2)/4.
        let t0 = QuadRat::new(Rational::from((3, 4)), Rational::from((-1, 2)));
        assert!(IntPoly::from_i64(&[1, -24, 16]).eval_quad(&t0).is_zero());
    }
}
