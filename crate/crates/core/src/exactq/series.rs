use std::cmp::min;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use rug::{Integer, Rational};

use super::SeriesError;

/// A truncated Laurent series `Σ c_n q^n` with exact rational coefficients.
///
/// Coefficients are stored densely starting at `valuation`; every exponent
/// `< order` is known exactly and nothing is claimed about exponents `>= order`.
/// The leading stored coefficient is nonzero unless the series vanishes up to
/// `order`, in which case `valuation == order` and no coefficients are stored.
///
/// Negative valuations are representable so that intermediates such as `1/t`
/// can be formed; [`QSeries::is_laurent`] flags them.
#[derive(Clone, PartialEq, Eq)]
pub struct QSeries {
    valuation: i64,
    coeffs: Vec<Rational>,
    order: i64,
}

impl QSeries {
    /// Builds a series from coefficients starting at `valuation`. Coefficients
    /// past `order` are dropped, missing ones up to `order` are zero.
    pub fn new(valuation: i64, coeffs: Vec<Rational>, order: i64) -> Self {
        let mut s = QSeries {
            valuation,
            coeffs,
            order,
        };
        s.normalize();
        s
    }

    pub fn from_integers<T: Into<Integer> + Clone>(
        valuation: i64,
        coeffs: &[T],
        order: i64,
    ) -> Self {
        Self::new(
            valuation,
            coeffs
                .iter()
                .map(|c| Rational::from(c.clone().into()))
                .collect(),
            order,
        )
    }

    pub fn zero(order: i64) -> Self {
        Self::new(order, Vec::new(), order)
    }

    pub fn one(order: i64) -> Self {
        Self::monomial(0, Rational::from(1), order)
    }

    pub fn constant(c: Rational, order: i64) -> Self {
        Self::monomial(0, c, order)
    }

    /// `c·q^exp`, known up to `order`.
    pub fn monomial(exp: i64, c: Rational, order: i64) -> Self {
        Self::new(exp, vec![c], order)
    }

    /// The variable `q` itself.
    pub fn var(order: i64) -> Self {
        Self::monomial(1, Rational::from(1), order)
    }

    fn normalize(&mut self) {
        let len = (self.order - self.valuation).max(0) as usize;
        self.coeffs.truncate(len);
        match self.coeffs.iter().position(|c| *c != 0) {
            Some(0) => {}
            Some(k) => {
                self.coeffs.drain(..k);
                self.valuation += k as i64;
            }
            None => {
                self.coeffs.clear();
                self.valuation = self.order;
            }
        }
        let len = (self.order - self.valuation).max(0) as usize;
        self.coeffs.resize(len, Rational::new());
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Exponents strictly below this are known exactly.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True when the series has a pole at `q = 0`.
    pub fn is_laurent(&self) -> bool {
        !self.is_zero() && self.valuation < 0
    }

    /// Coefficients from the valuation up to the order.
    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `q^n`, or `None` when `n` is at or beyond the order.
    pub fn coeff(&self, n: i64) -> Option<&Rational> {
        if n >= self.order {
            None
        } else if n < self.valuation {
            Some(Rational::ZERO)
        } else {
            Some(&self.coeffs[(n - self.valuation) as usize])
        }
    }

    /// Coefficients of `q^from, …, q^(to-1)`, clamped to the known range.
    pub fn dense(&self, from: i64, to: i64) -> Vec<Rational> {
        (from..min(to, self.order))
            .map(|n| self.coeff(n).cloned().unwrap_or_default())
            .collect()
    }

    /// True when every known coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| *c.denom() == 1)
    }

    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        Self::new(self.valuation, self.coeffs.clone(), order)
    }

    /// Multiplication by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        QSeries {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if *c == 0 {
            return Self::zero(self.order);
        }
        QSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| Rational::from(x * c)).collect(),
            order: self.order,
        }
    }

    /// Substitution `q -> q^m` for `m >= 1`.
    pub fn substitute_power(&self, m: i64) -> Self {
        assert!(m >= 1, "substitute_power needs m >= 1");
        if m == 1 {
            return self.clone();
        }
        let val = self.valuation * m;
        let order = self.order * m;
        let mut coeffs = vec![Rational::new(); (order - val) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * m as usize] = c.clone();
        }
        Self::new(val, coeffs, order)
    }

    /// Common denominator `L` and the integers `L·c_n`.
    fn integer_form(&self) -> (Integer, Vec<Integer>) {
        let mut den = Integer::from(1);
        for c in &self.coeffs {
            if *c.denom() != 1 {
                den.lcm_mut(c.denom());
            }
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| {
                if den == 1 {
                    c.numer().clone()
                } else {
                    c.numer() * Integer::from(&den / c.denom())
                }
            })
            .collect();
        (den, ints)
    }

    fn from_scaled(valuation: i64, ints: Vec<Integer>, den: &Integer, order: i64) -> Self {
        let coeffs = if *den == 1 {
            ints.into_iter().map(Rational::from).collect()
        } else {
            ints.into_iter()
                .map(|c| Rational::from((c, den.clone())))
                .collect()
        };
        Self::new(valuation, coeffs, order)
    }

    /// Schoolbook Cauchy product over a common denominator.
    pub fn mul_series(&self, other: &Self) -> Self {
        let val = self.valuation + other.valuation;
        let order = min(self.order + other.valuation, other.order + self.valuation);
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let n = (order - val).max(0) as usize;
        let (da, ia) = self.integer_form();
        let (db, ib) = other.integer_form();
        let mut out = vec![Integer::new(); n];
        for (i, x) in ia.iter().enumerate().take(n) {
            if *x == 0 {
                continue;
            }
            for (j, y) in ib.iter().enumerate().take(n - i) {
                if *y != 0 {
                    out[i + j] += x * y;
                }
            }
        }
        Self::from_scaled(val, out, &Integer::from(&da * &db), order)
    }

    /// Exact quotient `self / other`.
    ///
    /// The long division runs on integers: with `B` the integer form of the
    /// divisor, `D_n = B_0^n A_n - Σ_{k≥1} B_k B_0^{k-1} D_{n-k}` and the
    /// quotient coefficient is `D_n / B_0^{n+1}` up to the two scalings.
    pub fn div_series(&self, other: &Self) -> Result<Self, SeriesError> {
        if other.is_zero() {
            return Err(SeriesError::DivisionByZeroSeries { order: other.order });
        }
        let val = self.valuation - other.valuation;
        let rel = min(self.order - self.valuation, other.order - other.valuation);
        let order = val + rel;
        if self.is_zero() {
            return Ok(Self::zero(order));
        }
        let n = rel.max(0) as usize;
        let (la, ia) = self.integer_form();
        let (lb, ib) = other.integer_form();
        let b0 = &ib[0];
        let unit = *b0 == 1;
        let mut pow_b0 = Vec::with_capacity(n + 1);
        pow_b0.push(Integer::from(1));
        if !unit {
            for k in 1..=n {
                let next = Integer::from(&pow_b0[k - 1] * b0);
                pow_b0.push(next);
            }
        }
        let mut d: Vec<Integer> = Vec::with_capacity(n);
        for m in 0..n {
            let mut acc = if unit {
                ia[m].clone()
            } else {
                Integer::from(&ia[m] * &pow_b0[m])
            };
            for k in 1..=min(m, ib.len() - 1) {
                if ib[k] == 0 {
                    continue;
                }
                if unit {
                    acc -= &ib[k] * &d[m - k];
                } else {
                    acc -= Integer::from(&ib[k] * &pow_b0[k - 1]) * &d[m - k];
                }
            }
            d.push(acc);
        }
        let coeffs = d
            .into_iter()
            .enumerate()
            .map(|(m, dm)| {
                let den = if unit {
                    la.clone()
                } else {
                    Integer::from(&la * &pow_b0[m + 1])
                };
                Rational::from((dm * &lb, den))
            })
            .collect();
        Ok(Self::new(val, coeffs, order))
    }

    /// Multiplicative inverse, i.e. `1 / self` at the relative precision of `self`.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        Self::one(self.order - self.valuation).div_series(self)
    }

    /// `self^e` by repeated squaring; negative exponents go through the inverse.
    pub fn pow_int(&self, e: i64) -> Result<Self, SeriesError> {
        if e == 0 {
            return Ok(Self::one(self.order - self.valuation));
        }
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc: Option<Self> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul_series(&base),
                });
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_series(&base);
            }
        }
        Ok(acc.expect("nonzero exponent"))
    }

    /// The Euler operator `θ = q d/dq`: the coefficient of `q^n` is multiplied by `n`.
    pub fn theta(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| Rational::from(c * (self.valuation + i as i64)))
            .collect();
        Self::new(self.valuation, coeffs, self.order)
    }

    /// Ordinary derivative `d/dq`; the order drops by one.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero(self.order - 1);
        }
        self.theta().shift(-1)
    }

    /// `outer(inner(q))`, Horner evaluation truncated to
    /// `min(inner.order, outer.order · inner.valuation)`.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self, SeriesError> {
        if inner.valuation < 1 && !inner.is_zero() {
            return Err(SeriesError::CompositionValuation {
                valuation: inner.valuation,
            });
        }
        if outer.is_laurent() {
            return Err(SeriesError::OuterLaurent {
                valuation: outer.valuation,
            });
        }
        let vi = inner.valuation.max(1);
        let target = min(inner.order, outer.order.saturating_mul(vi));
        let inner = inner.truncate(target);
        let top = outer.order.max(0);
        let mut acc = Self::zero(target);
        for k in (0..top).rev() {
            acc = acc.mul_series(&inner).truncate(target);
            let c = outer.coeff(k).expect("k below order");
            if *c != 0 {
                acc = &acc + &Self::constant(c.clone(), target);
            }
        }
        Ok(acc)
    }

    /// First exponent below the shared order where `self` and `other` differ.
    pub fn first_mismatch(&self, other: &Self) -> Option<i64> {
        let lo = min(self.valuation, other.valuation);
        let hi = min(self.order, other.order);
        (lo..hi).find(|&n| self.coeff(n) != other.coeff(n))
    }
}

impl Add for &QSeries {
    type Output = QSeries;

    fn add(self, rhs: &QSeries) -> QSeries {
        let order = min(self.order, rhs.order);
        let val = min(self.valuation, rhs.valuation).min(order);
        let coeffs = (val..order)
            .map(|n| {
                let a = self.coeff(n).unwrap();
                let b = rhs.coeff(n).unwrap();
                Rational::from(a + b)
            })
            .collect();
        QSeries::new(val, coeffs, order)
    }
}

impl Sub for &QSeries {
    type Output = QSeries;

    fn sub(self, rhs: &QSeries) -> QSeries {
        self + &(-rhs)
    }
}

impl Neg for &QSeries {
    type Output = QSeries;

    fn neg(self) -> QSeries {
        QSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| Rational::from(-c)).collect(),
            order: self.order,
        }
    }
}

impl Mul for &QSeries {
    type Output = QSeries;

    fn mul(self, rhs: &QSeries) -> QSeries {
        self.mul_series(rhs)
    }
}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            let n = self.valuation + i as i64;
            if first {
                write!(f, "{c}")?;
            } else if *c < 0 {
                write!(f, " - {}", Rational::from(-c))?;
            } else {
                write!(f, " + {c}")?;
            }
            match n {
                0 => {}
                1 => write!(f, "*q")?,
                _ => write!(f, "*q^{n}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(val: i64, c: &[i64], order: i64) -> QSeries {
        QSeries::from_integers(val, c, order)
    }

    fn ints(x: &QSeries, from: i64, to: i64) -> Vec<i64> {
        x.dense(from, to)
            .iter()
            .map(|c| {
                assert_eq!(*c.denom(), 1);
                c.numer().to_i64().unwrap()
            })
            .collect()
    }

    #[test]
    fn add_cancels() {
        let a = s(0, &[1, 1], 10);
        let b = s(0, &[1, -1], 10);
        assert_eq!(&a + &b, s(0, &[2], 10));
        let z = &a - &a;
        assert!(z.is_zero());
        assert_eq!(z.valuation(), 10);
    }

    #[test]
    fn add_order_is_min() {
        let a = s(0, &[1, 2, 3], 8);
        let b = s(0, &[1], 5);
        assert_eq!((&a + &b).order(), 5);
    }

    #[test]
    fn mul_basic() {
        let a = s(0, &[1, 1], 10);
        let b = s(0, &[1, -1], 10);
        assert_eq!(&a * &b, s(0, &[1, 0, -1], 10));
        let p = &s(3, &[1], 20) * &s(5, &[1], 20);
        assert_eq!(p.valuation(), 8);
        assert_eq!(p.order(), 23);
        assert_eq!(p.coeff(8).unwrap(), &Rational::from(1));
    }

    #[test]
    fn mul_rational_coefficients() {
        let a = QSeries::new(0, vec![Rational::from((1, 2)), Rational::from((1, 3))], 4);
        let sq = &a * &a;
        assert_eq!(sq.coeff(0).unwrap(), &Rational::from((1, 4)));
        assert_eq!(sq.coeff(1).unwrap(), &Rational::from((1, 3)));
        assert_eq!(sq.coeff(2).unwrap(), &Rational::from((1, 9)));
    }

    #[test]
    fn div_examples() {
        let a = s(0, &[1, 0, -1], 10);
        let b = s(0, &[1, -1], 10);
        assert_eq!(a.div_series(&b).unwrap(), s(0, &[1, 1], 10));
        let q2 = s(2, &[1], 10);
        let r = q2.div_series(&q2).unwrap();
        assert_eq!(r, s(0, &[1], 8));
    }

    #[test]
    fn div_by_zero_series() {
        let a = s(0, &[1], 5);
        let z = QSeries::zero(5);
        assert_eq!(
            a.div_series(&z),
            Err(SeriesError::DivisionByZeroSeries { order: 5 })
        );
        assert!(a.pow_int(-1).is_ok());
        assert!(z.pow_int(-2).is_err());
    }

    #[test]
    fn div_non_unit_leading() {
        let a = s(0, &[1], 6);
        let b = s(0, &[3, 1], 6);
        let r = a.div_series(&b).unwrap();
        let back = &r * &b;
        assert_eq!(back, s(0, &[1], 6));
        assert_eq!(r.coeff(1).unwrap(), &Rational::from((-1, 9)));
    }

    #[test]
    fn laurent_intermediate() {
        let t = s(1, &[1, -8, 28], 10);
        let inv = t.inverse().unwrap();
        assert!(inv.is_laurent());
        assert_eq!(inv.valuation(), -1);
        let back = &inv * &t;
        assert_eq!(back.first_mismatch(&QSeries::one(back.order())), None);
    }

    #[test]
    fn pow_examples() {
        let g = s(0, &[1, -1], 8).pow_int(-1).unwrap();
        assert_eq!(ints(&g, 0, 8), vec![1; 8]);
        let one = s(0, &[1, 1], 8).pow_int(0).unwrap();
        assert_eq!(one, s(0, &[1], 8));
        let p8 = s(0, &[1, -1], 10).pow_int(8).unwrap();
        assert_eq!(ints(&p8, 0, 9), vec![1, -8, 28, -56, 70, -56, 28, -8, 1]);
    }

    #[test]
    fn theta_examples() {
        let q5 = s(5, &[1], 10);
        assert_eq!(q5.theta(), s(5, &[5], 10));
        assert!(s(0, &[7], 10).theta().is_zero());
        let t = s(1, &[1, -8, 28, -64, 142, -352], 7);
        assert_eq!(ints(&t.theta(), 1, 7), vec![1, -16, 84, -256, 710, -2112]);
    }

    #[test]
    fn derivative_drops_order() {
        let a = s(0, &[1, 2, 3], 3);
        let d = a.derivative();
        assert_eq!(d.order(), 2);
        assert_eq!(ints(&d, 0, 2), vec![2, 6]);
    }

    #[test]
    fn compose_identity_and_errors() {
        let f = s(1, &[1, 3, -2, 5], 9);
        let id = QSeries::var(20);
        assert_eq!(QSeries::compose(&id, &f).unwrap(), f);
        let bad = s(0, &[1, 1], 9);
        assert_eq!(
            QSeries::compose(&f, &bad),
            Err(SeriesError::CompositionValuation { valuation: 0 })
        );
    }

    #[test]
    fn compose_geometric() {
        // 1/(1-z) at z = q/(1-q) gives (1-q)/(1-2q).
        let geo = s(0, &[1, -1], 12).pow_int(-1).unwrap();
        let inner = &QSeries::var(12) * &geo;
        let c = QSeries::compose(&geo, &inner).unwrap();
        let expect = s(0, &[1, -1], 12).div_series(&s(0, &[1, -2], 12)).unwrap();
        assert_eq!(c.first_mismatch(&expect), None);
        assert_eq!(c.order(), 12);
    }

    #[test]
    fn substitute_power_spreads() {
        let a = s(0, &[1, -1, 2], 3);
        let b = a.substitute_power(3);
        assert_eq!(b.order(), 9);
        assert_eq!(ints(&b, 0, 9), vec![1, 0, 0, -1, 0, 0, 2, 0, 0]);
    }

    #[test]
    fn first_mismatch_reports_exponent() {
        let a = s(0, &[1, 2, 3, 4], 4);
        let b = s(0, &[1, 2, 5, 4], 4);
        assert_eq!(a.first_mismatch(&b), Some(2));
    }

    #[test]
    fn display() {
        let a = s(0, &[1, -8, 0, 3], 4);
        assert_eq!(a.to_string(), "1 - 8*q + 3*q^3 + O(q^4)");
    }
}
