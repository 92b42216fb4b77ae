//! Eta quotients on Γ₀(N), their exact q-expansions and cusp orders, and the
//! exact weight-4 identities at level 8.
//!
//! The two level-8 quotients are
//!
//! ```text
//! t = η(τ)^8 η(8τ)^8 / (η(2τ)^8 η(4τ)^8)      (Hauptmodul, weight 0)
//! Y = η(2τ)^6 η(4τ)^6 / (η(τ)^4 η(8τ)^4)      (weight 2)
//! ```
//!
//! and every check below compares exact rational q-expansions coefficient by
//! coefficient, far past the Sturm bound.

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::check::CheckResult;
use crate::exactq::{QSeries, SeriesError};
use crate::seqs::{SeqError, SeqTable};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EtaError {
    #[error("leading q-exponent {0} of the eta quotient is not an integer")]
    FractionalExponent(Rational),
    #[error("leading q-exponent {0} of the eta quotient is negative")]
    NegativeExponent(Rational),
    #[error("factor eta({m}τ) does not divide level {level}")]
    BadFactor { m: u64, level: u64 },
    #[error("factor eta({0}τ) listed twice")]
    DuplicateFactor(u64),
    #[error("order {got} is below the minimum {min}")]
    OrderTooSmall { min: i64, got: i64 },
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// Formal product `∏ η(mτ)^{e_m}` at level `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaQuotient {
    level: u64,
    factors: Vec<(u64, i64)>,
}

impl EtaQuotient {
    pub fn new(level: u64, factors: &[(u64, i64)]) -> Result<Self, EtaError> {
        let mut seen = Vec::new();
        for &(m, _) in factors {
            if m == 0 || !level.is_multiple_of(m) {
                return Err(EtaError::BadFactor { m, level });
            }
            if seen.contains(&m) {
                return Err(EtaError::DuplicateFactor(m));
            }
            seen.push(m);
        }
        Ok(EtaQuotient {
            level,
            factors: factors.iter().copied().filter(|&(_, e)| e != 0).collect(),
        })
    }

    /// The level-8 Hauptmodul `t`.
    pub fn level8_t() -> Self {
        Self::new(8, &[(1, 8), (2, -8), (4, -8), (8, 8)]).expect("valid quotient")
    }

    /// The level-8 weight-2 quotient `Y`.
    pub fn level8_y() -> Self {
        Self::new(8, &[(1, -4), (2, 6), (4, 6), (8, -4)]).expect("valid quotient")
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn factors(&self) -> &[(u64, i64)] {
        &self.factors
    }

    /// `(1/2) Σ e_m`.
    pub fn weight(&self) -> Rational {
        let s: i64 = self.factors.iter().map(|&(_, e)| e).sum();
        Rational::from((s, 2))
    }

    /// Leading exponent `(1/24) Σ m·e_m` of the q-expansion.
    pub fn q_shift(&self) -> Rational {
        let s: i64 = self.factors.iter().map(|&(m, e)| m as i64 * e).sum();
        Rational::from((s, 24))
    }
}

/// `∏_{n≥1} (1 - q^n)` through `q^(order-1)`, from the pentagonal number theorem.
pub fn euler_product(order: i64) -> QSeries {
    let len = order.max(0) as usize;
    let mut c = vec![Integer::new(); len];
    if len > 0 {
        c[0] = Integer::from(1);
    }
    let mut k: i64 = 1;
    loop {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let p1 = k * (3 * k - 1) / 2;
        let p2 = k * (3 * k + 1) / 2;
        if p1 >= order {
            break;
        }
        c[p1 as usize] += sign;
        if p2 < order {
            c[p2 as usize] += sign;
        }
        k += 1;
    }
    QSeries::from_integers(0, &c, order)
}

/// Exact q-expansion of an eta quotient through `q^(order-1)`.
pub fn eta_qexp(eq: &EtaQuotient, order: i64) -> Result<QSeries, EtaError> {
    let shift = eq.q_shift();
    if *shift.denom() != 1 {
        return Err(EtaError::FractionalExponent(shift));
    }
    if shift < 0 {
        return Err(EtaError::NegativeExponent(shift));
    }
    let shift = shift.numer().to_i64().expect("small exponent");
    if order <= shift {
        return Ok(QSeries::zero(order));
    }
    let rel = order - shift;
    let mut acc = QSeries::one(rel);
    for &(m, e) in &eq.factors {
        let m = m as i64;
        let base = euler_product((rel + m - 1) / m)
            .substitute_power(m)
            .truncate(rel);
        acc = &acc * &base.pow_int(e)?;
    }
    Ok(acc.shift(shift))
}

/// Order of an eta quotient at the cusps of Γ₀(N) with a fixed denominator `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspOrder {
    /// Denominator `c | N`; `c = N` is the cusp ∞ and `c = 1` the cusp 0.
    pub denominator: u64,
    /// Width `N / gcd(c², N)`.
    pub width: u64,
    /// Number of inequivalent cusps with this denominator, `φ(gcd(c, N/c))`.
    pub multiplicity: u64,
    /// Order in the local parameter `q_w = exp(2πiτ/w)` (Ligozat normalization).
    pub order: Rational,
}

impl CuspOrder {
    /// Order measured in `q = exp(2πiτ)` instead of the local parameter.
    pub fn invariant_order(&self) -> Rational {
        Rational::from(&self.order / self.width)
    }

    pub fn label(&self, level: u64) -> String {
        if self.denominator == level {
            "inf".to_owned()
        } else {
            format!("1/{}", self.denominator)
        }
    }
}

/// Cusp orders enumerated as ∞ first, then the remaining denominators in
/// increasing order. For `N = 8` this is `(∞, 0, 1/2, 1/4)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspOrders {
    pub level: u64,
    pub entries: Vec<CuspOrder>,
}

/// Width convention used for every printed order vector.
pub const CUSP_ORDER_CONVENTION: &str =
    "order in the local parameter exp(2*pi*i*tau/w) at a cusp of denominator c, width w = N/gcd(c^2, N)";

impl CuspOrders {
    /// The orders as integers, if they all are.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.entries
            .iter()
            .map(|e| {
                if *e.order.denom() == 1 {
                    e.order.numer().to_i64()
                } else {
                    None
                }
            })
            .collect()
    }

    /// `Σ multiplicity · order`, which the valence formula predicts to be
    /// `weight · [SL₂(Z):Γ₀(N)] / 12` for a form with no zeros in the upper half-plane.
    pub fn total(&self) -> Rational {
        self.entries
            .iter()
            .map(|e| Rational::from(&e.order * e.multiplicity))
            .sum()
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn prime_divisors(n: u64) -> Vec<u64> {
    divisors(n)
        .into_iter()
        .filter(|&p| p > 1 && divisors(p).len() == 2)
        .collect()
}

pub fn cusp_width(level: u64, c: u64) -> u64 {
    level / gcd(c * c, level)
}

/// Cusp denominators in report order: ∞ (`c = N`), then the others ascending.
pub fn cusp_denominators(level: u64) -> Vec<u64> {
    let mut out = vec![level];
    out.extend(divisors(level).into_iter().filter(|&c| c != level));
    out
}

/// Ligozat's formula
/// `ord_c = N / (24 · gcd(c, N/c) · c) · Σ_m gcd(c, m)² e_m / m`.
pub fn ligozat_orders(eq: &EtaQuotient) -> CuspOrders {
    let n = eq.level;
    let entries = cusp_denominators(n)
        .into_iter()
        .map(|c| {
            let g = gcd(c, n / c);
            let sum: Rational = eq
                .factors
                .iter()
                .map(|&(m, e)| {
                    let gm = gcd(c, m);
                    Rational::from(((gm * gm) as i64 * e, m as i64))
                })
                .sum();
            let order = sum * Rational::from((n, 24 * g * c));
            CuspOrder {
                denominator: c,
                width: cusp_width(n, c),
                multiplicity: euler_phi(g),
                order,
            }
        })
        .collect();
    CuspOrders { level: n, entries }
}

/// `[SL₂(Z) : Γ₀(N)] = N ∏_{p|N} (1 + 1/p)`.
pub fn gamma0_index(level: u64) -> u64 {
    prime_divisors(level)
        .into_iter()
        .fold(level, |acc, p| acc / p * (p + 1))
}

/// `⌊k · [SL₂(Z):Γ₀(N)] / 12⌋`.
pub fn sturm_bound(level: u64, weight: u64) -> u64 {
    weight * gamma0_index(level) / 12
}

/// `σ₃(n)` for `n < len` by a divisor sieve (Lambert-series route).
pub fn sigma3_table(len: usize) -> Vec<Integer> {
    let mut s = vec![Integer::new(); len];
    for d in 1..len {
        let d3 = Integer::from(d as u64).pow(3);
        for m in (d..len).step_by(d) {
            s[m] += &d3;
        }
    }
    s
}

/// `σ₃(n)` from the factorization of `n` (multiplicative route).
pub fn sigma3(n: u64) -> Integer {
    let mut n = n;
    let mut acc = Integer::from(1);
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            let p3 = Integer::from(p).pow(3);
            let num = Integer::from((&p3).pow(e + 1)) - 1u32;
            acc *= num / (p3 - 1u32);
        }
        p += 1;
    }
    if n > 1 {
        acc *= Integer::from(n).pow(3) + 1u32;
    }
    acc
}

/// `a_n = σ₃(n) − 21σ₃(n/2) + 84σ₃(n/4) − 64σ₃(n/8)`, with `σ₃` of a
/// non-integer taken as zero.
pub fn g8_coefficient(n: u64) -> Integer {
    let mut a = sigma3(n);
    if n.is_multiple_of(2) {
        a -= sigma3(n / 2) * 21u32;
    }
    if n.is_multiple_of(4) {
        a += sigma3(n / 4) * 84u32;
    }
    if n.is_multiple_of(8) {
        a -= sigma3(n / 8) * 64u32;
    }
    a
}

/// `E₄ = 1 + 240 Σ σ₃(n) qⁿ`.
pub fn e4_qexp(order: i64) -> QSeries {
    let mut c = sigma3_table(order.max(0) as usize);
    for x in c.iter_mut() {
        *x *= 240u32;
    }
    if let Some(c0) = c.first_mut() {
        *c0 = Integer::from(1);
    }
    QSeries::from_integers(0, &c, order)
}

/// `(E₄(τ) − 21E₄(2τ) + 84E₄(4τ) − 64E₄(8τ)) / 240` built from series operations.
pub fn g8_from_e4(order: i64) -> QSeries {
    let e4 = |m: i64| {
        e4_qexp((order + m - 1) / m)
            .substitute_power(m)
            .truncate(order)
    };
    let combo = &(&e4(1) - &e4(2).scale(&Rational::from(21)))
        + &(&e4(4).scale(&Rational::from(84)) - &e4(8).scale(&Rational::from(64)));
    combo.scale(&Rational::from((1, 240)))
}

/// The weight-4 form `g₈ = Σ a_n qⁿ` through `q^(order-1)`.
///
/// Panics if the divisor-sum coefficients disagree with the E₄ combination,
/// which would mean one of the two routes is broken.
pub fn build_g8(order: i64) -> QSeries {
    let coeffs: Vec<Integer> = (0..order.max(0) as u64)
        .map(|n| {
            if n == 0 {
                Integer::new()
            } else {
                g8_coefficient(n)
            }
        })
        .collect();
    let g8 = QSeries::from_integers(0, &coeffs, order);
    assert_eq!(
        g8.first_mismatch(&g8_from_e4(order)),
        None,
        "g8 coefficient routes disagree"
    );
    g8
}

/// The Eichler integral `E = Σ (a_n / n³) qⁿ`.
pub fn eichler_e(order: i64) -> QSeries {
    let coeffs: Vec<Rational> = (0..order.max(0) as u64)
        .map(|n| {
            if n == 0 {
                Rational::new()
            } else {
                Rational::from((g8_coefficient(n), Integer::from(n).pow(3)))
            }
        })
        .collect();
    QSeries::new(0, coeffs, order)
}

/// `1 − 24t + 16t²`.
fn discriminant_factor(t: &QSeries) -> QSeries {
    let one = QSeries::one(t.order());
    let t2 = t * t;
    &(&one - &t.scale(&Rational::from(24))) + &t2.scale(&Rational::from(16))
}

fn head(s: &QSeries, n: i64) -> String {
    s.dense(0, n)
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

fn require_order(order: i64, min: i64) -> Result<(), EtaError> {
    if order < min {
        Err(EtaError::OrderTooSmall { min, got: order })
    } else {
        Ok(())
    }
}

/// `(Dt/t)² = Y² (1 − 24t + 16t²)` through `q^(order-1)`.
pub fn check_wronskian(order: i64) -> Result<CheckResult, EtaError> {
    require_order(order, 5)?;
    let work = order + 2;
    let t = eta_qexp(&EtaQuotient::level8_t(), work)?;
    let y = eta_qexp(&EtaQuotient::level8_y(), work)?;
    let log_dt = t.theta().div_series(&t)?;
    let lhs = (&log_dt * &log_dt).truncate(order);
    let rhs = (&(&y * &y) * &discriminant_factor(&t)).truncate(order);
    let ok = lhs.order() == order && rhs.order() == order;
    Ok(CheckResult::exact(
        "wronskian",
        "Eq. (19) Wronskian (Dt/t)^2 = Y^2(1-24t+16t^2)",
        ok,
    )
    .param("order", order)
    .detail("lhs_head", head(&lhs, 5))
    .detail("rhs_head", head(&rhs, 5))
    .mismatch(lhs.first_mismatch(&rhs)))
}

/// `Φ := (Dt/t)³ t / (Y(1 − 24t + 16t²))` equals `Y·Dt` and `g₈`.
pub fn check_phi(order: i64) -> Result<CheckResult, EtaError> {
    require_order(order, 5)?;
    let work = order + 2;
    let t = eta_qexp(&EtaQuotient::level8_t(), work)?;
    let y = eta_qexp(&EtaQuotient::level8_y(), work)?;
    let dt = t.theta();
    let log_dt = dt.div_series(&t)?;
    let num = &log_dt.pow_int(3)? * &t;
    let phi = num
        .div_series(&(&y * &discriminant_factor(&t)))?
        .truncate(order);
    let simple = (&y * &dt).truncate(order);
    let g8 = build_g8(order);
    let ok = phi.order() == order && !phi.is_laurent();
    let first = phi
        .first_mismatch(&simple)
        .into_iter()
        .chain(phi.first_mismatch(&g8))
        .min();
    Ok(
        CheckResult::exact("phi_equals_g8", "Eqs. (18),(20),(27) Phi = Y*Dt = g8", ok)
            .param("order", order)
            .detail("phi_head", head(&phi, 7))
            .detail("g8_head", head(&g8, 7))
            .mismatch(first),
    )
}

/// `𝒜(t) = Y` and `ℬ(t) = E·Y` through `q^(order-1)`.
pub fn check_parametrizations(order: i64) -> Result<CheckResult, EtaError> {
    require_order(order, 1)?;
    let table = SeqTable::build((order as usize).max(2))?;
    let t = eta_qexp(&EtaQuotient::level8_t(), order)?;
    let y = eta_qexp(&EtaQuotient::level8_y(), order)?;
    let a_of_t = QSeries::compose(&table.a_series(order), &t)?;
    let b_of_t = QSeries::compose(&table.b_series(order), &t)?;
    let ey = (&eichler_e(order) * &y).truncate(order);
    let first = a_of_t
        .first_mismatch(&y)
        .map(|n| format!("A(t) vs Y at q^{n}"))
        .or_else(|| {
            b_of_t
                .first_mismatch(&ey)
                .map(|n| format!("B(t) vs E*Y at q^{n}"))
        });
    let ok = a_of_t.order() == order && b_of_t.order() == order;
    Ok(CheckResult::exact(
        "parametrizations",
        "Eq. (12) A(t) = Y and Eq. (31) B(t) = E*Y",
        ok,
    )
    .param("order", order)
    .detail("a_of_t_head", head(&a_of_t, 7))
    .detail("b_of_t_head", head(&b_of_t, 4))
    .mismatch(first))
}

/// Exact agreement of the divisor-sum and E₄-combination routes to `g₈`.
pub fn check_g8_routes(order: i64) -> CheckResult {
    let direct: Vec<Integer> = (0..order.max(0) as u64)
        .map(|n| {
            if n == 0 {
                Integer::new()
            } else {
                g8_coefficient(n)
            }
        })
        .collect();
    let direct = QSeries::from_integers(0, &direct, order);
    let combo = g8_from_e4(order);
    CheckResult::exact(
        "g8_routes",
        "Eq. (25) Eisenstein combination = Eq. (26) divisor sums",
        true,
    )
    .param("order", order)
    .detail("head", head(&direct, 9))
    .mismatch(direct.first_mismatch(&combo))
}

/// Cusp orders of `t` and `Y` against the Hauptmodul proposition, plus the
/// valence totals.
pub fn check_cusp_orders() -> CheckResult {
    let t = ligozat_orders(&EtaQuotient::level8_t());
    let y = ligozat_orders(&EtaQuotient::level8_y());
    let tv = t.as_integers();
    let yv = y.as_integers();
    let index = gamma0_index(8);
    let t_total_ok = t.total() == 0;
    let y_total_ok = y.total() == Rational::from((2 * index, 12));
    let ok = tv.as_deref() == Some(&[1, 1, -1, -1][..])
        && yv.as_deref() == Some(&[0, 0, 1, 1][..])
        && t_total_ok
        && y_total_ok;
    CheckResult::exact(
        "cusp_orders",
        "Prop. hauptmodul ord(t), ord(Y) via Ligozat",
        ok,
    )
    .param("cusps", "inf, 0, 1/2, 1/4")
    .detail("ord_t", format!("{tv:?}"))
    .detail("ord_y", format!("{yv:?}"))
    .detail("convention", CUSP_ORDER_CONVENTION)
}

pub fn check_sturm() -> CheckResult {
    let b = sturm_bound(8, 4);
    CheckResult::exact("sturm_bound", "Sturm bound M_4(Gamma0(8)) = 4", b == 4)
        .param("level", 8)
        .param("weight", 4)
        .detail("index", gamma0_index(8))
        .detail("bound", b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &QSeries, from: i64, to: i64) -> Vec<i64> {
        s.dense(from, to)
            .iter()
            .map(|c| c.numer().to_i64().unwrap())
            .collect()
    }

    #[test]
    fn t_expansion() {
        let t = eta_qexp(&EtaQuotient::level8_t(), 7).unwrap();
        assert_eq!(t.valuation(), 1);
        assert_eq!(ints(&t, 1, 7), vec![1, -8, 28, -64, 142, -352]);
    }

    #[test]
    fn y_expansion() {
        let y = eta_qexp(&EtaQuotient::level8_y(), 7).unwrap();
        assert_eq!(ints(&y, 0, 7), vec![1, 4, 8, 16, 24, 24, 32]);
    }

    #[test]
    fn euler_product_against_direct_expansion() {
        let n = 40;
        let mut direct = QSeries::one(n);
        for k in 1..n {
            let factor = &QSeries::one(n) - &QSeries::monomial(k, Rational::from(1), n);
            direct = &direct * &factor;
        }
        assert_eq!(euler_product(n), direct);
        assert_eq!(
            ints(&euler_product(13), 0, 13),
            vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]
        );
    }

    #[test]
    fn fractional_exponent_rejected() {
        let eta = EtaQuotient::new(1, &[(1, 1)]).unwrap();
        assert!(matches!(
            eta_qexp(&eta, 5),
            Err(EtaError::FractionalExponent(_))
        ));
        let eta24 = EtaQuotient::new(1, &[(1, 24)]).unwrap();
        let delta = eta_qexp(&eta24, 4).unwrap();
        assert_eq!(ints(&delta, 1, 4), vec![1, -24, 252]);
    }

    #[test]
    fn bad_factors_rejected() {
        assert_eq!(
            EtaQuotient::new(8, &[(3, 1)]),
            Err(EtaError::BadFactor { m: 3, level: 8 })
        );
        assert_eq!(
            EtaQuotient::new(8, &[(2, 1), (2, 3)]),
            Err(EtaError::DuplicateFactor(2))
        );
    }

    #[test]
    fn weights_and_shifts() {
        assert_eq!(EtaQuotient::level8_t().weight(), 0);
        assert_eq!(EtaQuotient::level8_y().weight(), 2);
        assert_eq!(EtaQuotient::level8_t().q_shift(), 1);
        assert_eq!(EtaQuotient::level8_y().q_shift(), 0);
    }

    #[test]
    fn ligozat_vectors() {
        let t = ligozat_orders(&EtaQuotient::level8_t());
        assert_eq!(t.as_integers(), Some(vec![1, 1, -1, -1]));
        let y = ligozat_orders(&EtaQuotient::level8_y());
        assert_eq!(y.as_integers(), Some(vec![0, 0, 1, 1]));
        let empty = ligozat_orders(&EtaQuotient::new(8, &[]).unwrap());
        assert_eq!(empty.as_integers(), Some(vec![0, 0, 0, 0]));
        let labels: Vec<_> = t.entries.iter().map(|e| e.label(8)).collect();
        assert_eq!(labels, ["inf", "1/1", "1/2", "1/4"]);
    }

    #[test]
    fn ligozat_infinity_matches_leading_exponent() {
        for eq in [EtaQuotient::level8_t(), EtaQuotient::level8_y()] {
            let inf = &ligozat_orders(&eq).entries[0];
            assert_eq!(inf.order, eq.q_shift());
            let s = eta_qexp(&eq, 10).unwrap();
            assert_eq!(Rational::from(s.valuation()), eq.q_shift());
        }
    }

    #[test]
    fn widths_and_valence() {
        let t = ligozat_orders(&EtaQuotient::level8_t());
        let widths: Vec<_> = t.entries.iter().map(|e| e.width).collect();
        assert_eq!(widths, [1, 8, 2, 1]);
        assert_eq!(t.entries[2].invariant_order(), Rational::from((-1, 2)));
        assert_eq!(t.total(), 0);
        assert_eq!(ligozat_orders(&EtaQuotient::level8_y()).total(), 2);
    }

    #[test]
    fn sturm_examples() {
        assert_eq!(sturm_bound(8, 4), 4);
        assert_eq!(sturm_bound(1, 12), 1);
        assert_eq!(sturm_bound(8, 2), 2);
        assert_eq!(gamma0_index(8), 12);
        assert_eq!(gamma0_index(6), 12);
    }

    #[test]
    fn sigma3_routes_agree() {
        let table = sigma3_table(300);
        for n in 1..300u64 {
            assert_eq!(table[n as usize], sigma3(n), "n = {n}");
        }
    }

    #[test]
    fn g8_coefficients() {
        let g = build_g8(9);
        assert_eq!(ints(&g, 1, 9), vec![1, -12, 28, -32, 126, -336, 344, -256]);
        assert_eq!(g8_coefficient(1), 1);
        assert_eq!(g8_coefficient(8), -256);
    }

    #[test]
    fn wronskian_shared_expansion() {
        let r = check_wronskian(5).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.details["lhs_head"], "1, -16, 48, 64, 624");
        assert_eq!(r.details["rhs_head"], "1, -16, 48, 64, 624");
    }

    #[test]
    fn log_derivative_of_t() {
        let t = eta_qexp(&EtaQuotient::level8_t(), 8).unwrap();
        let l = t.theta().div_series(&t).unwrap();
        assert_eq!(ints(&l, 0, 5), vec![1, -8, -8, -32, 24]);
        let sq = &l * &l;
        assert_eq!(ints(&sq, 0, 5), vec![1, -16, 48, 64, 624]);
    }

    #[test]
    fn phi_head_and_order_check() {
        let r = check_phi(7).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.details["phi_head"], "0, 1, -12, 28, -32, 126, -336");
        assert!(matches!(
            check_phi(4),
            Err(EtaError::OrderTooSmall { min: 5, got: 4 })
        ));
    }

    #[test]
    fn parametrizations_small_orders() {
        let r = check_parametrizations(7).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.details["a_of_t_head"], "1, 4, 8, 16, 24, 24, 32");
        assert_eq!(r.details["b_of_t_head"], "0, 1, 5/2, 82/27");
        let r1 = check_parametrizations(1).unwrap();
        assert!(r1.passed);
        assert_eq!(r1.details["a_of_t_head"], "1");
        assert_eq!(r1.details["b_of_t_head"], "0");
    }

    #[test]
    fn cusp_and_sturm_checks_pass() {
        assert!(check_cusp_orders().passed);
        assert!(check_sturm().passed);
        assert!(check_g8_routes(60).passed);
    }

    #[test]
    fn t_plus_y_head() {
        let t = eta_qexp(&EtaQuotient::level8_t(), 5).unwrap();
        let y = eta_qexp(&EtaQuotient::level8_y(), 5).unwrap();
        assert_eq!(ints(&(&t + &y), 0, 5), vec![1, 5, 0, 44, -40]);
    }
}
