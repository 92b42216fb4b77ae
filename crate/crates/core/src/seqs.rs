//! The level-8 sequences `s_n` and `B_n`, their generating-function ODEs, the
//! local exponents at the dominant singularity, and the Apéry ratio.
//!
//! Both sequences satisfy
//!
//! ```text
//! (n+1)³ u_{n+1} = (2n+1)(12n² + 12n + 4) u_n − 16n³ u_{n−1}
//! ```
//!
//! with `s_0 = 1, s_1 = 4` and `B_0 = 0, B_1 = 1`.

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use crate::apreal::{self, APReal, ApError};
use crate::check::CheckResult;
use crate::exactq::{IntPoly, QSeries, QuadRat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeqError {
    #[error("s-recurrence leaves a remainder at n = {0}")]
    Integrality(usize),
    #[error("(n+1)!^3 B_(n+1) / 4^n is not an integer at n = {0}")]
    ContinuantIntegrality(usize),
    #[error("binomial sum and recurrence disagree at n = {0}")]
    BinomialMismatch(usize),
    #[error("argument {got} is below the minimum {min}")]
    TooSmall { min: i64, got: i64 },
    #[error("indicial polynomial has no rational normalization")]
    IrrationalIndicial,
}

/// `Σ_k C(n,k)² C(2k,n)²`.
pub fn s_binomial(n: u32) -> Integer {
    let mut acc = Integer::new();
    for k in n.div_ceil(2)..=n {
        let a = Integer::from(Integer::binomial_u(n, k));
        let b = Integer::from(Integer::binomial_u(2 * k, n));
        let term = a * b;
        acc += Integer::from(term.square_ref());
    }
    acc
}

/// `(2n+1)(12n² + 12n + 4)`.
fn rec_middle(n: usize) -> Integer {
    let n = Integer::from(n);
    let n2 = Integer::from(n.square_ref());
    (Integer::from(&n * 2u32) + 1u32) * (n2 * 12u32 + Integer::from(&n * 12u32) + 4u32)
}

fn cube(n: usize) -> Integer {
    Integer::from(n).pow(3)
}

/// Default depth of the binomial cross-check in [`SeqTable::build`].
pub const BINOMIAL_CHECK_LIMIT: usize = 200;

/// `s_n` and `B_n` for `n = 0..=n_max`, plus the integer sequence
/// `(n+1)!³ B_{n+1} / 4ⁿ` for `n = 0..n_max`.
#[derive(Clone, Debug)]
pub struct SeqTable {
    n_max: usize,
    s: Vec<Integer>,
    b: Vec<Rational>,
    scaled_b: Vec<Integer>,
}

impl SeqTable {
    pub fn build(n_max: usize) -> Result<Self, SeqError> {
        Self::build_with_check(n_max, BINOMIAL_CHECK_LIMIT)
    }

    /// Extends both sequences by the recurrence and compares `s_n` against the
    /// binomial sum for every `n <= min(n_max, binomial_limit)`.
    pub fn build_with_check(n_max: usize, binomial_limit: usize) -> Result<Self, SeqError> {
        if n_max < 1 {
            return Err(SeqError::TooSmall {
                min: 1,
                got: n_max as i64,
            });
        }
        let mut s = vec![Integer::from(1), Integer::from(4)];
        let mut b = vec![Rational::new(), Rational::from(1)];
        for n in 1..n_max {
            let mid = rec_middle(n);
            let tail = Integer::from(16u32) * cube(n);
            let lead = cube(n + 1);
            let num = Integer::from(&mid * &s[n]) - Integer::from(&tail * &s[n - 1]);
            let (q, r) = num.div_rem(lead.clone());
            if r != 0 {
                return Err(SeqError::Integrality(n + 1));
            }
            s.push(q);
            let bn = (Rational::from(&b[n] * &mid) - Rational::from(&b[n - 1] * &tail)) / lead;
            b.push(bn);
        }
        for (n, sn) in s.iter().enumerate().take(n_max.min(binomial_limit) + 1) {
            if s_binomial(n as u32) != *sn {
                return Err(SeqError::BinomialMismatch(n));
            }
        }
        let mut scaled_b = Vec::with_capacity(n_max);
        let mut fact_cubed = Integer::from(1);
        let mut four_pow = Integer::from(1);
        for n in 0..n_max {
            fact_cubed *= cube(n + 1);
            let v = Rational::from(&b[n + 1] * &fact_cubed) / &four_pow;
            if *v.denom() != 1 {
                return Err(SeqError::ContinuantIntegrality(n));
            }
            scaled_b.push(v.into_numer_denom().0);
            four_pow <<= 2;
        }
        Ok(SeqTable {
            n_max,
            s,
            b,
            scaled_b,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn s(&self) -> &[Integer] {
        &self.s
    }

    pub fn b(&self) -> &[Rational] {
        &self.b
    }

    /// `(n+1)!³ B_{n+1} / 4ⁿ` for `n = 0..n_max`.
    pub fn scaled_b(&self) -> &[Integer] {
        &self.scaled_b
    }

    /// `B_n / s_n`.
    pub fn apery_ratio(&self, n: usize) -> Rational {
        Rational::from(&self.b[n] / &self.s[n])
    }

    /// `𝒜(z) = Σ s_n zⁿ` through `z^(order-1)`.
    pub fn a_series(&self, order: i64) -> QSeries {
        assert!(
            order as usize <= self.n_max + 1,
            "table too short for order {order}"
        );
        QSeries::from_integers(0, &self.s[..order.max(0) as usize], order)
    }

    /// `ℬ(z) = Σ B_n zⁿ` through `z^(order-1)`.
    pub fn b_series(&self, order: i64) -> QSeries {
        assert!(
            order as usize <= self.n_max + 1,
            "table too short for order {order}"
        );
        QSeries::new(0, self.b[..order.max(0) as usize].to_vec(), order)
    }
}

/// `B_n / s_n` from a fresh table.
pub fn apery_ratio(n: usize) -> Result<Rational, SeqError> {
    if n < 1 {
        return Err(SeqError::TooSmall {
            min: 1,
            got: n as i64,
        });
    }
    Ok(SeqTable::build_with_check(n, 0)?.apery_ratio(n))
}

/// A differential operator `Σ_j z^j P_j(θ)` with `θ = z d/dz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaOperator {
    pub terms: Vec<(i64, IntPoly)>,
}

impl ThetaOperator {
    /// `θ³ − 4z(2θ+1)(3θ²+3θ+1) + 16z²(θ+1)³`.
    pub fn level8() -> Self {
        let theta = IntPoly::linear(0, 1);
        let p0 = theta.pow(3);
        let p1 =
            IntPoly::product(&[IntPoly::linear(1, 2), IntPoly::from_i64(&[1, 3, 3])]).scale(-4);
        let p2 = IntPoly::linear(1, 1).pow(3).scale(16);
        ThetaOperator {
            terms: vec![(0, p0), (1, p1), (2, p2)],
        }
    }

    pub fn apply(&self, f: &QSeries) -> QSeries {
        let mut acc = QSeries::zero(f.order());
        for (shift, poly) in &self.terms {
            let coeffs = f
                .coefficients()
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    let n = f.valuation() + i as i64;
                    Rational::from(c * poly.eval_i64(n))
                })
                .collect();
            let term = QSeries::new(f.valuation(), coeffs, f.order()).shift(*shift);
            acc = &acc + &term;
        }
        acc
    }
}

/// `Σ_k c_k(z) y^{(k)}` with integer polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinaryOperator {
    pub coeffs: Vec<IntPoly>,
}

impl OrdinaryOperator {
    /// `z²(16z²−24z+1)y‴ + 3z(32z²−36z+1)y″ + (112z²−80z+1)y′ + 4(4z−1)y`.
    pub fn level8() -> Self {
        OrdinaryOperator {
            coeffs: vec![
                IntPoly::from_i64(&[-4, 16]),
                IntPoly::from_i64(&[1, -80, 112]),
                IntPoly::from_i64(&[0, 3, -108, 96]),
                IntPoly::from_i64(&[0, 0, 1, -24, 16]),
            ],
        }
    }

    pub fn apply(&self, y: &QSeries) -> QSeries {
        let mut acc: Option<QSeries> = None;
        let mut deriv = y.clone();
        for c in &self.coeffs {
            let cs = QSeries::from_integers(0, c.coeffs(), y.order() + c.coeffs().len() as i64);
            let term = &cs * &deriv;
            acc = Some(match acc {
                None => term,
                Some(a) => &a + &term,
            });
            deriv = deriv.derivative();
        }
        acc.unwrap_or_else(|| QSeries::zero(y.order()))
    }

    /// Leading coefficient polynomial, whose roots are the finite singularities.
    pub fn leading(&self) -> &IntPoly {
        self.coeffs.last().expect("nonempty operator")
    }
}

fn first_mismatch_label(lhs: &QSeries, rhs: &QSeries, what: &str) -> Option<String> {
    lhs.first_mismatch(rhs).map(|n| format!("{what} at z^{n}"))
}

/// `L[𝒜] = 0` and `L[ℬ] = z` through `z^(order-1)` for the θ-form operator.
pub fn check_theta_ode(table: &SeqTable, order: i64) -> Result<CheckResult, SeqError> {
    if order < 3 {
        return Err(SeqError::TooSmall { min: 3, got: order });
    }
    let op = ThetaOperator::level8();
    let la = op.apply(&table.a_series(order)).truncate(order);
    let lb = op.apply(&table.b_series(order)).truncate(order);
    let zero = QSeries::zero(order);
    let z = QSeries::var(order);
    let first = first_mismatch_label(&la, &zero, "L[A]")
        .or_else(|| first_mismatch_label(&lb, &z, "L[B] - z"));
    let ok = la.order() == order && lb.order() == order;
    Ok(CheckResult::exact(
        "theta_ode",
        "Eqs. (9)-(10) theta-form L[A] = 0, L[B] = z",
        ok,
    )
    .param("order", order)
    .detail("l_of_b", lb.to_string())
    .mismatch(first))
}

/// The ordinary form annihilates `𝒜` through `z^(order-1)`.
pub fn check_ordinary_ode(table: &SeqTable, order: i64) -> Result<CheckResult, SeqError> {
    if order < 4 {
        return Err(SeqError::TooSmall { min: 4, got: order });
    }
    let a = table.a_series(order + 1);
    let res = OrdinaryOperator::level8().apply(&a).truncate(order);
    let ok = res.order() == order;
    Ok(CheckResult::exact(
        "ordinary_ode",
        "Eq. (11) ordinary third-order ODE annihilates A",
        ok,
    )
    .param("order", order)
    .mismatch(
        res.first_mismatch(&QSeries::zero(order))
            .map(|n| format!("z^{n}")),
    ))
}

/// `t₀ = (3 − 2√2)/4`.
pub fn t0() -> QuadRat {
    QuadRat::new(Rational::from((3, 4)), Rational::from((-1, 2)))
}

/// Polynomial helpers over Q(√2), coefficients lowest degree first.
fn qpoly_mul(a: &[QuadRat], b: &[QuadRat]) -> Vec<QuadRat> {
    let mut out = vec![QuadRat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn qpoly_trim(mut p: Vec<QuadRat>) -> Vec<QuadRat> {
    while p.last().is_some_and(QuadRat::is_zero) {
        p.pop();
    }
    p
}

/// `c(point·(1 − ε))` as a polynomial in `ε`.
fn shifted(c: &IntPoly, point: &QuadRat) -> Vec<QuadRat> {
    let sub = [point.clone(), -point];
    let mut acc: Vec<QuadRat> = vec![QuadRat::zero()];
    for coeff in c.coeffs().iter().rev() {
        acc = qpoly_mul(&acc, &sub);
        acc[0].a += coeff;
    }
    qpoly_trim(acc)
}

/// Indicial data of an operator at a regular singular point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Indicial {
    /// Power of `ε` relative to `ε^r` at which the polynomial appears
    /// (`-2` means the coefficient of `ε^{r−2}`).
    pub epsilon_shift: i64,
    /// Indicial polynomial in `r`, lowest degree first.
    pub polynomial: Vec<QuadRat>,
    /// The polynomial divided by `r(2r−1)(r−1)`, when that quotient is a scalar.
    pub scalar: Option<QuadRat>,
    /// Roots, all rational for this operator.
    pub roots: Vec<QuadRat>,
}

impl Indicial {
    pub fn value_at(&self, r: &Rational) -> QuadRat {
        let mut acc = QuadRat::zero();
        for c in self.polynomial.iter().rev() {
            acc = &acc.scale(r) + c;
        }
        acc
    }
}

/// Substitutes `z = point·(1 − ε)`, `y = ε^r` and extracts the lowest surviving
/// power of `ε` as a polynomial in `r` over Q(√2).
pub fn indicial_polynomial(op: &OrdinaryOperator, point: &QuadRat) -> (i64, Vec<QuadRat>) {
    let inv = point.inverse().expect("nonzero expansion point");
    let minus_inv = -&inv;
    let shifted_coeffs: Vec<Vec<QuadRat>> = op.coeffs.iter().map(|c| shifted(c, point)).collect();
    let lowest = shifted_coeffs
        .iter()
        .enumerate()
        .filter_map(|(k, p)| {
            p.iter()
                .position(|c| !c.is_zero())
                .map(|j| j as i64 - k as i64)
        })
        .min()
        .expect("nonzero operator");
    let max_deg = op.coeffs.len();
    for shift in lowest.. {
        let mut poly = vec![QuadRat::zero(); max_deg];
        for (k, p) in shifted_coeffs.iter().enumerate() {
            let j = shift + k as i64;
            let Some(c) = usize::try_from(j).ok().and_then(|j| p.get(j)) else {
                continue;
            };
            if c.is_zero() {
                continue;
            }
            // d^k/dz^k ε^r = (−1/point)^k r(r−1)…(r−k+1) ε^{r−k}
            let scalar = c * &minus_inv.pow(k as u32);
            let falling = (0..k as i64).fold(IntPoly::constant(1), |acc, i| {
                acc.mul(&IntPoly::linear(-i, 1))
            });
            for (d, fc) in falling.coeffs().iter().enumerate() {
                poly[d] = &poly[d] + &scalar.scale(&Rational::from(fc));
            }
        }
        let poly = qpoly_trim(poly);
        if !poly.is_empty() {
            return (shift, poly);
        }
        if shift > lowest + max_deg as i64 {
            break;
        }
    }
    (lowest, Vec::new())
}

fn divisors_of(n: &Integer) -> Vec<Integer> {
    let n = Integer::from(n.abs_ref());
    let mut out = Vec::new();
    let mut d = Integer::from(1);
    while Integer::from(d.square_ref()) <= n {
        if n.is_divisible(&d) {
            out.push(d.clone());
            let other = Integer::from(&n / &d);
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

/// Rational roots (with multiplicity) of a polynomial with rational coefficients.
pub fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let mut p: Vec<Rational> = poly.to_vec();
    while p.last().is_some_and(|c| *c == 0) {
        p.pop();
    }
    let mut roots = Vec::new();
    while p.len() > 1 && p[0] == 0 {
        roots.push(Rational::new());
        p.remove(0);
    }
    loop {
        if p.len() <= 1 {
            break;
        }
        let mut den = Integer::from(1);
        for c in &p {
            den.lcm_mut(c.denom());
        }
        let ints: Vec<Integer> = p
            .iter()
            .map(|c| (Rational::from(c * &den)).into_numer_denom().0)
            .collect();
        let mut found = None;
        'search: for num in divisors_of(&ints[0]) {
            for d in divisors_of(ints.last().unwrap()) {
                for sign in [1, -1] {
                    let cand = Rational::from((Integer::from(&num * sign), d.clone()));
                    let v = ints
                        .iter()
                        .rev()
                        .fold(Rational::new(), |acc, c| acc * &cand + c);
                    if v == 0 {
                        found = Some(cand);
                        break 'search;
                    }
                }
            }
        }
        let Some(root) = found else { break };
        // synthetic division by (r − root)
        let mut q = vec![Rational::new(); p.len() - 1];
        let mut carry = Rational::new();
        for i in (0..p.len()).rev() {
            let c = Rational::from(&p[i] + &carry);
            if i > 0 {
                q[i - 1] = c.clone();
            }
            carry = c * &root;
        }
        roots.push(root);
        p = q;
    }
    roots.sort();
    roots
}

/// Local exponents of the ordinary level-8 ODE at `z = t₀`.
pub fn indicial_at_t0() -> Result<Indicial, SeqError> {
    let (shift, polynomial) = indicial_polynomial(&OrdinaryOperator::level8(), &t0());
    let lead = polynomial
        .last()
        .cloned()
        .ok_or(SeqError::IrrationalIndicial)?;
    let inv_lead = lead.inverse().map_err(|_| SeqError::IrrationalIndicial)?;
    let monic: Vec<QuadRat> = polynomial.iter().map(|c| c * &inv_lead).collect();
    if !monic.iter().all(QuadRat::is_rational) {
        return Err(SeqError::IrrationalIndicial);
    }
    let roots = rational_roots(&monic.iter().map(|c| c.a.clone()).collect::<Vec<_>>())
        .into_iter()
        .map(QuadRat::from_rational)
        .collect();
    // r(2r − 1)(r − 1) = 2r³ − 3r² + r
    let reference = [0, 1, -3, 2].map(|c| QuadRat::new(c, 0));
    let scalar = lead.scale(&Rational::from((1, 2)));
    let proportional = polynomial.len() == reference.len()
        && polynomial
            .iter()
            .zip(&reference)
            .all(|(p, r)| *p == &scalar * r);
    Ok(Indicial {
        epsilon_shift: shift,
        polynomial,
        scalar: proportional.then_some(scalar),
        roots,
    })
}

pub fn check_indicial() -> Result<CheckResult, SeqError> {
    let ind = indicial_at_t0()?;
    let expected_roots =
        [Rational::new(), Rational::from((1, 2)), Rational::from(1)].map(QuadRat::from_rational);
    let ok = ind.epsilon_shift == -2
        && ind.scalar == Some(QuadRat::new(0, -8))
        && ind.roots == expected_roots;
    let poly = ind
        .polynomial
        .iter()
        .enumerate()
        .map(|(d, c)| format!("({c})*r^{d}"))
        .collect::<Vec<_>>()
        .join(" + ");
    Ok(CheckResult::exact(
        "indicial_t0",
        "Prop. local-exponents: -8*sqrt(2) r(2r-1)(r-1) at t0 = (3-2*sqrt(2))/4",
        ok,
    )
    .detail("epsilon_power", format!("r{}", ind.epsilon_shift))
    .detail("polynomial", poly)
    .detail(
        "scalar",
        ind.scalar
            .map(|s| s.to_string())
            .unwrap_or_else(|| "none".into()),
    )
    .detail(
        "roots",
        ind.roots
            .iter()
            .map(|r| r.to_string())
            .collect::<Vec<_>>()
            .join(", "),
    ))
}

/// Exact sequence facts: binomial vs recurrence, integrality of `s_n` and of
/// `(n+1)!³ B_{n+1} / 4ⁿ`.
pub fn check_sequences(n_max: usize, binomial_limit: usize) -> CheckResult {
    let base = CheckResult::exact(
        "sequences",
        "Eqs. (1),(2),(6) s_n binomial = recurrence; continuant integrality",
        true,
    )
    .param("n_max", n_max)
    .param("binomial_limit", binomial_limit);
    match SeqTable::build_with_check(n_max, binomial_limit) {
        Ok(t) => base
            .detail("s_4", &t.s()[4.min(n_max)])
            .detail("b_3", &t.b()[3.min(n_max)]),
        Err(e) => base.mismatch(Some(e)),
    }
}

/// Empirical growth and convergence data for `s_n` and `B_n/s_n`.
#[derive(Clone, Debug)]
pub struct GrowthDiagnostics {
    pub n_max: usize,
    /// Digits used for the error sequence (raised above the requested precision
    /// so that errors near `(17 − 12√2)^n` remain resolvable).
    pub digits: u32,
    pub t0: APReal,
    /// `s_{n_max}/s_{n_max−1}`.
    pub growth_ratio: APReal,
    /// `|s_{n_max}/s_{n_max−1} − (12 + 8√2)|`.
    pub growth_distance: APReal,
    /// `s_n t₀ⁿ n^{3/2}` at `n_max/2` and `n_max`, estimates of `−α₁/(2√π)`.
    pub scaled_growth: (APReal, APReal),
    /// `(n, e_{n+1}/e_n)` with `e_n = B_n/s_n − (7/32)ζ(3)`.
    pub error_ratios: Vec<(usize, APReal)>,
    /// `17 − 12√2`.
    pub predicted_rate: APReal,
}

/// Digits needed to resolve the Apéry-ratio error up to index `n`.
pub fn error_digits(n: usize, digits: u32) -> u32 {
    digits.max((n as f64 * 1.54).ceil() as u32 + 30)
}

pub fn growth_diagnostics(n_max: usize, digits: u32) -> Result<GrowthDiagnostics, ApError> {
    if n_max < 50 {
        return Err(ApError::Domain(format!("n_max = {n_max} is below 50")));
    }
    let table = SeqTable::build_with_check(n_max, 0).map_err(|e| ApError::Domain(e.to_string()))?;
    let work = error_digits(n_max, digits);
    let bits = apreal::working_bits(work);
    let zeta_target = {
        let z = apreal::const_zeta3(work)?;
        Float::with_val(bits, z.value() * Rational::from((7, 32)))
    };
    let t0f = apreal::quad_to_float(&t0(), bits);
    let inv_t0 = apreal::quad_to_float(&QuadRat::new(12, 8), bits);
    let sf = |n: usize| Float::with_val(bits, &table.s()[n]);
    let ratio = Float::with_val(bits, sf(n_max) / sf(n_max - 1));
    let dist = Float::with_val(bits, &ratio - &inv_t0).abs();
    let scaled = |n: usize| {
        let tn = Float::with_val(bits, (&t0f).pow(n as u32));
        let n32 = Float::with_val(bits, n).pow(Float::with_val(bits, 1.5));
        sf(n) * tn * n32
    };
    let errors: Vec<Float> = (1..=n_max)
        .map(|n| Float::with_val(bits, &table.apery_ratio(n)) - &zeta_target)
        .collect();
    let error_ratios = (1..n_max)
        .map(|n| {
            let r = Float::with_val(bits, &errors[n] / &errors[n - 1]);
            (n, APReal::new(r, work))
        })
        .collect();
    let sqrt2 = Float::with_val(bits, 2).sqrt();
    let rate = Float::with_val(bits, 17) - sqrt2 * 12u32;
    Ok(GrowthDiagnostics {
        n_max,
        digits: work,
        t0: APReal::new(t0f.clone(), digits),
        growth_ratio: APReal::new(ratio, digits),
        growth_distance: APReal::new(dist, digits),
        scaled_growth: (
            APReal::new(scaled(n_max / 2), digits),
            APReal::new(scaled(n_max), digits),
        ),
        error_ratios,
        predicted_rate: APReal::new(rate, digits),
    })
}

/// `|B_n/s_n − (7/32)ζ(3)|` at `n`, plus the window check of the successive
/// error ratios against `17 − 12√2` (relative deviation at most `window_tol`
/// for `lo <= n <= hi`).
pub fn check_apery_limit(
    n: usize,
    digits: u32,
    lo: usize,
    hi: usize,
    window_tol: f64,
) -> Result<CheckResult, ApError> {
    // The residual itself is measured at the raised precision so that it is
    // reported rather than rounded to zero.
    let err_digits = error_digits(n, digits);
    let bits = apreal::working_bits(err_digits);
    let target = Float::with_val(
        bits,
        apreal::const_zeta3(err_digits)?.value() * Rational::from((7, 32)),
    );
    let ratio = apery_ratio(n).map_err(|e| ApError::Domain(e.to_string()))?;
    let residual = (Float::with_val(bits, &ratio) - &target).abs();
    let tol = apreal::tolerance(digits);
    let diag = growth_diagnostics(hi.max(n).max(50), digits)?;
    let rate = diag.predicted_rate.value().clone();
    let mut worst = Float::with_val(bits, 0);
    let mut worst_n = lo;
    for (m, r) in diag
        .error_ratios
        .iter()
        .filter(|(m, _)| *m >= lo && *m <= hi)
    {
        let dev = Float::with_val(bits, r.value() - &rate).abs() / &rate;
        if dev > worst {
            worst = dev;
            worst_n = *m;
        }
    }
    let window_ok = worst < window_tol;
    let ok = residual < tol && window_ok;
    let mut res = CheckResult::numeric(
        "apery_limit",
        "Theorem 1: B_n/s_n -> (7/32) zeta(3)",
        ok,
        apreal::format_sci(&residual),
        apreal::format_sci(&tol),
    )
    .param("n", n)
    .param("digits", digits)
    .detail(
        "ratio",
        apreal::format_decimal(&Float::with_val(bits, &ratio), 30),
    )
    .detail("rate_window", format!("{lo}..={hi}"))
    .detail("rate_predicted", apreal::format_decimal(&rate, 12))
    .detail("rate_worst_relative_deviation", apreal::format_sci(&worst))
    .detail("rate_worst_n", worst_n);
    if let Some((_, r)) = diag.error_ratios.iter().find(|(m, _)| *m == hi) {
        res = res.detail("rate_at_hi", apreal::format_decimal(r.value(), 12));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_examples() {
        assert_eq!(s_binomial(0), 1);
        assert_eq!(s_binomial(1), 4);
        assert_eq!(s_binomial(2), 40);
        assert_eq!(s_binomial(3), 544);
        assert_eq!(s_binomial(4), 8536);
    }

    #[test]
    fn table_examples() {
        let t = SeqTable::build(6).unwrap();
        assert_eq!(t.b()[2], Rational::from((21, 2)));
        assert_eq!(t.b()[3], Rational::from((3862, 27)));
        assert_eq!(t.s()[3], 544);
        assert_eq!(t.scaled_b()[0], 1);
        assert_eq!(t.scaled_b()[1], 21);
    }

    #[test]
    fn table_rejects_zero_depth() {
        assert!(matches!(SeqTable::build(0), Err(SeqError::TooSmall { .. })));
    }

    #[test]
    fn apery_ratio_examples() {
        assert_eq!(apery_ratio(1).unwrap(), Rational::from((1, 4)));
        assert_eq!(apery_ratio(2).unwrap(), Rational::from((21, 80)));
    }

    #[test]
    fn theta_operator_expanded() {
        let op = ThetaOperator::level8();
        assert_eq!(op.terms[1].1, IntPoly::from_i64(&[-4, -20, -36, -24]));
        assert_eq!(op.terms[2].1, IntPoly::from_i64(&[16, 48, 48, 16]));
        assert!(op.apply(&QSeries::zero(10)).is_zero());
    }

    #[test]
    fn theta_ode_on_table() {
        let t = SeqTable::build(40).unwrap();
        let r = check_theta_ode(&t, 40).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.details["l_of_b"], "1*q + O(q^40)");
    }

    #[test]
    fn ordinary_ode_on_table() {
        let t = SeqTable::build(41).unwrap();
        assert!(check_ordinary_ode(&t, 40).unwrap().passed);
        assert!(check_ordinary_ode(&t, 3).is_err());
    }

    #[test]
    fn ordinary_ode_detects_non_solution() {
        let r = OrdinaryOperator::level8().apply(&QSeries::one(10));
        let expected = QSeries::from_integers(0, &[-4i64, 16], 7);
        assert_eq!(r.truncate(7), expected);
    }

    #[test]
    fn leading_coefficient_singularities() {
        let op = OrdinaryOperator::level8();
        assert!(op.leading().eval_quad(&t0()).is_zero());
        assert!(op.leading().eval_quad(&t0().conjugate()).is_zero());
    }

    #[test]
    fn indicial_exponents() {
        let ind = indicial_at_t0().unwrap();
        assert_eq!(ind.epsilon_shift, -2);
        assert_eq!(ind.scalar, Some(QuadRat::new(0, -8)));
        assert_eq!(
            ind.roots,
            vec![
                QuadRat::new(0, 0),
                QuadRat::new(Rational::from((1, 2)), 0),
                QuadRat::new(1, 0)
            ]
        );
        assert!(ind.value_at(&Rational::new()).is_zero());
        assert_eq!(ind.value_at(&Rational::from(2)), QuadRat::new(0, -48));
    }

    #[test]
    fn rational_roots_with_multiplicity() {
        let p = [-2, 5, -4, 1].map(Rational::from); // (r-1)^2 (r-2)
        assert_eq!(
            rational_roots(&p),
            vec![Rational::from(1), Rational::from(1), Rational::from(2)]
        );
        let irreducible = [-2, 0, 1].map(Rational::from);
        assert!(rational_roots(&irreducible).is_empty());
    }

    #[test]
    fn ratio_differences_shrink() {
        let t = SeqTable::build_with_check(80, 0).unwrap();
        let diffs: Vec<Rational> = (10..80)
            .map(|n| Rational::from(&t.apery_ratio(n + 1) - &t.apery_ratio(n)).abs())
            .collect();
        assert!(diffs.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn growth_diagnostics_numbers() {
        let d = growth_diagnostics(60, 30).unwrap();
        assert_eq!(
            apreal::format_decimal(d.t0.value(), 14),
            "0.042893218813452"
        );
        let rate = d.predicted_rate.value().to_f64();
        for (n, r) in &d.error_ratios {
            if *n >= 30 {
                assert!((r.value().to_f64() / rate - 1.0).abs() < 0.01, "n = {n}");
            }
        }
        assert!(d.growth_distance.value().to_f64() < 1.0);
    }
}
