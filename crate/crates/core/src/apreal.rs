//! Arbitrary-precision reals and complexes on top of MPFR/MPC, the constants
//! π, √2 and ζ(3), and numeric evaluation of the level-8 modular objects in
//! the upper half-plane.
//!
//! Callers pass a target precision in decimal digits `P`. Arithmetic runs at
//! `P + 15` digits and checks compare against `10^{-(P-10)}`.

use std::f64::consts::LOG2_10;
use std::fmt;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};

use crate::etamod::{self, EtaQuotient};
use crate::exactq::{QSeries, QuadRat};

pub const GUARD_DIGITS: u32 = 15;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ApError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("zeta(3) sources disagree by {discrepancy} at {digits} digits")]
    PrecisionUnreachable { digits: u32, discrepancy: String },
}

pub fn working_bits(digits: u32) -> u32 {
    ((digits + GUARD_DIGITS) as f64 * LOG2_10).ceil() as u32
}

/// `10^{-(P-10)}`.
pub fn tolerance(digits: u32) -> Float {
    pow10(-(digits as i32 - 10), working_bits(digits))
}

pub fn pow10(e: i32, bits: u32) -> Float {
    Float::with_val(bits, 10).pow(e)
}

/// A real number together with the decimal precision it is meant to carry.
#[derive(Clone, Debug, PartialEq)]
pub struct APReal {
    value: Float,
    digits: u32,
}

impl APReal {
    pub fn new(value: Float, digits: u32) -> Self {
        APReal { value, digits }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn into_value(self) -> Float {
        self.value
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }
}

impl fmt::Display for APReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_decimal(&self.value, self.digits as usize))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct APComplex {
    value: Complex,
    digits: u32,
}

impl APComplex {
    pub fn new(value: Complex, digits: u32) -> Self {
        APComplex { value, digits }
    }

    pub fn value(&self) -> &Complex {
        &self.value
    }

    pub fn into_value(self) -> Complex {
        self.value
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn re(&self) -> APReal {
        APReal::new(self.value.real().clone(), self.digits)
    }

    pub fn im(&self) -> APReal {
        APReal::new(self.value.imag().clone(), self.digits)
    }
}

impl fmt::Display for APComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.digits as usize;
        let im = self.value.imag();
        let sign = if im.is_sign_negative() { "-" } else { "+" };
        write!(
            f,
            "{} {sign} {}i",
            format_decimal(self.value.real(), d),
            format_decimal(&Float::with_val(im.prec(), im.abs_ref()), d)
        )
    }
}

/// `x` to `digits` significant digits, positional when the exponent is
/// moderate and scientific otherwise.
pub fn format_decimal(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(digits.max(1)));
    let exp = exp.unwrap_or(0);
    let sign = if neg { "-" } else { "" };
    let body = if exp <= 0 && exp > -8 {
        format!("0.{}{}", "0".repeat((-exp) as usize), mantissa)
    } else if exp > 0 && (exp as usize) < mantissa.len() {
        format!(
            "{}.{}",
            &mantissa[..exp as usize],
            &mantissa[exp as usize..]
        )
    } else if exp > 0 && (exp as usize) <= 40 {
        format!("{}{}", mantissa, "0".repeat(exp as usize - mantissa.len()))
    } else {
        return format!("{sign}{}", sci(&mantissa, exp, false));
    };
    format!("{sign}{body}")
}

/// `x` in scientific notation with three significant digits, e.g. `1.23e-45`.
pub fn format_sci(x: &Float) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let (neg, mantissa, exp) = x.to_sign_string_exp(10, Some(3));
    let sign = if neg { "-" } else { "" };
    format!("{sign}{}", sci(&mantissa, exp.unwrap_or(0), true))
}

fn sci(mantissa: &str, exp: i32, trim: bool) -> String {
    let (head, tail) = mantissa.split_at(1);
    let tail = if trim {
        tail.trim_end_matches('0')
    } else {
        tail
    };
    if tail.is_empty() {
        format!("{head}e{}", exp - 1)
    } else {
        format!("{head}.{tail}e{}", exp - 1)
    }
}

pub fn const_pi(digits: u32) -> APReal {
    APReal::new(Float::with_val(working_bits(digits), Constant::Pi), digits)
}

pub fn const_sqrt2(digits: u32) -> APReal {
    APReal::new(Float::with_val(working_bits(digits), 2).sqrt(), digits)
}

/// `(5/2) Σ_{k≥1} (−1)^{k+1} / (k³ C(2k,k))`.
pub fn zeta3_apery(bits: u32) -> Float {
    let target = -(bits as i64) - 8;
    let mut sum = Float::with_val(bits, 0);
    let mut central = Integer::from(1);
    for k in 1u32.. {
        central = central * (4 * k - 2) / k;
        let den = Integer::from(k).pow(3) * &central;
        let term = Float::with_val(bits, 1) / den;
        if k % 2 == 1 {
            sum += &term;
        } else {
            sum -= &term;
        }
        if term.get_exp().is_some_and(|e| (e as i64) < target) {
            break;
        }
    }
    sum * 5u32 / 2u32
}

/// `(1/64) Σ_{k≥0} (−1)^k (205k² + 250k + 77) (k!)^10 / ((2k+1)!)^5`.
pub fn zeta3_amdeberhan_zeilberger(bits: u32) -> Float {
    let target = -(bits as i64) - 8;
    let mut sum = Float::with_val(bits, 0);
    let mut ratio = Float::with_val(bits, 1);
    for k in 0u32.. {
        let poly = 205 * (k as u64) * (k as u64) + 250 * k as u64 + 77;
        let term = Float::with_val(bits, &ratio * poly);
        if k % 2 == 0 {
            sum += &term;
        } else {
            sum -= &term;
        }
        if term.get_exp().is_some_and(|e| (e as i64) < target) {
            break;
        }
        // (k+1)^10 / ((2k+2)(2k+3))^5 = (k+1)^5 / (32 (2k+3)^5)
        let num = Integer::from(k + 1).pow(5);
        let den = Integer::from(2 * k + 3).pow(5) * 32u32;
        ratio *= Rational::from((num, den));
    }
    sum / 64u32
}

/// ζ(3) from the binomial series, cross-checked against the
/// Amdeberhan–Zeilberger series at the same working precision.
pub fn const_zeta3(digits: u32) -> Result<APReal, ApError> {
    let bits = working_bits(digits);
    let a = zeta3_apery(bits);
    let b = zeta3_amdeberhan_zeilberger(bits);
    let diff = Float::with_val(bits, &a - &b).abs();
    if diff > pow10(-(digits as i32), bits) {
        return Err(ApError::PrecisionUnreachable {
            digits,
            discrepancy: format_sci(&diff),
        });
    }
    Ok(APReal::new(a, digits))
}

pub fn quad_to_float(x: &QuadRat, bits: u32) -> Float {
    let root2 = Float::with_val(bits, 2).sqrt();
    Float::with_val(bits, &x.a) + root2 * &x.b
}

/// The fixed point `τ* = i/(2√2)` of `τ ↦ −1/(8τ)`.
pub fn tau_star(digits: u32) -> Complex {
    let bits = working_bits(digits);
    let im = Float::with_val(bits, 8).sqrt().recip();
    Complex::with_val(bits, (Float::new(bits), im))
}

/// `−1/(8τ)`.
pub fn fricke(tau: &Complex) -> Complex {
    let eight_tau = Complex::with_val(tau.prec(), tau * 8u32);
    eight_tau.recip() * -1i32
}

fn require_upper(tau: &Complex) -> Result<(), ApError> {
    if tau.imag().is_sign_positive() && !tau.imag().is_zero() {
        Ok(())
    } else {
        Err(ApError::Domain(format!(
            "Im(tau) = {} is not positive",
            format_sci(tau.imag())
        )))
    }
}

fn cbits(z: &Complex) -> u32 {
    z.prec().0
}

/// `e^{2πiτ}`.
pub fn nome(tau: &Complex) -> Complex {
    let bits = cbits(tau);
    let two_pi_i = Complex::with_val(bits, (0, Float::with_val(bits, Constant::Pi) * 2u32));
    (two_pi_i * tau).exp()
}

/// Least `M` with `n³|q|ⁿ < 10^{-(P+5)}` for every `n ≥ M`.
pub fn truncation_terms(q_abs: f64, digits: u32) -> usize {
    assert!(q_abs > 0.0 && q_abs < 1.0, "|q| = {q_abs} outside (0, 1)");
    let ln_q = q_abs.ln();
    let bound = -((digits + 5) as f64) * std::f64::consts::LN_10;
    // n³|q|ⁿ decreases once n > 3/ln(1/|q|).
    let mut n = ((3.0 / -ln_q).ceil() as usize).max(1);
    while 3.0 * (n as f64).ln() + n as f64 * ln_q >= bound {
        n += 1;
    }
    n
}

fn terms_at(tau: &Complex, digits: u32) -> usize {
    // |q| = exp(−2π Im τ), computed in f64; only the count depends on it.
    let im = tau.imag().to_f64();
    truncation_terms((-2.0 * std::f64::consts::PI * im).exp(), digits)
}

/// `Σ_{n=0}^{len-1} c_n qⁿ` by Horner's rule.
fn horner<'a, I>(coeffs: I, q: &Complex) -> Complex
where
    I: DoubleEndedIterator<Item = &'a Float>,
{
    let mut acc = Complex::with_val(q.prec(), 0);
    for c in coeffs.rev() {
        acc *= q;
        acc += c;
    }
    acc
}

/// `η(τ) = e^{πiτ/12} ∏_{n≥1} (1 − qⁿ)`.
///
/// The prefactor is taken from `τ` directly, so `η(τ+1) = e^{πi/12} η(τ)`.
pub fn eta_numeric(tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
    require_upper(tau)?;
    let bits = working_bits(digits);
    let tau = Complex::with_val(bits, tau);
    Ok(APComplex::new(eta_raw(&tau, digits), digits))
}

fn eta_raw(tau: &Complex, digits: u32) -> Complex {
    let bits = cbits(tau);
    let pi_i_12 = Complex::with_val(bits, (0, Float::with_val(bits, Constant::Pi) / 12u32));
    let pre = (pi_i_12 * tau).exp();
    let q = nome(tau);
    let m = terms_at(tau, digits);
    let mut prod = Complex::with_val(bits, 1);
    let mut qn = Complex::with_val(bits, 1);
    for _ in 1..=m {
        qn *= &q;
        prod *= Complex::with_val(bits, 1 - &qn);
    }
    pre * prod
}

/// `∏ η(mτ)^{e_m}`.
pub fn eta_quotient_numeric(
    eq: &EtaQuotient,
    tau: &Complex,
    digits: u32,
) -> Result<APComplex, ApError> {
    require_upper(tau)?;
    let bits = working_bits(digits);
    let mut acc = Complex::with_val(bits, 1);
    for &(m, e) in eq.factors() {
        let mt = Complex::with_val(bits, tau * m);
        let eta = eta_raw(&mt, digits);
        acc *= eta.pow(e as i32);
    }
    Ok(APComplex::new(acc, digits))
}

pub fn t_numeric(tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
    eta_quotient_numeric(&EtaQuotient::level8_t(), tau, digits)
}

pub fn y_numeric(tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
    eta_quotient_numeric(&EtaQuotient::level8_y(), tau, digits)
}

/// `1 + 240 Σ σ₃(n) qⁿ`.
pub fn e4_numeric(tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
    require_upper(tau)?;
    let bits = working_bits(digits);
    let tau = Complex::with_val(bits, tau);
    Ok(APComplex::new(e4_raw(&tau, digits), digits))
}

fn e4_raw(tau: &Complex, digits: u32) -> Complex {
    let bits = cbits(tau);
    let m = terms_at(tau, digits);
    let sig = etamod::sigma3_table(m + 1);
    let coeffs: Vec<Float> = sig
        .iter()
        .enumerate()
        .map(|(n, s)| {
            if n == 0 {
                Float::with_val(bits, 1)
            } else {
                Float::with_val(bits, Integer::from(s * 240u32))
            }
        })
        .collect();
    horner(coeffs.iter(), &nome(tau))
}

/// `g₈ = (E₄(τ) − 21E₄(2τ) + 84E₄(4τ) − 64E₄(8τ)) / 240`.
pub fn g8_numeric(tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
    require_upper(tau)?;
    let bits = working_bits(digits);
    let mut acc = Complex::with_val(bits, 0);
    for (m, c) in [(1u32, 1i32), (2, -21), (4, 84), (8, -64)] {
        let mt = Complex::with_val(bits, tau * m);
        acc += e4_raw(&mt, digits) * c;
    }
    Ok(APComplex::new(acc / 240u32, digits))
}

/// Coefficient table shared by `g₈`, the Eichler integral `E` and `E′`:
/// `a_n`, `a_n/n²` and `a_n/n³` as floats, index 0 unused.
#[derive(Clone, Debug)]
pub struct EichlerTable {
    bits: u32,
    a: Vec<Float>,
    a_n2: Vec<Float>,
    a_n3: Vec<Float>,
}

impl EichlerTable {
    pub fn new(len: usize, digits: u32) -> Self {
        let bits = working_bits(digits);
        let mut t = EichlerTable {
            bits,
            a: vec![Float::new(bits)],
            a_n2: vec![Float::new(bits)],
            a_n3: vec![Float::new(bits)],
        };
        t.extend(len);
        t
    }

    /// Table long enough for every `τ` with `Im τ ≥ min_im`.
    pub fn for_min_imag(min_im: f64, digits: u32) -> Self {
        let q = (-2.0 * std::f64::consts::PI * min_im).exp();
        Self::new(truncation_terms(q, digits) + 1, digits)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.len() <= 1
    }

    fn extend(&mut self, len: usize) {
        for n in self.a.len()..len {
            let an = etamod::g8_coefficient(n as u64);
            let n2 = Integer::from(n).pow(2);
            let n3 = Integer::from(n).pow(3);
            self.a.push(Float::with_val(self.bits, &an));
            self.a_n2
                .push(Float::with_val(self.bits, Rational::from((an.clone(), n2))));
            self.a_n3
                .push(Float::with_val(self.bits, Rational::from((an, n3))));
        }
    }

    fn prepare(&self, tau: &Complex, digits: u32) -> Result<(Complex, usize), ApError> {
        require_upper(tau)?;
        let m = terms_at(tau, digits) + 1;
        if m > self.a.len() {
            return Err(ApError::Domain(format!(
                "Im(tau) too small for a table of {} coefficients",
                self.a.len()
            )));
        }
        let tau = Complex::with_val(self.bits, tau);
        Ok((nome(&tau), m))
    }

    /// `Σ a_n qⁿ`.
    pub fn g8(&self, tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
        let (q, m) = self.prepare(tau, digits)?;
        Ok(APComplex::new(horner(self.a[..m].iter(), &q), digits))
    }

    /// `E(τ) = Σ a_n/n³ qⁿ`.
    pub fn e(&self, tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
        let (q, m) = self.prepare(tau, digits)?;
        Ok(APComplex::new(horner(self.a_n3[..m].iter(), &q), digits))
    }

    /// `dE/dτ = 2πi Σ a_n/n² qⁿ`.
    pub fn e_prime(&self, tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
        let (q, m) = self.prepare(tau, digits)?;
        let s = horner(self.a_n2[..m].iter(), &q);
        Ok(APComplex::new(s * two_pi_i(self.bits), digits))
    }

    /// `F(y) = E(iy/(2√2)) = Σ a_n/n³ e^{−πny/√2}`.
    pub fn f_eval(&self, y: &Float, digits: u32) -> Result<APReal, ApError> {
        if !(y.is_sign_positive() && !y.is_zero()) {
            return Err(ApError::Domain(format!(
                "y = {} is not positive",
                format_sci(y)
            )));
        }
        let bits = self.bits;
        let im = Float::with_val(bits, y / Float::with_val(bits, 8).sqrt());
        let tau = Complex::with_val(bits, (Float::new(bits), im));
        let e = self.e(&tau, digits)?;
        Ok(APReal::new(e.into_value().into_real_imag().0, digits))
    }
}

fn two_pi_i(bits: u32) -> Complex {
    Complex::with_val(bits, (0, Float::with_val(bits, Constant::Pi) * 2u32))
}

pub fn e_numeric(tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
    require_upper(tau)?;
    EichlerTable::new(terms_at(tau, digits) + 1, digits).e(tau, digits)
}

pub fn e_prime_numeric(tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
    require_upper(tau)?;
    EichlerTable::new(terms_at(tau, digits) + 1, digits).e_prime(tau, digits)
}

/// `Σ a_n qⁿ` with `a_n` from the divisor-sum formula.
pub fn g8_series_numeric(tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
    require_upper(tau)?;
    EichlerTable::new(terms_at(tau, digits) + 1, digits).g8(tau, digits)
}

pub fn f_eval(y: &Float, digits: u32) -> Result<APReal, ApError> {
    if !(y.is_sign_positive() && !y.is_zero()) {
        return Err(ApError::Domain(format!(
            "y = {} is not positive",
            format_sci(y)
        )));
    }
    let im = y.to_f64() / 8f64.sqrt();
    EichlerTable::for_min_imag(im * 0.999, digits).f_eval(y, digits)
}

/// Evaluates an exact q-series at `q` (terms below the valuation are zero,
/// terms at or beyond the order are dropped).
pub fn eval_qseries(s: &QSeries, q: &Complex) -> Complex {
    let bits = cbits(q);
    let coeffs: Vec<Float> = s
        .coefficients()
        .iter()
        .map(|c| Float::with_val(bits, c))
        .collect();
    let body = horner(coeffs.iter(), q);
    let v = s.valuation();
    let lead = if v >= 0 {
        Complex::with_val(bits, q.pow(v as u32))
    } else {
        Complex::with_val(bits, q.pow(-v as u32)).recip()
    };
    body * lead
}

/// `dY/dτ = 2πi Σ n y_n qⁿ` from the exact q-expansion of `Y`.
pub fn y_prime_numeric(tau: &Complex, digits: u32) -> Result<APComplex, ApError> {
    require_upper(tau)?;
    let bits = working_bits(digits);
    let tau = Complex::with_val(bits, tau);
    let m = terms_at(&tau, digits) + 1;
    let y = etamod::eta_qexp(&EtaQuotient::level8_y(), m as i64)
        .map_err(|e| ApError::Domain(e.to_string()))?;
    let dy = y.theta();
    let s = eval_qseries(&dy, &nome(&tau));
    Ok(APComplex::new(s * two_pi_i(bits), digits))
}

/// `|a − b|`.
pub fn abs_diff(a: &Complex, b: &Complex) -> Float {
    Complex::with_val(a.prec(), a - b).abs().into_real_imag().0
}
