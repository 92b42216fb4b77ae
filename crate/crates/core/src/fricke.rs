//! Numeric checks of the Fricke transformation laws, the period polynomial of
//! the Eichler integral, its restriction to the invariant geodesic, the
//! derivative identities at the fixed point, and the L-values of `g₈`.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rug::float::Constant;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};

use crate::apreal::{
    self, abs_diff, format_decimal, format_sci, tolerance, working_bits, APReal, ApError,
    EichlerTable,
};
use crate::check::CheckResult;
use crate::exactq::{IntPoly, QuadRat};
use crate::seqs;

/// Sample points, precision and tolerance for the Fricke checks.
#[derive(Clone, Debug)]
pub struct FrickeCheckConfig {
    pub samples: Vec<Complex>,
    pub digits: u32,
    pub tolerance: Float,
}

/// Smallest `Im τ` allowed for a sample or its image under `τ ↦ −1/(8τ)`.
pub const MIN_IMAG: f64 = 0.1;

impl FrickeCheckConfig {
    /// `τ ∈ {i/2, i, 0.3+0.7i, 0.2+0.6i, τ*, (1+3i)/4}`.
    pub fn new(digits: u32) -> Self {
        let bits = working_bits(digits);
        let exact = |re: (i32, i32), im: (i32, i32)| {
            Complex::with_val(
                bits,
                (
                    Float::with_val(bits, Rational::from(re)),
                    Float::with_val(bits, Rational::from(im)),
                ),
            )
        };
        let samples = vec![
            exact((0, 1), (1, 2)),
            exact((0, 1), (1, 1)),
            exact((3, 10), (7, 10)),
            exact((1, 5), (3, 5)),
            apreal::tau_star(digits),
            exact((1, 4), (3, 4)),
        ];
        FrickeCheckConfig {
            samples,
            digits,
            tolerance: tolerance(digits),
        }
    }

    /// Appends `count` random samples drawn with a fixed seed from the region
    /// where both `τ` and `−1/(8τ)` have imaginary part at least [`MIN_IMAG`].
    pub fn with_random_samples(mut self, count: usize, seed: u64) -> Self {
        let bits = working_bits(self.digits);
        let mut rng = StdRng::seed_from_u64(seed);
        let target = self.samples.len() + count;
        while self.samples.len() < target {
            let re: f64 = rng.gen_range(-0.5..0.5);
            let im: f64 = rng.gen_range(0.15..1.2);
            let tau = Complex::with_val(bits, (re, im));
            if self.admits(&tau) {
                self.samples.push(tau);
            }
        }
        self
    }

    pub fn admits(&self, tau: &Complex) -> bool {
        tau.imag().to_f64() >= MIN_IMAG && apreal::fricke(tau).imag().to_f64() >= MIN_IMAG
    }

    fn min_imag(&self) -> f64 {
        self.samples
            .iter()
            .flat_map(|t| [t.imag().to_f64(), apreal::fricke(t).imag().to_f64()])
            .fold(f64::INFINITY, f64::min)
    }

    fn validate(&self) -> Result<(), ApError> {
        match self.samples.iter().find(|t| !self.admits(t)) {
            Some(t) => Err(ApError::Domain(format!(
                "sample {} is too close to the real axis",
                show_tau(t)
            ))),
            None => Ok(()),
        }
    }

    fn bits(&self) -> u32 {
        working_bits(self.digits)
    }
}

fn show_tau(tau: &Complex) -> String {
    format!("{:.6}{:+.6}i", tau.real().to_f64(), tau.imag().to_f64())
}

/// Worst residual over samples.
struct Worst {
    residual: Float,
    at: String,
}

impl Worst {
    fn new(bits: u32) -> Self {
        Worst {
            residual: Float::with_val(bits, 0),
            at: String::new(),
        }
    }

    fn push(&mut self, r: Float, at: String) {
        if r > self.residual || self.at.is_empty() {
            self.residual = r;
            self.at = at;
        }
    }

    fn finish(
        self,
        name: &str,
        anchor: &str,
        cfg: &FrickeCheckConfig,
        samples: usize,
    ) -> CheckResult {
        let ok = self.residual < cfg.tolerance;
        CheckResult::numeric(
            name,
            anchor,
            ok,
            format_sci(&self.residual),
            format_sci(&cfg.tolerance),
        )
        .param("digits", cfg.digits)
        .param("samples", samples)
        .detail("worst_at", self.at)
    }
}

/// `|t(−1/(8τ)) − t(τ)|`.
pub fn check_t_invariance(cfg: &FrickeCheckConfig) -> Result<CheckResult, ApError> {
    cfg.validate()?;
    let mut worst = Worst::new(cfg.bits());
    for tau in &cfg.samples {
        let a = apreal::t_numeric(&apreal::fricke(tau), cfg.digits)?;
        let b = apreal::t_numeric(tau, cfg.digits)?;
        worst.push(abs_diff(a.value(), b.value()), show_tau(tau));
    }
    Ok(worst.finish(
        "t_fricke",
        "Eq. (16) t(W8 tau) = t(tau)",
        cfg,
        cfg.samples.len(),
    ))
}

/// `|Y(−1/(8τ)) + 8τ²Y(τ)|`.
pub fn check_y_fricke(cfg: &FrickeCheckConfig) -> Result<CheckResult, ApError> {
    cfg.validate()?;
    let bits = cfg.bits();
    let mut worst = Worst::new(bits);
    for tau in &cfg.samples {
        let lhs = apreal::y_numeric(&apreal::fricke(tau), cfg.digits)?.into_value();
        let y = apreal::y_numeric(tau, cfg.digits)?.into_value();
        let rhs = Complex::with_val(bits, tau.square_ref()) * -8i32 * y;
        worst.push(abs_diff(&lhs, &rhs), show_tau(tau));
    }
    Ok(worst.finish(
        "y_fricke",
        "Eq. (17) Y(W8 tau) = -8 tau^2 Y(tau)",
        cfg,
        cfg.samples.len(),
    ))
}

/// `|64 (8τ)^{−4} g₈(−1/(8τ)) + g₈(τ)|`, with `g₈` from the `E₄` combination.
pub fn check_g8_fricke(cfg: &FrickeCheckConfig) -> Result<CheckResult, ApError> {
    cfg.validate()?;
    let bits = cfg.bits();
    let mut worst = Worst::new(bits);
    for tau in &cfg.samples {
        let image = apreal::g8_numeric(&apreal::fricke(tau), cfg.digits)?.into_value();
        let eight_tau = Complex::with_val(bits, tau * 8u32);
        let slashed = image * 64u32 / eight_tau.pow(4u32);
        let g = apreal::g8_numeric(tau, cfg.digits)?.into_value();
        worst.push(
            Complex::with_val(bits, slashed + g)
                .abs()
                .into_real_imag()
                .0,
            show_tau(tau),
        );
    }
    Ok(worst.finish(
        "g8_fricke",
        "Eq. (32) g8|_4 W8 = -g8",
        cfg,
        cfg.samples.len(),
    ))
}

fn apery_constant(digits: u32) -> Result<Float, ApError> {
    let z = apreal::const_zeta3(digits)?.into_value();
    Ok(Float::with_val(
        working_bits(digits),
        z * Rational::from((7, 32)),
    ))
}

/// `|8τ²E(−1/(8τ)) + E(τ) − (7/32)ζ(3)(8τ² + 1)|`.
pub fn check_period_polynomial(cfg: &FrickeCheckConfig) -> Result<CheckResult, ApError> {
    cfg.validate()?;
    let bits = cfg.bits();
    let table = EichlerTable::for_min_imag(cfg.min_imag(), cfg.digits);
    let c = apery_constant(cfg.digits)?;
    let mut worst = Worst::new(bits);
    for tau in &cfg.samples {
        let r = period_residual(&table, tau, &c, cfg.digits)?;
        worst.push(
            Complex::with_val(bits, r.abs_ref()).into_real_imag().0,
            show_tau(tau),
        );
    }
    Ok(worst
        .finish(
            "period_polynomial",
            "Eq. (42) (E|_{-2} W8)(tau) + E(tau) = (7/32) zeta(3) (8 tau^2 + 1)",
            cfg,
            cfg.samples.len(),
        )
        .detail("table_len", table.len()))
}

/// Signed residual `8τ²E(W₈τ) + E(τ) − (7/32)ζ(3)(8τ² + 1)`.
pub fn period_residual(
    table: &EichlerTable,
    tau: &Complex,
    apery: &Float,
    digits: u32,
) -> Result<Complex, ApError> {
    let bits = working_bits(digits);
    let w = apreal::fricke(tau);
    let eight_tau2 = Complex::with_val(bits, tau.square_ref()) * 8u32;
    let lhs = Complex::with_val(bits, &eight_tau2 * table.e(&w, digits)?.value())
        + table.e(tau, digits)?.value();
    let rhs = (eight_tau2 + 1u32) * apery;
    Ok(lhs - rhs)
}

/// Signed residual `F(y) − y²F(1/y) − (7/32)ζ(3)(1 − y²)`.
pub fn f_residual(
    table: &EichlerTable,
    y: &Float,
    apery: &Float,
    digits: u32,
) -> Result<Float, ApError> {
    let bits = working_bits(digits);
    let inv = Float::with_val(bits, y.recip_ref());
    let y2 = Float::with_val(bits, y.square_ref());
    let lhs = table.f_eval(y, digits)?.into_value()
        - Float::with_val(bits, &y2 * table.f_eval(&inv, digits)?.value());
    let rhs = Float::with_val(bits, 1 - &y2) * apery;
    Ok(lhs - rhs)
}

/// The functional equation of `F` at each `y`, plus the antisymmetry
/// `R(1/y) = −R(y)/y²` of the residual map.
pub fn check_f_functional(ys: &[Rational], digits: u32) -> Result<CheckResult, ApError> {
    let bits = working_bits(digits);
    let tol = tolerance(digits);
    let min_y = ys
        .iter()
        .map(|y| y.to_f64().min(1.0 / y.to_f64()))
        .fold(f64::INFINITY, f64::min);
    if min_y.is_nan() || min_y <= 0.0 {
        return Err(ApError::Domain("y samples must be positive".into()));
    }
    let table = EichlerTable::for_min_imag(min_y / 8f64.sqrt() * 0.999, digits);
    let c = apery_constant(digits)?;
    let mut worst = Worst::new(bits);
    let mut worst_anti = Float::with_val(bits, 0);
    for y in ys {
        let yf = Float::with_val(bits, y);
        let r = f_residual(&table, &yf, &c, digits)?;
        let r_inv = f_residual(&table, &Float::with_val(bits, yf.recip_ref()), &c, digits)?;
        // R(1/y) + R(y)/y²
        let anti = Float::with_val(
            bits,
            &r_inv + Float::with_val(bits, &r / Float::with_val(bits, yf.square_ref())),
        )
        .abs();
        if anti > worst_anti {
            worst_anti = anti;
        }
        worst.push(r.abs(), y.to_string());
    }
    let cfg_view = FrickeCheckConfig {
        samples: Vec::new(),
        digits,
        tolerance: tol.clone(),
    };
    let anti_ok = worst_anti < tol;
    Ok(worst
        .finish(
            "f_functional",
            "Eq. (37) F(y) - y^2 F(1/y) = (7/32) zeta(3) (1 - y^2)",
            &cfg_view,
            ys.len(),
        )
        .param(
            "y",
            ys.iter()
                .map(|y| y.to_string())
                .collect::<Vec<_>>()
                .join(","),
        )
        .detail("antisymmetry_residual", format_sci(&worst_anti))
        .require(anti_ok))
}

/// `y ∈ {1/3, 1/2, 1, 2, 3, 5}`.
pub fn default_f_samples() -> Vec<Rational> {
    [(1, 3), (1, 2), (1, 1), (2, 1), (3, 1), (5, 1)]
        .into_iter()
        .map(Rational::from)
        .collect()
}

/// Point-by-point agreement of the period-polynomial residual on the geodesic
/// `τ = iy/(2√2)` with the `F` residual: the first equals `−R(y)` there.
pub fn geodesic_agreement(ys: &[Rational], digits: u32) -> Result<Float, ApError> {
    let bits = working_bits(digits);
    let min_y = ys
        .iter()
        .map(|y| y.to_f64().min(1.0 / y.to_f64()))
        .fold(f64::INFINITY, f64::min);
    let table = EichlerTable::for_min_imag(min_y / 8f64.sqrt() * 0.999, digits);
    let c = apery_constant(digits)?;
    let root8 = Float::with_val(bits, 8).sqrt();
    let mut worst = Float::with_val(bits, 0);
    for y in ys {
        let yf = Float::with_val(bits, y);
        let tau = Complex::with_val(
            bits,
            (Float::new(bits), Float::with_val(bits, &yf / &root8)),
        );
        let p = period_residual(&table, &tau, &c, digits)?;
        let f = f_residual(&table, &yf, &c, digits)?;
        let d = Complex::with_val(bits, p + f).abs().into_real_imag().0;
        if d > worst {
            worst = d;
        }
    }
    Ok(worst)
}

/// `E(τ*) + E′(τ*)/(2i√2) = (7/32)ζ(3)` and `Y′(τ*) = 2i√2 Y(τ*)`, with
/// derivatives from term-wise differentiated q-series.
pub fn check_derivative_identities(digits: u32) -> Result<CheckResult, ApError> {
    if digits < 30 {
        return Err(ApError::Domain(format!("precision {digits} is below 30")));
    }
    let bits = working_bits(digits);
    let tau = apreal::tau_star(digits);
    let table = EichlerTable::for_min_imag(tau.imag().to_f64() * 0.999, digits);
    let two_i_root2 = Complex::with_val(bits, (0, Float::with_val(bits, 8).sqrt()));
    let e = table.e(&tau, digits)?.into_value();
    let ep = table.e_prime(&tau, digits)?.into_value();
    let c = apery_constant(digits)?;
    let e_res = abs_diff(
        &(Complex::with_val(bits, &e + ep / &two_i_root2)),
        &Complex::with_val(bits, &c),
    );
    let y = apreal::y_numeric(&tau, digits)?.into_value();
    let yp = apreal::y_prime_numeric(&tau, digits)?.into_value();
    let y_res = abs_diff(&yp, &Complex::with_val(bits, &two_i_root2 * &y));
    let im_e = Float::with_val(bits, e.imag().abs_ref());
    let tol = tolerance(digits);
    let worst = if e_res > y_res {
        e_res.clone()
    } else {
        y_res.clone()
    };
    let ok = e_res < tol && y_res < tol && im_e < tol;
    Ok(CheckResult::numeric(
        "derivative_identities",
        "Eqs. (44)-(45) E + E'/(2i sqrt 2) = (7/32) zeta(3), Y' = 2i sqrt(2) Y at tau*",
        ok,
        format_sci(&worst),
        format_sci(&tol),
    )
    .param("digits", digits)
    .detail("e_residual", format_sci(&e_res))
    .detail("y_residual", format_sci(&y_res))
    .detail("im_e_tau_star", format_sci(&im_e)))
}

/// Central finite difference of `E` at `τ*` with step `10^{−P/3}`, for a
/// sanity comparison with the term-wise derivative.
pub fn e_prime_finite_difference(digits: u32) -> Result<Complex, ApError> {
    let bits = working_bits(digits);
    let tau = apreal::tau_star(digits);
    let h = apreal::pow10(-(digits as i32) / 3, bits);
    let table = EichlerTable::for_min_imag(tau.imag().to_f64() * 0.9, digits);
    let hi = Complex::with_val(bits, (Float::new(bits), &h));
    let up = table
        .e(&Complex::with_val(bits, &tau + &hi), digits)?
        .into_value();
    let down = table
        .e(&Complex::with_val(bits, &tau - &hi), digits)?
        .into_value();
    Ok((up - down) / (hi * 2u32))
}

/// `t(τ*)`, which must equal `(3 − 2√2)/4`.
pub fn t_fixed_point_value(digits: u32) -> Result<APReal, ApError> {
    if digits < 20 {
        return Err(ApError::Domain(format!("precision {digits} is below 20")));
    }
    let t = apreal::t_numeric(&apreal::tau_star(digits), digits)?;
    Ok(t.re())
}

pub fn check_t0(digits: u32) -> Result<CheckResult, ApError> {
    let bits = working_bits(digits);
    let t = apreal::t_numeric(&apreal::tau_star(digits), digits)?.into_value();
    let exact = apreal::quad_to_float(&seqs::t0(), bits);
    let res = abs_diff(&t, &Complex::with_val(bits, &exact));
    let tol = tolerance(digits);
    let in_unit = exact > 0 && exact < 1;
    Ok(CheckResult::numeric(
        "t_fixed_point",
        "Eq. (48) t(tau*) = t0 = (3 - 2 sqrt 2)/4",
        res < tol && in_unit,
        format_sci(&res),
        format_sci(&tol),
    )
    .param("digits", digits)
    .detail("t0", format_decimal(&exact, 34))
    .detail("t_tau_star", format_decimal(t.real(), 34)))
}

/// `(1 − x)(1 − 4x)(1 − 16x)`, the Euler factor at 2 in `x = 2^{−s}`.
pub fn euler_factor() -> IntPoly {
    IntPoly::product(&[
        IntPoly::linear(1, -1),
        IntPoly::linear(1, -4),
        IntPoly::linear(1, -16),
    ])
}

/// `L(g₈, s) = ζ(s) ζ(s−3) f(2^{−s})` with `f` the Euler factor; the closed
/// form values at `s = 1, 2, 3` and an independent evaluation through the
/// functional equation of the completed L-function.
#[derive(Clone, Debug)]
pub struct LValues {
    pub factor_at: [Rational; 3],
    pub closed: [APReal; 3],
    pub numeric: [APReal; 3],
}

/// `Λ(s) = (√8/2π)^s Γ(s) L(s) = Σ a_n [(cn)^{−s}Γ(s,cn) − (cn)^{s−4}Γ(4−s,cn)]`
/// with `c = 2π/√8`. For integer `s` the incomplete gammas are elementary.
fn completed_l(s: u32, digits: u32) -> Float {
    let bits = working_bits(digits);
    let c = Float::with_val(bits, Constant::Pi) * 2u32 / Float::with_val(bits, 8).sqrt();
    let gamma_upper = |k: u32, x: &Float| -> Float {
        // Γ(k, x) = (k−1)! e^{−x} Σ_{j<k} x^j / j!
        let mut sum = Float::with_val(bits, 0);
        let mut term = Float::with_val(bits, 1);
        for j in 0..k {
            sum += &term;
            term *= x;
            term /= j + 1;
        }
        let fact: u32 = (1..k).product();
        sum * fact * Float::with_val(bits, -x).exp()
    };
    let q = Float::with_val(bits, -&c).exp().to_f64();
    let m = apreal::truncation_terms(q, digits) + 1;
    let mut acc = Float::with_val(bits, 0);
    for n in 1..m {
        let an = crate::etamod::g8_coefficient(n as u64);
        if an == 0 {
            continue;
        }
        let x = Float::with_val(bits, &c * n as u32);
        let head = gamma_upper(s, &x) / Float::with_val(bits, (&x).pow(s));
        let tail = gamma_upper(4 - s, &x) * Float::with_val(bits, (&x).pow(s as i32 - 4));
        acc += (head - tail) * &an;
    }
    acc
}

pub fn l_values(digits: u32) -> Result<LValues, ApError> {
    let bits = working_bits(digits);
    let zeta3 = apreal::const_zeta3(digits)?.into_value();
    let pi = Float::with_val(bits, Constant::Pi);
    let factor = euler_factor();
    let factor_at = [1u32, 2, 3].map(|s| factor.eval_rational(&Rational::from((1, 1u32 << s))));
    // s = 3: ζ(0) = −1/2.
    let l3 = Float::with_val(bits, &zeta3 * (Rational::from((-1, 2)) * &factor_at[2]));
    // s = 2: the factor vanishes.
    let l2 = Float::with_val(bits, &factor_at[1]);
    // s = 1: ζ(s)ζ(s−3) → ζ′(−2) = −ζ(3)/(4π²).
    let zeta_prime_m2 =
        Float::with_val(bits, -&zeta3) / (Float::with_val(bits, pi.square_ref()) * 4u32);
    let l1 = zeta_prime_m2 * &factor_at[0];
    let numeric = [1u32, 2, 3].map(|s| {
        let lam = completed_l(s, digits);
        let scale =
            Float::with_val(bits, &pi * 2u32).pow(s) / Float::with_val(bits, 8).sqrt().pow(s);
        let fact: u32 = (1..s).product();
        APReal::new(lam * scale / fact, digits)
    });
    Ok(LValues {
        factor_at,
        closed: [l1, l2, l3].map(|v| APReal::new(v, digits)),
        numeric,
    })
}

/// Euler-factor identity (exact), and `L(g₈,3) = (7/32)ζ(3)`, `L(g₈,2) = 0`,
/// `L(g₈,1) = −7ζ(3)/(8π²)` from the closed form, each compared with the
/// completed-L evaluation.
pub fn check_l_values(digits: u32) -> Result<CheckResult, ApError> {
    let bits = working_bits(digits);
    let lv = l_values(digits)?;
    let poly_ok = euler_factor() == IntPoly::from_i64(&[1, -21, 84, -64]);
    let zeta3 = apreal::const_zeta3(digits)?.into_value();
    let pi = Float::with_val(bits, Constant::Pi);
    let expected = [
        Float::with_val(bits, &zeta3 * -7i32) / (Float::with_val(bits, pi.square_ref()) * 8u32),
        Float::with_val(bits, 0),
        Float::with_val(bits, &zeta3 * Rational::from((7, 32))),
    ];
    let mut worst = Float::with_val(bits, 0);
    for (i, want) in expected.iter().enumerate() {
        for v in [&lv.closed[i], &lv.numeric[i]] {
            let d = Float::with_val(bits, v.value() - want).abs();
            if d > worst {
                worst = d;
            }
        }
    }
    let tol = tolerance(digits);
    let factors_ok = lv.factor_at
        == [
            Rational::from((7, 2)),
            Rational::new(),
            Rational::from((-7, 16)),
        ];
    Ok(CheckResult::numeric(
        "l_values",
        "Eqs. (29)-(30) L(g8,s) = zeta(s) zeta(s-3) (1-2^-s)(1-2^{2-s})(1-2^{4-s})",
        worst < tol && poly_ok && factors_ok,
        format_sci(&worst),
        format_sci(&tol),
    )
    .param("digits", digits)
    .detail("euler_factor", euler_factor().to_string())
    .detail("l1", format_decimal(lv.numeric[0].value(), 30))
    .detail("l3", format_decimal(lv.numeric[2].value(), 30))
    .detail(
        "zeta_prime_minus_2",
        "taken as -zeta(3)/(4 pi^2), not derived",
    ))
}

/// `ζ(3)` dual-source agreement.
pub fn check_zeta3(digits: u32) -> CheckResult {
    let bits = working_bits(digits);
    let a = apreal::zeta3_apery(bits);
    let b = apreal::zeta3_amdeberhan_zeilberger(bits);
    let diff = Float::with_val(bits, &a - &b).abs();
    let tol = apreal::pow10(-(digits as i32), bits);
    CheckResult::numeric(
        "zeta3_sources",
        "Theorem 1 target constant zeta(3), two independent series",
        diff < tol,
        format_sci(&diff),
        format_sci(&tol),
    )
    .param("digits", digits)
    .detail("zeta3", format_decimal(&a, digits as usize))
}

/// `t₀` as an element of Q(√2), handy for callers that only need the surd.
pub fn t0_exact() -> QuadRat {
    seqs::t0()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_samples_valid() {
        let cfg = FrickeCheckConfig::new(30);
        assert_eq!(cfg.samples.len(), 6);
        assert!(cfg.validate().is_ok());
        let more = FrickeCheckConfig::new(30).with_random_samples(5, 7);
        assert_eq!(more.samples.len(), 11);
        assert!(more.validate().is_ok());
    }

    #[test]
    fn random_samples_are_seeded() {
        let a = FrickeCheckConfig::new(20).with_random_samples(3, 42);
        let b = FrickeCheckConfig::new(20).with_random_samples(3, 42);
        assert_eq!(a.samples, b.samples);
    }

    #[test]
    fn invalid_sample_rejected() {
        let mut cfg = FrickeCheckConfig::new(20);
        cfg.samples.push(Complex::with_val(100, (0.0, 0.05)));
        assert!(check_t_invariance(&cfg).is_err());
    }

    #[test]
    fn fricke_checks_at_30() {
        let cfg = FrickeCheckConfig::new(30);
        for r in [
            check_t_invariance(&cfg).unwrap(),
            check_y_fricke(&cfg).unwrap(),
            check_g8_fricke(&cfg).unwrap(),
            check_period_polynomial(&cfg).unwrap(),
        ] {
            assert!(r.passed, "{r:?}");
        }
    }

    #[test]
    fn f_functional_and_antisymmetry() {
        let r = check_f_functional(&default_f_samples(), 30).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn geodesic_matches_f() {
        let d = geodesic_agreement(&default_f_samples(), 30).unwrap();
        assert!(d < tolerance(30));
    }

    #[test]
    fn derivative_identities() {
        let r = check_derivative_identities(30).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(check_derivative_identities(29).is_err());
    }

    #[test]
    fn finite_difference_agrees() {
        let digits = 36;
        let fd = e_prime_finite_difference(digits).unwrap();
        let exact = apreal::e_prime_numeric(&apreal::tau_star(digits), digits)
            .unwrap()
            .into_value();
        let rel = abs_diff(&fd, &exact)
            / Complex::with_val(fd.prec(), exact.abs_ref())
                .into_real_imag()
                .0;
        assert!(rel < 1e-20, "{}", format_sci(&rel));
    }

    #[test]
    fn t0_value() {
        let t = t_fixed_point_value(40).unwrap();
        assert_eq!(
            format_decimal(t.value(), 34),
            "0.04289321881345247559915563789515096"
        );
        assert!(check_t0(40).unwrap().passed);
    }

    #[test]
    fn l_values_closed_and_numeric() {
        let r = check_l_values(40).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.details["euler_factor"], "-64*x^3 + 84*x^2 - 21*x + 1");
    }

    #[test]
    fn residuals_shrink_with_precision() {
        let mut last: Option<f64> = None;
        for digits in [30, 50, 80] {
            let r = check_y_fricke(&FrickeCheckConfig::new(digits)).unwrap();
            let v: f64 = r.residual.unwrap().parse().unwrap();
            if let Some(prev) = last {
                assert!(v < prev || v == 0.0);
            }
            last = Some(v);
        }
    }
}
