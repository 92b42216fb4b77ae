//! Suite runner and report types behind the `apery8` binary.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use apery8::apreal::{self, format_decimal, working_bits, ApError};
use apery8::check::CheckResult;
use apery8::etamod::{self, EtaQuotient};
use apery8::exactq::QSeries;
use apery8::fricke::{self, FrickeCheckConfig};
use apery8::pcf::{self, PcfSpec};
use apery8::seqs::{self, SeqTable};
use rug::{Float, Rational};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

/// Index at which the Apéry ratio and the continued fraction are compared
/// with their limits.
pub const LIMIT_INDEX: usize = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Exact,
    Numeric,
    Limit,
    Pcf,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Exact, Suite::Numeric, Suite::Limit, Suite::Pcf];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Exact => "exact",
            Suite::Numeric => "numeric",
            Suite::Limit => "limit",
            Suite::Pcf => "pcf",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    /// q- and z-series truncation order.
    pub order: i64,
    /// Working precision in decimal digits.
    pub prec: u32,
    /// Depth of the sequence and continuant tables.
    pub n_max: usize,
    pub suites: Vec<Suite>,
    /// Extra random sample points for the Fricke checks.
    pub random_samples: usize,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            order: 200,
            prec: 50,
            n_max: 300,
            suites: Suite::ALL.to_vec(),
            random_samples: 0,
            seed: 8,
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ConfigError {
    #[error("order {0} is below the minimum 8")]
    Order(i64),
    #[error("precision {0} is below the minimum 20")]
    Prec(u32),
    #[error("n_max {0} is below the minimum 10")]
    NMax(usize),
    #[error("{0}")]
    Usage(String),
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.order < 8 {
            return Err(ConfigError::Order(self.order));
        }
        if self.prec < 20 {
            return Err(ConfigError::Prec(self.prec));
        }
        if self.n_max < 10 {
            return Err(ConfigError::NMax(self.n_max));
        }
        Ok(())
    }

    fn selected(&self) -> Vec<Suite> {
        let mut s = self.suites.clone();
        if s.is_empty() {
            s = Suite::ALL.to_vec();
        }
        s.sort();
        s.dedup();
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub suite: Suite,
    #[serde(flatten)]
    pub result: CheckResult,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub config: RunConfig,
    pub checks: Vec<CheckRecord>,
    pub passed: bool,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.result.passed)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let r = &c.result;
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            let _ = write!(out, "{verdict}  {:<8} {:<26}", c.suite.name(), r.name);
            if let (Some(res), Some(tol)) = (&r.residual, &r.tolerance) {
                let _ = write!(out, " residual {res} (tol {tol})");
            }
            if let Some(m) = &r.first_mismatch {
                let _ = write!(out, " mismatch at {m}");
            }
            let _ = writeln!(out, "  [{}]  {} ms", r.anchor, c.elapsed_ms);
        }
        let total = self.checks.len();
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{}: {} of {total} checks passed in {} ms",
            if self.passed { "OK" } else { "FAILED" },
            total - failed,
            self.elapsed_ms
        );
        out
    }
}

/// Turns a library error into a failed record so one broken check does not
/// hide the rest of the report.
fn errored(name: &str, err: impl ToString) -> CheckResult {
    CheckResult::exact(name, "error", false).detail("error", err.to_string())
}

struct Runner {
    checks: Vec<CheckRecord>,
}

impl Runner {
    fn run(&mut self, suite: Suite, name: &str, f: impl FnOnce() -> Result<CheckResult, String>) {
        let start = Instant::now();
        let result = f().unwrap_or_else(|e| errored(name, e));
        self.checks.push(CheckRecord {
            suite,
            result,
            elapsed_ms: start.elapsed().as_millis() as u64,
        });
    }
}

fn s<E: ToString>(e: E) -> String {
    e.to_string()
}

/// Runs the selected suites in the fixed order exact, numeric, limit, pcf.
pub fn cmd_verify(cfg: &RunConfig) -> Result<Report, ConfigError> {
    cfg.validate()?;
    let start = Instant::now();
    let mut runner = Runner { checks: Vec::new() };
    let suites = cfg.selected();
    let table_len = (cfg.n_max + 1).max(cfg.order as usize + 1);
    let table = SeqTable::build_with_check(table_len, seqs::BINOMIAL_CHECK_LIMIT);
    let order = cfg.order;
    let prec = cfg.prec;

    for suite in suites {
        match suite {
            Suite::Exact => {
                let x = Suite::Exact;
                runner.run(x, "wronskian", || etamod::check_wronskian(order).map_err(s));
                runner.run(x, "phi", || etamod::check_phi(order).map_err(s));
                runner.run(x, "parametrizations", || {
                    etamod::check_parametrizations(order).map_err(s)
                });
                runner.run(x, "g8_routes", || Ok(etamod::check_g8_routes(order)));
                match &table {
                    Ok(t) => {
                        runner.run(x, "theta_ode", || {
                            seqs::check_theta_ode(t, order).map_err(s)
                        });
                        runner.run(x, "ordinary_ode", || {
                            seqs::check_ordinary_ode(t, order).map_err(s)
                        });
                    }
                    Err(e) => runner.run(x, "sequence_table", || Err(s(e))),
                }
                runner.run(x, "sequences", || {
                    Ok(seqs::check_sequences(cfg.n_max, seqs::BINOMIAL_CHECK_LIMIT))
                });
                runner.run(x, "cusp_orders", || Ok(etamod::check_cusp_orders()));
                runner.run(x, "sturm", || Ok(etamod::check_sturm()));
                runner.run(x, "indicial_t0", || seqs::check_indicial().map_err(s));
                runner.run(x, "bo_polynomial", || Ok(pcf::check_bo_polynomial()));
            }
            Suite::Numeric => {
                let x = Suite::Numeric;
                let fcfg =
                    FrickeCheckConfig::new(prec).with_random_samples(cfg.random_samples, cfg.seed);
                runner.run(x, "zeta3_sources", || Ok(fricke::check_zeta3(prec)));
                runner.run(x, "t_fixed_point", || fricke::check_t0(prec).map_err(s));
                runner.run(x, "t_fricke", || {
                    fricke::check_t_invariance(&fcfg).map_err(s)
                });
                runner.run(x, "y_fricke", || fricke::check_y_fricke(&fcfg).map_err(s));
                runner.run(x, "g8_fricke", || fricke::check_g8_fricke(&fcfg).map_err(s));
                runner.run(x, "period_polynomial", || {
                    fricke::check_period_polynomial(&fcfg).map_err(s)
                });
                runner.run(x, "f_functional", || {
                    fricke::check_f_functional(&fricke::default_f_samples(), prec).map_err(s)
                });
                runner.run(x, "derivative_identities", || {
                    fricke::check_derivative_identities(prec).map_err(s)
                });
                runner.run(x, "l_values", || fricke::check_l_values(prec).map_err(s));
            }
            Suite::Limit => {
                let x = Suite::Limit;
                runner.run(x, "apery_limit", || {
                    seqs::check_apery_limit(LIMIT_INDEX, prec.max(60), 30, LIMIT_INDEX, 0.2)
                        .map_err(s)
                });
                runner.run(x, "growth", || {
                    growth_check(cfg.n_max.max(50), prec).map_err(s)
                });
            }
            Suite::Pcf => {
                let x = Suite::Pcf;
                match (
                    &table,
                    pcf::build_continuants(&PcfSpec::level8(), cfg.n_max),
                ) {
                    (Ok(t), Ok(pair)) => {
                        runner.run(x, "pcf_closed_forms", || {
                            Ok(pcf::check_closed_forms(&pair, t))
                        });
                        runner.run(x, "pcf_determinant", || Ok(pcf::check_determinant(&pair)));
                    }
                    (Err(e), _) => runner.run(x, "sequence_table", || Err(s(e))),
                    (_, Err(e)) => runner.run(x, "continuants", || Err(s(e))),
                }
                runner.run(x, "pcf_value", || {
                    pcf::check_pcf_value(LIMIT_INDEX, prec).map_err(s)
                });
                runner.run(x, "batut_olivier", || {
                    pcf::check_batut_olivier(LIMIT_INDEX, prec).map_err(s)
                });
            }
        }
    }

    let passed = runner.checks.iter().all(|c| c.result.passed);
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool_version: env!("CARGO_PKG_VERSION"),
        config: RunConfig {
            suites: cfg.selected(),
            ..cfg.clone()
        },
        checks: runner.checks,
        passed,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Growth of `s_n` against `1/t₀ = 12 + 8√2`. Since
/// `s_{n+1}/s_n = (1/t₀)(1 − 3/(2n) + O(n⁻²))`, the relative distance must sit
/// below `2/n` at depth `n`.
fn growth_check(n_max: usize, prec: u32) -> Result<CheckResult, ApError> {
    let d = seqs::growth_diagnostics(n_max, prec)?;
    let bits = working_bits(prec);
    let inv_t0 = apreal::quad_to_float(&apery8::exactq::QuadRat::new(12, 8), bits);
    let rel = Float::with_val(bits, d.growth_distance.value() / &inv_t0);
    let bound = 2.0 / n_max as f64;
    Ok(CheckResult::exact(
        "growth",
        "Lemma transfer s_n ~ -(alpha_1/(2 sqrt pi)) t0^-n n^-3/2",
        rel.to_f64() < bound,
    )
    .param("n_max", n_max)
    .detail("ratio", format_decimal(d.growth_ratio.value(), 20))
    .detail("inverse_t0", format_decimal(&inv_t0, 20))
    .detail("relative_distance", apreal::format_sci(&rel))
    .detail(
        "scaled_growth_half",
        format_decimal(d.scaled_growth.0.value(), 15),
    )
    .detail(
        "scaled_growth_full",
        format_decimal(d.scaled_growth.1.value(), 15),
    ))
}

/// Exact rational in a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JsonRational {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for JsonRational {
    fn from(r: &Rational) -> Self {
        JsonRational {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

/// Decimal string with its precision in digits.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JsonReal {
    pub value: String,
    pub digits: u32,
}

impl JsonReal {
    fn new(x: &Float, digits: u32) -> Self {
        JsonReal {
            value: format_decimal(x, digits as usize),
            digits,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShowWhat {
    /// `t`, `y`, `g8`, `e` or `e4` through `q^(order-1)`.
    QExp {
        series: String,
        order: i64,
    },
    Sequence {
        n: usize,
    },
    Ratio {
        n: usize,
        digits: u32,
    },
    Constants {
        digits: u32,
    },
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ShowOutput {
    Qexp {
        series: String,
        valuation: i64,
        order: i64,
        coefficients: Vec<JsonRational>,
    },
    Sequence {
        s: Vec<String>,
        b: Vec<JsonRational>,
    },
    Ratio {
        target: JsonReal,
        ratios: Vec<RatioRow>,
    },
    Constants(BTreeMap<String, JsonReal>),
}

#[derive(Clone, Debug, Serialize)]
pub struct RatioRow {
    pub n: usize,
    pub exact: JsonRational,
    pub value: JsonReal,
    pub error: String,
}

fn qexp_for(name: &str, order: i64) -> Result<QSeries, ConfigError> {
    let eta = |eq: EtaQuotient| {
        etamod::eta_qexp(&eq, order).map_err(|e| ConfigError::Usage(e.to_string()))
    };
    match name.to_ascii_lowercase().as_str() {
        "t" => eta(EtaQuotient::level8_t()),
        "y" => eta(EtaQuotient::level8_y()),
        "g8" => Ok(etamod::build_g8(order)),
        "e" => Ok(etamod::eichler_e(order)),
        "e4" => Ok(etamod::e4_qexp(order)),
        other => Err(ConfigError::Usage(format!(
            "unknown series '{other}' (expected t, y, g8, e or e4)"
        ))),
    }
}

pub fn cmd_show(what: &ShowWhat) -> Result<ShowOutput, ConfigError> {
    match what {
        ShowWhat::QExp { series, order } => {
            if *order < 1 {
                return Err(ConfigError::Usage("order must be positive".into()));
            }
            let q = qexp_for(series, *order)?;
            Ok(ShowOutput::Qexp {
                series: series.clone(),
                valuation: q.valuation(),
                order: q.order(),
                coefficients: q.coefficients().iter().map(JsonRational::from).collect(),
            })
        }
        ShowWhat::Sequence { n } => {
            let t = SeqTable::build((*n).max(1)).map_err(|e| ConfigError::Usage(e.to_string()))?;
            Ok(ShowOutput::Sequence {
                s: t.s()[..=*n].iter().map(|x| x.to_string()).collect(),
                b: t.b()[..=*n].iter().map(JsonRational::from).collect(),
            })
        }
        ShowWhat::Ratio { n, digits } => {
            if *n < 1 {
                return Err(ConfigError::Usage("n must be at least 1".into()));
            }
            let work = seqs::error_digits(*n, *digits);
            let bits = working_bits(work);
            let z = apreal::const_zeta3(work).map_err(|e| ConfigError::Usage(e.to_string()))?;
            let target = Float::with_val(bits, z.value() * Rational::from((7, 32)));
            let t =
                SeqTable::build_with_check(*n, 0).map_err(|e| ConfigError::Usage(e.to_string()))?;
            let ratios = (1..=*n)
                .map(|k| {
                    let r = t.apery_ratio(k);
                    let v = Float::with_val(bits, &r);
                    let err = Float::with_val(bits, &v - &target);
                    RatioRow {
                        n: k,
                        exact: JsonRational::from(&r),
                        value: JsonReal::new(&v, *digits),
                        error: apreal::format_sci(&err),
                    }
                })
                .collect();
            Ok(ShowOutput::Ratio {
                target: JsonReal::new(&target, *digits),
                ratios,
            })
        }
        ShowWhat::Constants { digits } => {
            if *digits < 10 {
                return Err(ConfigError::Usage("precision must be at least 10".into()));
            }
            let bits = working_bits(*digits);
            let z = apreal::const_zeta3(*digits)
                .map_err(|e| ConfigError::Usage(e.to_string()))?
                .into_value();
            let t0 = apreal::quad_to_float(&seqs::t0(), bits);
            let mut m = BTreeMap::new();
            let mut put = |k: &str, v: Float| {
                m.insert(k.to_owned(), JsonReal::new(&v, *digits));
            };
            put("zeta3", z.clone());
            put(
                "apery_limit_7_32_zeta3",
                Float::with_val(bits, &z * Rational::from((7, 32))),
            );
            put(
                "pcf_limit_8_over_7zeta3",
                Float::with_val(bits, 8u32) / Float::with_val(bits, &z * 7u32),
            );
            put("t0", t0.clone());
            put("inverse_t0", t0.recip());
            put("pi", apreal::const_pi(*digits).into_value());
            put("sqrt2", apreal::const_sqrt2(*digits).into_value());
            Ok(ShowOutput::Constants(m))
        }
    }
}

fn rational_text(r: &JsonRational) -> String {
    if r.den == "1" {
        r.num.clone()
    } else {
        format!("{}/{}", r.num, r.den)
    }
}

impl ShowOutput {
    pub fn to_text(&self) -> String {
        match self {
            ShowOutput::Qexp {
                series,
                valuation,
                order,
                coefficients,
            } => {
                let cs: Vec<String> = coefficients.iter().map(rational_text).collect();
                format!(
                    "{series}: coefficients of q^{valuation}..q^{} (order {order})\n{}\n",
                    order - 1,
                    cs.join(", ")
                )
            }
            ShowOutput::Sequence { s, b } => {
                let mut out = String::from("n\ts_n\tB_n\n");
                for (n, (sn, bn)) in s.iter().zip(b).enumerate() {
                    let _ = writeln!(out, "{n}\t{sn}\t{}", rational_text(bn));
                }
                out
            }
            ShowOutput::Ratio { target, ratios } => {
                let mut out = format!(
                    "target (7/32) zeta(3) = {}\nn\tB_n/s_n\terror\n",
                    target.value
                );
                for r in ratios {
                    let _ = writeln!(out, "{}\t{}\t{}", r.n, r.value.value, r.error);
                }
                out
            }
            ShowOutput::Constants(m) => {
                let mut out = String::new();
                for (k, v) in m {
                    let _ = writeln!(out, "{k:<24} {}", v.value);
                }
                out
            }
        }
    }
}
