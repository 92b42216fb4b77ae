//! Exact arithmetic: big rationals, the quadratic field Q(√2), integer
//! polynomials and truncated power series with rational coefficients.
//!
//! Everything here is a plain immutable value. No rounding happens anywhere
//! in this module.

mod poly;
mod quadrat;
mod series;

pub use poly::IntPoly;
pub use quadrat::QuadRat;
pub use series::QSeries;

/// Arbitrary-precision integer.
pub type BigInt = rug::Integer;

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type BigRat = rug::Rational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("division by a series with no nonzero coefficient below q^{order}")]
    DivisionByZeroSeries { order: i64 },
    #[error("inner series of a composition must have valuation >= 1, got {valuation}")]
    CompositionValuation { valuation: i64 },
    #[error("outer series of a composition must be a power series, got valuation {valuation}")]
    OuterLaurent { valuation: i64 },
    #[error("division by zero in Q(sqrt 2)")]
    QuadDivisionByZero,
}
