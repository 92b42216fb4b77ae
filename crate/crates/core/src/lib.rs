//! Exact and high-precision verification of the level-8 Apéry limit
//! `B_n/s_n → (7/32)ζ(3)` and of the continued fraction
//! `PCF((2n+1)(3n²+3n+1), −n⁶) = 8/(7ζ(3))`.
//!
//! The exact layer ([`exactq`], [`etamod`], [`seqs`]) works with truncated
//! q-series over the rationals and with Q(√2); the numeric layer ([`apreal`],
//! [`fricke`], [`pcf`]) evaluates modular objects at points of the upper
//! half-plane with MPFR-backed floats.

pub mod apreal;
pub mod check;
pub mod etamod;
pub mod exactq;
pub mod fricke;
pub mod pcf;
pub mod seqs;

pub use check::{CheckKind, CheckResult};
