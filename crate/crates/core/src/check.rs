//! Outcome records shared by every verification routine.

use std::collections::BTreeMap;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Exact equality of rational data; zero tolerance.
    Exact,
    /// Arbitrary-precision residual compared against a tolerance.
    Numeric,
}

/// Outcome of one verification.
///
/// Numeric quantities are carried as decimal strings so reports never pass
/// through binary floating point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    /// Short human pointer to the identity being checked.
    pub anchor: String,
    pub kind: CheckKind,
    pub passed: bool,
    pub params: BTreeMap<String, String>,
    /// Worst residual (numeric checks only).
    pub residual: Option<String>,
    pub tolerance: Option<String>,
    /// First exponent, index or sample where an exact check failed.
    pub first_mismatch: Option<String>,
    pub details: BTreeMap<String, String>,
}

impl CheckResult {
    pub fn exact(name: &str, anchor: &str, passed: bool) -> Self {
        CheckResult {
            name: name.to_owned(),
            anchor: anchor.to_owned(),
            kind: CheckKind::Exact,
            passed,
            params: BTreeMap::new(),
            residual: None,
            tolerance: None,
            first_mismatch: None,
            details: BTreeMap::new(),
        }
    }

    pub fn numeric(
        name: &str,
        anchor: &str,
        passed: bool,
        residual: String,
        tolerance: String,
    ) -> Self {
        CheckResult {
            kind: CheckKind::Numeric,
            residual: Some(residual),
            tolerance: Some(tolerance),
            ..Self::exact(name, anchor, passed)
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn detail(mut self, key: &str, value: impl ToString) -> Self {
        self.details.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn mismatch(mut self, at: Option<impl ToString>) -> Self {
        if let Some(at) = at {
            self.passed = false;
            self.first_mismatch = Some(at.to_string());
        }
        self
    }

    /// Folds a sub-condition into the pass flag.
    pub fn require(mut self, cond: bool) -> Self {
        self.passed &= cond;
        self
    }
}
