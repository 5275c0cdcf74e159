use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Backend, ParseScalar, Ring, ToJson};
use crate::error::{Error, Result};

/// Absolute floor for float comparisons and the default zero test.
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
/// Relative tolerance for float comparisons.
pub const DEFAULT_REL_TOL: f64 = 1e-9;

/// `|a - b| <= max(abs_tol, rel_tol * max(|a|, |b|))`.
pub fn approx_eq(a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> bool {
    if a == b {
        return true;
    }
    let scale = a.abs().max(b.abs());
    (a - b).abs() <= abs_tol.max(rel_tol * scale)
}

/// IEEE-754 binary64 value.
#[derive(Clone, Copy, PartialEq, PartialOrd, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Float64(pub f64);

impl Float64 {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero_with(self, abs_tol: f64) -> bool {
        self.0.abs() <= abs_tol
    }
}

impl From<f64> for Float64 {
    fn from(value: f64) -> Self {
        Float64(value)
    }
}

impl fmt::Display for Float64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for Float64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(&self.0, f)
    }
}

impl Ring for Float64 {
    const BACKEND: Backend = Backend::Float64;

    fn zero() -> Self {
        Float64(0.0)
    }

    fn one() -> Self {
        Float64(1.0)
    }

    fn from_i64(n: i64) -> Self {
        Float64(n as f64)
    }

    #[inline]
    fn add(&self, rhs: &Self) -> Self {
        Float64(self.0 + rhs.0)
    }

    #[inline]
    fn mul(&self, rhs: &Self) -> Self {
        Float64(self.0 * rhs.0)
    }

    #[inline]
    fn neg(&self) -> Self {
        Float64(-self.0)
    }

    #[inline]
    fn sub(&self, rhs: &Self) -> Self {
        Float64(self.0 - rhs.0)
    }

    fn is_zero(&self) -> bool {
        self.is_zero_with(DEFAULT_ABS_TOL)
    }

    fn is_exact_zero(&self) -> bool {
        self.0 == 0.0
    }

    fn approx_eq(&self, other: &Self) -> bool {
        approx_eq(self.0, other.0, DEFAULT_REL_TOL, DEFAULT_ABS_TOL)
    }
}

impl ToJson for Float64 {
    fn to_json(&self) -> serde_json::Value {
        serde_json::Number::from_f64(self.0)
            .map(serde_json::Value::Number)
            .unwrap_or_else(|| serde_json::Value::String(self.0.to_string()))
    }
}

impl ParseScalar for Float64 {
    /// JSON numbers, or strings holding a decimal or `a/b`.
    fn parse_json(value: &serde_json::Value) -> Result<Self> {
        match value {
            serde_json::Value::Number(n) => n
                .as_f64()
                .map(Float64)
                .ok_or_else(|| Error::Parse(format!("not a finite number: {n}"))),
            serde_json::Value::String(s) => {
                let s = s.trim();
                if let Some((n, d)) = s.split_once('/') {
                    let n: f64 = n.trim().parse().map_err(|_| bad_float(s))?;
                    let d: f64 = d.trim().parse().map_err(|_| bad_float(s))?;
                    if d == 0.0 {
                        return Err(Error::Parse(format!("zero denominator in {s:?}")));
                    }
                    Ok(Float64(n / d))
                } else {
                    s.parse().map(Float64).map_err(|_| bad_float(s))
                }
            }
            other => Err(Error::Parse(format!("expected a number, got {other}"))),
        }
    }
}

fn bad_float(s: &str) -> Error {
    Error::Parse(format!("not a number: {s:?}"))
}
