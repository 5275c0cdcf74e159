//! Arithmetic backends.
//!
//! Every evaluator in this crate is generic over [`Ring`], so the same code
//! runs over exact rationals ([`Rational`]), IEEE-754 doubles ([`Float64`])
//! and symbolic sums of signed monomials ([`TermSum`]). Backends are chosen
//! at construction time and never coerced into one another; the dynamic
//! [`Scalar`] carrier reports a mix as [`crate::Error::BackendMismatch`].

mod dynamic;
mod float;
mod rational;
mod term_sum;

pub use dynamic::Scalar;
pub use float::{approx_eq, Float64, DEFAULT_ABS_TOL, DEFAULT_REL_TOL};
pub use rational::Rational;
pub use term_sum::{Atom, SignedTerm, TermSum};

use std::fmt;

use crate::error::Result;

/// Tag naming the arithmetic backend of a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Float64,
    Symbolic,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Rational => "rational",
            Backend::Float64 => "float64",
            Backend::Symbolic => "symbolic",
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Commutative ring with unit. Values are immutable; every operation
/// returns a fresh value.
pub trait Ring: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    const BACKEND: Backend;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;

    fn add(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Zero test. Exact for rational and symbolic values; `|x| <= 1e-12`
    /// for floats.
    fn is_zero(&self) -> bool;

    /// True only for an exact zero, even in floating point.
    fn is_exact_zero(&self) -> bool {
        self.is_zero()
    }

    /// Equality used by cross-checks: exact, except for floats where the
    /// default relative/absolute tolerance applies.
    fn approx_eq(&self, other: &Self) -> bool {
        self == other
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Sum of an iterator of ring elements.
pub fn sum<'a, R: Ring>(items: impl IntoIterator<Item = &'a R>) -> R {
    items.into_iter().fold(R::zero(), |acc, x| acc.add(x))
}

/// Product of an iterator of ring elements.
pub fn product<'a, R: Ring>(items: impl IntoIterator<Item = &'a R>) -> R {
    items.into_iter().fold(R::one(), |acc, x| acc.mul(x))
}

/// JSON rendering used by the CLI and the C ABI.
pub trait ToJson {
    fn to_json(&self) -> serde_json::Value;
}

/// Numeric backends that can be read from coefficient, problem and matrix
/// files. Symbolic values never come from files.
pub trait ParseScalar: Ring + Sized {
    fn parse_json(value: &serde_json::Value) -> Result<Self>;
}
