use std::fmt;

use super::{Backend, Float64, Rational, Ring, TermSum, ToJson};
use crate::error::{Error, Result};

/// Backend-tagged value, used at the boundaries (files, CLI, C ABI) where
/// the backend is a runtime choice. Arithmetic between different backends
/// is rejected.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Float64(Float64),
    Symbolic(TermSum),
}

impl Scalar {
    pub fn backend(&self) -> Backend {
        match self {
            Scalar::Rational(_) => Backend::Rational,
            Scalar::Float64(_) => Backend::Float64,
            Scalar::Symbolic(_) => Backend::Symbolic,
        }
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::BackendMismatch {
            left: self.backend().name(),
            right: other.backend().name(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a.add(b))),
            (Scalar::Float64(a), Scalar::Float64(b)) => Ok(Scalar::Float64(a.add(b))),
            (Scalar::Symbolic(a), Scalar::Symbolic(b)) => Ok(Scalar::Symbolic(a.add(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Ok(Scalar::Rational(a.mul(b))),
            (Scalar::Float64(a), Scalar::Float64(b)) => Ok(Scalar::Float64(a.mul(b))),
            (Scalar::Symbolic(a), Scalar::Symbolic(b)) => Ok(Scalar::Symbolic(a.mul(b))),
            _ => Err(self.mismatch(other)),
        }
    }

    /// Exact zero test, except floats which use the default 1e-12 floor.
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(a) => a.is_zero(),
            Scalar::Float64(a) => a.is_zero(),
            Scalar::Symbolic(a) => a.is_zero(),
        }
    }

    /// Like [`Scalar::is_zero`] with a caller-supplied float tolerance.
    pub fn is_zero_with(&self, abs_tol: f64) -> bool {
        match self {
            Scalar::Float64(a) => a.is_zero_with(abs_tol),
            other => other.is_zero(),
        }
    }
}

impl From<Rational> for Scalar {
    fn from(value: Rational) -> Self {
        Scalar::Rational(value)
    }
}

impl From<Float64> for Scalar {
    fn from(value: Float64) -> Self {
        Scalar::Float64(value)
    }
}

impl From<TermSum> for Scalar {
    fn from(value: TermSum) -> Self {
        Scalar::Symbolic(value)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(a) => a.fmt(f),
            Scalar::Float64(a) => a.fmt(f),
            Scalar::Symbolic(a) => a.fmt(f),
        }
    }
}

impl ToJson for Scalar {
    fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(a) => a.to_json(),
            Scalar::Float64(a) => a.to_json(),
            Scalar::Symbolic(a) => a.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_backend_arithmetic() {
        let a = Scalar::from(Rational::new(1, 2).unwrap());
        let b = Scalar::from(Rational::new(1, 3).unwrap());
        assert_eq!(a.add(&b).unwrap(), Scalar::from(Rational::new(5, 6).unwrap()));
        assert_eq!(
            Scalar::from(Float64(0.25)).add(&Scalar::from(Float64(0.5))).unwrap(),
            Scalar::from(Float64(0.75))
        );
    }

    #[test]
    fn mixing_backends_is_an_error() {
        let a = Scalar::from(Rational::from_integer(1));
        let b = Scalar::from(Float64(1.0));
        assert!(matches!(a.add(&b), Err(Error::BackendMismatch { .. })));
        assert!(matches!(
            b.mul(&Scalar::from(TermSum::h(1, 1))),
            Err(Error::BackendMismatch { left: "float64", right: "symbolic" })
        ));
    }

    #[test]
    fn zero_tests() {
        assert!(Scalar::from(Rational::from_integer(0)).is_zero());
        assert!(Scalar::from(TermSum::default()).is_zero());
        assert!(Scalar::from(Float64(1e-15)).is_zero());
        assert!(!Scalar::from(Float64(1e-15)).is_zero_with(1e-18));
    }
}
