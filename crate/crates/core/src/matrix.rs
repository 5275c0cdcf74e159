//! Small dense square matrices (companion, Casorati and oracle inputs).

use crate::error::{Error, Result};
use crate::scalar::{Ring, ToJson};

#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<R> {
    n: usize,
    data: Vec<R>,
}

impl<R: Ring> SquareMatrix<R> {
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![R::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 1..=n {
            m.set(i, i, R::one());
        }
        m
    }

    /// Builds from a 1-based entry function.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                data.push(f(i, j));
            }
        }
        SquareMatrix { n, data }
    }

    pub fn try_from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Result<R>) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 1..=n {
            for j in 1..=n {
                data.push(f(i, j)?);
            }
        }
        Ok(SquareMatrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let n = rows.len();
        if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
            return Err(Error::InvalidMatrix(format!(
                "row {} has {} entries, expected {n}",
                i + 1,
                r.len()
            )));
        }
        Ok(SquareMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based access.
    pub fn get(&self, i: usize, j: usize) -> &R {
        assert!(
            (1..=self.n).contains(&i) && (1..=self.n).contains(&j),
            "index ({i},{j}) out of range for order {}",
            self.n
        );
        &self.data[(i - 1) * self.n + (j - 1)]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        assert!((1..=self.n).contains(&i) && (1..=self.n).contains(&j));
        self.data[(i - 1) * self.n + (j - 1)] = value;
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "order mismatch");
        let n = self.n;
        Self::from_fn(n, |i, j| {
            let mut acc = R::zero();
            for l in 1..=n {
                let a = self.get(i, l);
                if a.is_exact_zero() {
                    continue;
                }
                acc = acc.add(&a.mul(rhs.get(l, j)));
            }
            acc
        })
    }

    pub fn rows(&self) -> impl Iterator<Item = &[R]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    /// Entrywise comparison with the backend's equality tolerance.
    pub fn approx_eq(&self, other: &Self) -> bool {
        self.n == other.n && self.data.iter().zip(&other.data).all(|(a, b)| a.approx_eq(b))
    }
}

impl<R: Ring + ToJson> SquareMatrix<R> {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.rows()
                .map(|r| serde_json::Value::Array(r.iter().map(ToJson::to_json).collect()))
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn product() {
        let a = SquareMatrix::from_rows(vec![vec![q(1), q(2)], vec![q(3), q(4)]]).unwrap();
        let b = SquareMatrix::from_rows(vec![vec![q(0), q(1)], vec![q(1), q(0)]]).unwrap();
        let ab = a.mul(&b);
        assert_eq!(ab.rows().collect::<Vec<_>>(), vec![&[q(2), q(1)][..], &[q(4), q(3)][..]]);
        assert_eq!(a.mul(&SquareMatrix::identity(2)), a);
    }

    #[test]
    fn ragged_rows_rejected() {
        assert!(SquareMatrix::from_rows(vec![vec![q(1)], vec![q(1), q(2)]]).is_err());
    }

    #[test]
    fn empty_matrix() {
        let m: SquareMatrix<Rational> = SquareMatrix::zeros(0);
        assert_eq!(m.rows().count(), 0);
    }
}
