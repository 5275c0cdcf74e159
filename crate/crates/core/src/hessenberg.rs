//! Lower Hessenberg matrices and the two reference determinant evaluators:
//! the principal-minor recurrence and the permutation-sum oracle.
//!
//! All public indices are 1-based. A lower Hessenberg matrix of order `k`
//! has `h[i,j] = 0` whenever `j - i > 1`; those entries are never stored.
//! The `c` view negates the superdiagonal: `c[i,i+1] = -h[i,i+1]` and
//! `c[i,j] = h[i,j]` otherwise.

use serde_json::Value;

use crate::error::{check_limit, Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::{ParseScalar, Ring, TermSum, ToJson};

/// Default guard for [`det_leibniz_oracle`]; 9! = 362,880 permutations.
pub const DEFAULT_ORACLE_LIMIT: usize = 9;

/// Read access shared by dense and banded Hessenberg storage.
pub trait LowerHessenberg<R: Ring> {
    fn order(&self) -> usize;

    /// Entry `h[i,j]`, exact zero above the superdiagonal or outside the band.
    fn h(&self, i: usize, j: usize) -> R;

    /// Entry `c[i,j]`: the superdiagonal sign-flipped.
    fn c(&self, i: usize, j: usize) -> R {
        let v = self.h(i, j);
        if j == i + 1 {
            v.neg()
        } else {
            v
        }
    }

    /// Smallest column index that may hold a nonzero in row `i`.
    fn first_column(&self, _i: usize) -> usize {
        1
    }

    fn to_square(&self) -> SquareMatrix<R> {
        SquareMatrix::from_fn(self.order(), |i, j| self.h(i, j))
    }
}

fn check_index(k: usize, i: usize, j: usize) -> Result<()> {
    if i == 0 || j == 0 || i > k || j > k {
        return Err(Error::InvalidMatrix(format!(
            "index ({i},{j}) out of range for order {k}"
        )));
    }
    Ok(())
}

/// Dense lower Hessenberg matrix; row `i` stores columns `1..=min(i+1,k)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HessenbergMatrix<R> {
    k: usize,
    rows: Vec<Vec<R>>,
}

impl<R: Ring> HessenbergMatrix<R> {
    pub fn zeros(k: usize) -> Self {
        let rows = (1..=k).map(|i| vec![R::zero(); (i + 1).min(k)]).collect();
        HessenbergMatrix { k, rows }
    }

    /// Builds from `f(i, j)`, called only for `j <= i + 1`.
    pub fn from_fn(k: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        let rows = (1..=k)
            .map(|i| (1..=(i + 1).min(k)).map(|j| f(i, j)).collect())
            .collect();
        HessenbergMatrix { k, rows }
    }

    pub fn try_from_fn(k: usize, mut f: impl FnMut(usize, usize) -> Result<R>) -> Result<Self> {
        let mut rows = Vec::with_capacity(k);
        for i in 1..=k {
            let row = (1..=(i + 1).min(k)).map(|j| f(i, j)).collect::<Result<_>>()?;
            rows.push(row);
        }
        Ok(HessenbergMatrix { k, rows })
    }

    /// Rejects a nonzero entry above the superdiagonal.
    pub fn from_square(a: &SquareMatrix<R>) -> Result<Self> {
        let k = a.n();
        for i in 1..=k {
            for j in (i + 2)..=k {
                if !a.get(i, j).is_exact_zero() {
                    return Err(Error::InvalidMatrix(format!(
                        "entry ({i},{j}) lies above the superdiagonal but is nonzero"
                    )));
                }
            }
        }
        Ok(Self::from_fn(k, |i, j| a.get(i, j).clone()))
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) -> Result<()> {
        check_index(self.k, i, j)?;
        if j > i + 1 {
            return Err(Error::InvalidMatrix(format!(
                "entry ({i},{j}) lies above the superdiagonal"
            )));
        }
        self.rows[i - 1][j - 1] = value;
        Ok(())
    }
}

impl HessenbergMatrix<TermSum> {
    /// The generic matrix with `h[i,j]` as independent indeterminates.
    pub fn symbolic(k: usize) -> Self {
        Self::from_fn(k, TermSum::h)
    }
}

impl<R: ParseScalar> HessenbergMatrix<R> {
    /// Reads `{"k": int, "entries": [[i, j, scalar], ...]}`; omitted entries
    /// are zero.
    pub fn from_json(value: &Value) -> Result<Self> {
        let k = value
            .get("k")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("matrix needs a non-negative integer \"k\"".into()))?
            as usize;
        let entries = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("matrix needs an \"entries\" array".into()))?;
        let mut m = Self::zeros(k);
        for e in entries {
            let triple = e
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Error::Parse(format!("entry must be [i, j, value], got {e}")))?;
            let idx = |v: &Value| {
                v.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("bad index {v}")))
            };
            let (i, j) = (idx(&triple[0])?, idx(&triple[1])?);
            let x = R::parse_json(&triple[2])?;
            check_index(k, i, j)?;
            if j > i + 1 {
                if x.is_exact_zero() {
                    continue;
                }
                return Err(Error::InvalidMatrix(format!(
                    "entry ({i},{j}) lies above the superdiagonal but is nonzero"
                )));
            }
            m.set(i, j, x)?;
        }
        Ok(m)
    }
}

impl<R: Ring + ToJson> HessenbergMatrix<R> {
    /// Writes the stored (possibly zero) entries in row-major order.
    pub fn to_json(&self) -> Value {
        let mut entries = Vec::new();
        for (i, row) in self.rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !x.is_exact_zero() {
                    entries.push(serde_json::json!([i + 1, j + 1, x.to_json()]));
                }
            }
        }
        serde_json::json!({ "k": self.k, "entries": entries })
    }
}

impl<R: Ring> LowerHessenberg<R> for HessenbergMatrix<R> {
    fn order(&self) -> usize {
        self.k
    }

    fn h(&self, i: usize, j: usize) -> R {
        assert!(
            (1..=self.k).contains(&i) && (1..=self.k).contains(&j),
            "index ({i},{j}) out of range for order {}",
            self.k
        );
        self.rows[i - 1].get(j - 1).cloned().unwrap_or_else(R::zero)
    }
}

/// Banded lower Hessenberg matrix: upper bandwidth 1, lower bandwidth
/// `p - 1`, so `p + 1` stored diagonals. Entry `(i,j)` lives on stripe
/// `d = i - j + 1`, with `d = 0` the superdiagonal and `d = p` the lowest.
#[derive(Clone, Debug, PartialEq)]
pub struct BandedHessenbergMatrix<R> {
    k: usize,
    p: usize,
    stripes: Vec<Vec<R>>,
}

impl<R: Ring> BandedHessenbergMatrix<R> {
    pub fn zeros(k: usize, p: usize) -> Self {
        assert!(p >= 1, "band parameter p must be at least 1");
        BandedHessenbergMatrix {
            k,
            p,
            stripes: vec![vec![R::zero(); k]; p + 1],
        }
    }

    fn stripe(&self, i: usize, j: usize) -> Option<usize> {
        let d = i as isize - j as isize + 1;
        (0..=self.p as isize).contains(&d).then_some(d as usize)
    }

    /// Builds from `f(i, j)`, called only for in-band positions.
    pub fn try_from_fn(
        k: usize,
        p: usize,
        mut f: impl FnMut(usize, usize) -> Result<R>,
    ) -> Result<Self> {
        let mut m = Self::zeros(k, p);
        for i in 1..=k {
            for j in m.first_column(i)..=(i + 1).min(k) {
                m.stripes[i + 1 - j][i - 1] = f(i, j)?;
            }
        }
        Ok(m)
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) -> Result<()> {
        check_index(self.k, i, j)?;
        let d = self.stripe(i, j).ok_or_else(|| {
            Error::InvalidMatrix(format!("entry ({i},{j}) is outside the band"))
        })?;
        self.stripes[d][i - 1] = value;
        Ok(())
    }

    /// Number of nonzero diagonals, `p + 1`.
    pub fn total_bandwidth(&self) -> usize {
        self.p + 1
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.p - 1
    }

    pub fn to_dense(&self) -> HessenbergMatrix<R> {
        HessenbergMatrix::from_fn(self.k, |i, j| self.h(i, j))
    }
}

impl<R: Ring> LowerHessenberg<R> for BandedHessenbergMatrix<R> {
    fn order(&self) -> usize {
        self.k
    }

    #[inline]
    fn h(&self, i: usize, j: usize) -> R {
        assert!(
            (1..=self.k).contains(&i) && (1..=self.k).contains(&j),
            "index ({i},{j}) out of range for order {}",
            self.k
        );
        match self.stripe(i, j) {
            Some(d) => self.stripes[d][i - 1].clone(),
            None => R::zero(),
        }
    }

    fn first_column(&self, i: usize) -> usize {
        (i + 1).saturating_sub(self.p).max(1)
    }
}

/// Bijection of `{1..k}`, stored as images `sigma(1), ..., sigma(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k];
        for &x in &images {
            if x == 0 || x > k || std::mem::replace(&mut seen[x - 1], true) {
                return Err(Error::InvalidSep(format!("{images:?} is not a permutation of 1..={k}")));
            }
        }
        Ok(Permutation(images))
    }

    pub fn identity(k: usize) -> Self {
        Permutation((1..=k).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn inversions(&self) -> usize {
        let s = &self.0;
        (0..s.len())
            .map(|a| ((a + 1)..s.len()).filter(|&b| s[a] > s[b]).count())
            .sum()
    }

    /// `+1` for even permutations, `-1` for odd ones.
    pub fn signature(&self) -> i8 {
        if self.inversions().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }
}

/// Permutation-sum determinant: `sum over sigma of sgn(sigma) * prod a[i, sigma(i)]`.
///
/// Permutations are visited in lexicographic order by depth-first search;
/// a branch whose partial product is exactly zero contributes nothing and is
/// not descended. Errors when `k > limit`.
pub fn det_leibniz_oracle<R: Ring>(a: &SquareMatrix<R>, limit: usize) -> Result<R> {
    let k = a.n();
    check_limit("oracle order", k, limit)?;
    let mut used = vec![false; k];
    let mut acc = R::zero();
    oracle_step(a, 1, &R::one(), 0, &mut used, &mut acc);
    Ok(acc)
}

fn oracle_step<R: Ring>(
    a: &SquareMatrix<R>,
    row: usize,
    partial: &R,
    inversions: usize,
    used: &mut [bool],
    acc: &mut R,
) {
    let k = a.n();
    if row > k {
        *acc = if inversions.is_multiple_of(2) {
            acc.add(partial)
        } else {
            acc.sub(partial)
        };
        return;
    }
    for col in 1..=k {
        if used[col - 1] {
            continue;
        }
        let entry = a.get(row, col);
        if entry.is_exact_zero() {
            continue;
        }
        // earlier rows holding a larger column form an inversion with this one
        let new_inv = used[col..].iter().filter(|&&u| u).count();
        used[col - 1] = true;
        oracle_step(a, row + 1, &partial.mul(entry), inversions + new_inv, used, acc);
        used[col - 1] = false;
    }
}

/// `[det H_0, det H_1, ..., det H_k]` for the leading principal submatrices,
/// by the recurrence
/// `det H_n = h[n,n] det H_{n-1} + sum_{j<n} (-1)^{n-j} h[n,j] (prod_{i=j}^{n-1} h[i,i+1]) det H_{j-1}`.
///
/// Rows of a banded matrix only visit their in-band columns, so the cost is
/// `O(k * p)` ring operations.
pub fn leading_principal_chain<R: Ring>(m: &impl LowerHessenberg<R>) -> Vec<R> {
    let k = m.order();
    let mut chain = Vec::with_capacity(k + 1);
    chain.push(R::one());
    for n in 1..=k {
        let mut acc = m.h(n, n).mul(&chain[n - 1]);
        let mut superdiag = R::one();
        for j in (m.first_column(n)..n).rev() {
            superdiag = superdiag.mul(&m.h(j, j + 1));
            let hnj = m.h(n, j);
            if hnj.is_exact_zero() {
                continue;
            }
            let term = hnj.mul(&superdiag).mul(&chain[j - 1]);
            acc = if (n - j) % 2 == 1 {
                acc.sub(&term)
            } else {
                acc.add(&term)
            };
        }
        chain.push(acc);
    }
    chain
}

/// Determinant by the principal-minor recurrence; `det` of the empty matrix is 1.
pub fn det_recurrence<R: Ring>(m: &impl LowerHessenberg<R>) -> R {
    leading_principal_chain(m)
        .pop()
        .expect("chain always holds det H_0")
}

/// The same recurrence written over the `c` view, with no explicit signs:
/// `det H_n = sum_{j=1}^{n} c[n,j] (prod_{i=j}^{n-1} c[i,i+1]) det H_{j-1}`.
pub fn det_recurrence_c_view<R: Ring>(m: &impl LowerHessenberg<R>) -> R {
    let k = m.order();
    let mut chain = vec![R::one()];
    for n in 1..=k {
        let mut acc = R::zero();
        let mut superdiag = R::one();
        for j in (1..=n).rev() {
            if j < n {
                superdiag = superdiag.mul(&m.c(j, j + 1));
            }
            let term = m.c(n, j).mul(&superdiag).mul(&chain[j - 1]);
            acc = acc.add(&term);
        }
        chain.push(acc);
    }
    chain.pop().expect("non-empty chain")
}
