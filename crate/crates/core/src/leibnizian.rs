//! Compact `2^(k-1)`-term representation of Hessenbergians.
//!
//! A non-trivial signed elementary product (SEP) of a `k`-th order lower
//! Hessenberg determinant picks, in each row `i`, either the superdiagonal
//! entry `c[i,i+1]` (a *non-standard* factor) or an entry on/below the
//! diagonal (a *standard* factor). Writing `0` for non-standard and `1` for
//! standard gives a 0/1 array `r` with `r_k = 1`, and that array determines
//! the SEP uniquely: a standard factor in row `i` preceded by `j`
//! consecutive non-standard factors sits in column `i - j`.
//!
//! The integer index `m` in `0..2^(k-1)` enumerates those arrays through
//! its binary expansion, so
//!
//! ```text
//! det H_k = sum_{m=0}^{2^(k-1)-1} prod_{j=1}^{k} c[j, sigma_{k,j}(m)]
//! ```
//!
//! with `sigma_{k,j} = z_{k,j} . tau_k`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{check_limit, Error, Result};
use crate::hessenberg::{LowerHessenberg, Permutation};
use crate::scalar::{Atom, Ring, TermSum};

/// Default guard on the order of anything that enumerates `2^(k-1)` terms.
pub const DEFAULT_ENUM_LIMIT: usize = 24;

/// Element of `R_k`: a 0/1 array of length `k >= 1` whose last entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SepIndexArray(Vec<u8>);

impl SepIndexArray {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidSep("index array must be non-empty".into()));
        }
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidSep(format!("{bits:?} is not a 0/1 array")));
        }
        if bits[bits.len() - 1] != 1 {
            return Err(Error::InvalidSep(format!("{bits:?} must end in 1")));
        }
        Ok(SepIndexArray(bits))
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    /// Component `r_i`, 1-based. `r_0` reads as 1.
    pub fn get(&self, i: usize) -> u8 {
        if i == 0 {
            1
        } else {
            self.0[i - 1]
        }
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    /// Inverse of [`tau`]: reads `r_1..r_{k-1}` as a binary numeral.
    pub fn to_index(&self) -> u64 {
        self.0[..self.0.len() - 1]
            .iter()
            .fold(0, |acc, &b| (acc << 1) | u64::from(b))
    }
}

fn max_index(k: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::domain("order k must be at least 1"));
    }
    if k > 64 {
        return Err(Error::LimitExceeded {
            what: "index width k",
            requested: k,
            limit: 64,
        });
    }
    Ok(if k == 64 { u64::MAX } else { (1u64 << (k - 1)) - 1 })
}

/// Inner building function: `tau_k(m)` is the `(k-1)`-bit binary expansion
/// of `m`, most significant bit first, with a 1 appended.
pub fn tau(k: usize, m: u64) -> Result<SepIndexArray> {
    let max = max_index(k)?;
    if m > max {
        return Err(Error::domain(format!("m = {m} is outside 0..={max} for k = {k}")));
    }
    let bits = (1..=k)
        .map(|i| {
            if i == k {
                1
            } else {
                // floor(m / 2^(k-1-i)) mod 2
                ((m >> (k - 1 - i)) % 2) as u8
            }
        })
        .collect();
    Ok(SepIndexArray(bits))
}

/// Number of consecutive zeros immediately preceding `r_i`, or -1 when
/// `r_i = 0`.
pub fn zeta(i: usize, r: &SepIndexArray) -> i64 {
    assert!((1..=r.k()).contains(&i), "position {i} outside 1..={}", r.k());
    if r.get(i) == 0 {
        return -1;
    }
    (1..i).rev().take_while(|&m| r.get(m) == 0).count() as i64
}

/// Closed form of [`zeta`]: `r_i (i - max_{0<=j<i} j r_j) - 1`, where the
/// `j = 0` slot is the augmented entry `0 * r_0` standing in for `max {} = 0`.
pub fn zeta_elementary(i: usize, r: &SepIndexArray) -> i64 {
    assert!((1..=r.k()).contains(&i), "position {i} outside 1..={}", r.k());
    let last = (0..i).map(|j| j * usize::from(r.get(j))).max().unwrap_or(0);
    i64::from(r.get(i)) * (i as i64 - last as i64) - 1
}

/// Outer building function: column of the `i`-th factor, `i - zeta(i, r)`.
pub fn z_index(i: usize, r: &SepIndexArray) -> usize {
    (i as i64 - zeta_elementary(i, r)) as usize
}

/// `sigma_{k,i}(m) = z_{k,i}(tau_k(m))`.
pub fn sigma(k: usize, i: usize, m: u64) -> Result<usize> {
    if !(1..=k).contains(&i) {
        return Err(Error::domain(format!("position {i} outside 1..={k}")));
    }
    Ok(z_index(i, &tau(k, m)?))
}

/// Column indices `(sigma_{k,1}(m), ..., sigma_{k,k}(m))` computed in one
/// left-to-right pass: a standard factor lands one column right of the
/// previous standard row.
fn columns_into(k: usize, m: u64, out: &mut Vec<usize>) {
    out.clear();
    let mut last_standard = 0;
    for i in 1..=k {
        let bit = if i == k { 1 } else { (m >> (k - 1 - i)) & 1 };
        if bit == 0 {
            out.push(i + 1);
        } else {
            out.push(last_standard + 1);
            last_standard = i;
        }
    }
}

/// A non-trivial SEP: column choice per row, its sign and the resolved
/// `h` atoms (so one enumerator serves evaluation and printing).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SepTerm {
    columns: Vec<usize>,
    sign: i8,
    atoms: Vec<Atom>,
}

impl SepTerm {
    /// Validates that `columns` is a permutation with `columns[i] <= i + 1`.
    pub fn from_columns(columns: Vec<usize>) -> Result<Self> {
        Permutation::new(columns.clone())?;
        if let Some((i, &c)) = columns.iter().enumerate().find(|(i, &c)| c > i + 2) {
            return Err(Error::InvalidSep(format!(
                "factor {} uses trivial entry ({}, {c})",
                i + 1,
                i + 1
            )));
        }
        Ok(Self::from_valid_columns(columns))
    }

    fn from_valid_columns(columns: Vec<usize>) -> Self {
        let non_standard = columns
            .iter()
            .enumerate()
            .filter(|&(i, &c)| c == i + 2)
            .count();
        let atoms = columns
            .iter()
            .enumerate()
            .map(|(i, &j)| Atom::H { i: i + 1, j })
            .collect();
        SepTerm {
            columns,
            sign: if non_standard % 2 == 0 { 1 } else { -1 },
            atoms,
        }
    }

    pub fn k(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[usize] {
        &self.columns
    }

    /// `(-1)^(number of non-standard factors)`.
    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn permutation(&self) -> Permutation {
        Permutation::new(self.columns.clone()).expect("validated on construction")
    }

    pub fn to_term_sum(&self) -> TermSum {
        TermSum::monomial(i64::from(self.sign), self.atoms.clone())
    }

    /// `prod_i c[i, sigma_i]` for a concrete matrix.
    pub fn evaluate<R: Ring>(&self, m: &impl LowerHessenberg<R>) -> R {
        self.columns
            .iter()
            .enumerate()
            .fold(R::one(), |acc, (i, &j)| acc.mul(&m.c(i + 1, j)))
    }
}

impl fmt::Display for SepTerm {
    /// `-h[1,2] h[2,3] h[3,4] h[4,1]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            f.write_str("-")?;
        }
        for (n, a) in self.atoms.iter().enumerate() {
            if n > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// `f_k`: classifies each factor of a non-trivial SEP as standard (1) or
/// non-standard (0).
pub fn f_forward(columns: &[usize]) -> Result<SepIndexArray> {
    let term = SepTerm::from_columns(columns.to_vec())?;
    let bits = term
        .columns
        .iter()
        .enumerate()
        .map(|(i, &c)| u8::from(c != i + 2))
        .collect();
    SepIndexArray::new(bits)
}

/// `f_k^{-1}`: the unique non-trivial SEP with factor `c[i, z_{k,i}(r)]`
/// in row `i`.
pub fn f_inverse(r: &SepIndexArray) -> SepTerm {
    let columns = (1..=r.k()).map(|i| z_index(i, r)).collect();
    SepTerm::from_valid_columns(columns)
}

/// All `2^(k-1)` non-trivial SEPs of order `k`, in ascending `m`.
pub fn enumerate_seps(k: usize, enum_limit: usize) -> Result<impl Iterator<Item = SepTerm>> {
    check_limit("enumeration order", k, enum_limit)?;
    let max = max_index(k)?;
    Ok((0..=max).map(move |m| {
        let mut cols = Vec::with_capacity(k);
        columns_into(k, m, &mut cols);
        SepTerm::from_valid_columns(cols)
    }))
}

/// Hessenbergian by the compact representation, summed in ascending `m`.
/// The empty matrix gives 1.
pub fn det_leibnizian<R: Ring>(m: &impl LowerHessenberg<R>, enum_limit: usize) -> Result<R> {
    let k = m.order();
    if k == 0 {
        return Ok(R::one());
    }
    check_limit("enumeration order", k, enum_limit)?;
    let max = max_index(k)?;
    let mut cols = Vec::with_capacity(k);
    let mut acc = R::zero();
    for idx in 0..=max {
        columns_into(k, idx, &mut cols);
        let mut prod = R::one();
        for (i, &j) in cols.iter().enumerate() {
            prod = prod.mul(&m.c(i + 1, j));
            if prod.is_exact_zero() {
                break;
            }
        }
        if !prod.is_exact_zero() {
            acc = acc.add(&prod);
        }
    }
    Ok(acc)
}

/// Every non-trivial SEP of order `k`, found by direct search over
/// permutations with `sigma_i <= i + 1` (independent of the building
/// functions). Lexicographic order.
pub fn brute_force_seps(k: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, row: usize, used: &mut [bool], cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if row > k {
            out.push(cur.clone());
            return;
        }
        for col in 1..=(row + 1).min(k) {
            if !used[col - 1] {
                used[col - 1] = true;
                cur.push(col);
                go(k, row + 1, used, cur, out);
                cur.pop();
                used[col - 1] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(k, 1, &mut vec![false; k], &mut Vec::with_capacity(k), &mut out);
    out
}

/// Initial strings of length `n`: the distinct `n`-factor prefixes of
/// non-trivial SEPs, as `(row, column)` pairs, sorted.
pub fn initial_strings(n: usize) -> Vec<Vec<(usize, usize)>> {
    let set: BTreeSet<Vec<(usize, usize)>> = brute_force_seps(n + 1)
        .into_iter()
        .map(|cols| cols[..n].iter().enumerate().map(|(i, &c)| (i + 1, c)).collect())
        .collect();
    set.into_iter().collect()
}

/// Outcome of one exhaustive structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyCheck {
    pub name: &'static str,
    pub passed: bool,
    pub counterexample: Option<String>,
}

impl PropertyCheck {
    fn new(name: &'static str, counterexample: Option<String>) -> Self {
        PropertyCheck {
            name,
            passed: counterexample.is_none(),
            counterexample,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StringPropertyReport {
    pub k: usize,
    pub checks: Vec<PropertyCheck>,
}

impl StringPropertyReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn show(cols: &[usize]) -> String {
    cols.iter()
        .enumerate()
        .map(|(i, c)| format!("c[{},{c}]", i + 1))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Exhaustively checks the string structure of all non-trivial SEPs of
/// order `k` (found by direct search):
///
/// * P1: every non-trivial entry in rows `2..=k` occurs as the immediate
///   successor of some initial string;
/// * P2: a standard factor in row `i-1` is followed by column `i` or `i+1`;
/// * P3: a standard factor in row `i` whose preceding `j` factors are all
///   non-standard, themselves preceded by a standard factor (or the virtual
///   `c[0,0]`), sits in column `i - j`.
///
/// Also confirms the search found exactly `2^(k-1)` SEPs. Meant for
/// `k <= 12`.
pub fn validate_string_properties(k: usize) -> StringPropertyReport {
    let seps = if k == 0 { Vec::new() } else { brute_force_seps(k) };
    let standard = |cols: &[usize], i: usize| i == 0 || cols[i - 1] <= i;

    let count = {
        let expected = if k == 0 { 0 } else { 1usize << (k - 1) };
        let cx = (seps.len() != expected)
            .then(|| format!("found {} SEPs, expected {expected}", seps.len()));
        PropertyCheck::new("sep_count", cx)
    };

    let p1 = {
        let seen: BTreeSet<(usize, usize)> = seps
            .iter()
            .flat_map(|cols| cols.iter().enumerate().map(|(i, &c)| (i + 1, c)))
            .collect();
        let missing = (2..=k)
            .flat_map(|i| (1..=(i + 1).min(k)).map(move |j| (i, j)))
            .find(|e| !seen.contains(e));
        PropertyCheck::new(
            "p1_every_entry_is_a_successor",
            missing.map(|(i, j)| format!("c[{i},{j}] never occurs")),
        )
    };

    let p2 = {
        let bad = seps.iter().find_map(|cols| {
            (1..=k)
                .find(|&i| standard(cols, i - 1) && cols[i - 1] != i && cols[i - 1] != i + 1)
                .map(|i| format!("{}: row {i}", show(cols)))
        });
        PropertyCheck::new("p2_successor_of_standard", bad)
    };

    let p3 = {
        let bad = seps.iter().find_map(|cols| {
            let mut last_standard = 0;
            for i in 1..=k {
                if !standard(cols, i) {
                    continue;
                }
                let j = i - last_standard - 1;
                if cols[i - 1] != i - j {
                    return Some(format!("{}: row {i} after {j} non-standard", show(cols)));
                }
                last_standard = i;
            }
            None
        });
        PropertyCheck::new("p3_standard_after_run", bad)
    };

    StringPropertyReport {
        k,
        checks: vec![count, p1, p2, p3],
    }
}
