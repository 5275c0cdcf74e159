//! Nested-sum form of a Hessenbergian whose superdiagonal is all `-1`.
//!
//! ```text
//! det H_k = h[k,1] + sum_{j=2}^{k} sum_{k1=j}^{k} sum_{k2=j-1}^{k1-1} ... sum_{k_{j-1}=2}^{k_{j-2}-1}
//!             h[k,k1] * prod_{m=2}^{j-1} h[k_{m-1}-1, k_m] * h[k_{j-1}-1, 1]
//! ```
//!
//! Only entries on or below the diagonal are read.

use crate::error::{check_limit, Error, Result};
use crate::hessenberg::LowerHessenberg;
use crate::scalar::Ring;

/// Evaluates the nested sum of order `k` over the entry accessor `h`.
///
/// The `j-1` summation indices are advanced as an odometer; a running
/// prefix product per level lets a branch be skipped as soon as it hits an
/// exact zero.
pub fn nested_sum_with<R: Ring>(
    k: usize,
    mut h: impl FnMut(usize, usize) -> Result<R>,
) -> Result<R> {
    if k == 0 {
        return Ok(R::one());
    }
    let mut acc = h(k, 1)?;
    for j in 2..=k {
        let n = j - 1;
        // idx[m] holds k_{m+1}, ranging over [j - m, upper(m)]
        let mut idx = vec![0usize; n];
        let mut prefix = vec![R::one(); n + 1];
        let mut level = 0;
        idx[0] = j - 1;
        loop {
            idx[level] += 1;
            let upper = if level == 0 { k } else { idx[level - 1] - 1 };
            if idx[level] > upper {
                if level == 0 {
                    break;
                }
                level -= 1;
                continue;
            }
            let factor = if level == 0 {
                h(k, idx[0])?
            } else {
                h(idx[level - 1] - 1, idx[level])?
            };
            let p = prefix[level].mul(&factor);
            if p.is_exact_zero() {
                continue;
            }
            prefix[level + 1] = p;
            if level + 1 == n {
                let last = h(idx[n - 1] - 1, 1)?;
                acc = acc.add(&prefix[n].mul(&last));
            } else {
                level += 1;
                idx[level] = j - level - 1;
            }
        }
    }
    Ok(acc)
}

/// Hessenbergian by nested sums. Every superdiagonal entry must be exactly
/// `-1`.
pub fn det_nested_sum<R: Ring>(m: &impl LowerHessenberg<R>, enum_limit: usize) -> Result<R> {
    let k = m.order();
    check_limit("enumeration order", k, enum_limit)?;
    let minus_one = R::one().neg();
    if let Some(row) = (1..k).find(|&i| m.h(i, i + 1) != minus_one) {
        return Err(Error::Superdiagonal { row });
    }
    nested_sum_with(k, |i, j| Ok(m.h(i, j)))
}
