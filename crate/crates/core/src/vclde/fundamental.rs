//! Fundamental solutions, the Green's function and the companion-matrix
//! view.

use crate::error::{check_limit, Error, Result};
use crate::hessenberg::{det_leibniz_oracle, det_recurrence, BandedHessenbergMatrix, DEFAULT_ORACLE_LIMIT};
use crate::leibnizian::enumerate_seps;
use crate::matrix::SquareMatrix;
use crate::nested_sum::nested_sum_with;
use crate::scalar::Ring;

use super::model::CoefficientModel;

/// Evaluator for the Green's function `H(t,s)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GreenMethod {
    /// Banded principal-minor recurrence, `O((t-s) p)`.
    Recurrence,
    /// `2^(t-s-1)`-term compact representation.
    Leibnizian,
    /// Nested-sum representation.
    Nested,
    /// Top-left entry of the companion-matrix product.
    Companion,
}

impl GreenMethod {
    pub const ALL: [GreenMethod; 4] = [
        GreenMethod::Recurrence,
        GreenMethod::Leibnizian,
        GreenMethod::Nested,
        GreenMethod::Companion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GreenMethod::Recurrence => "recurrence",
            GreenMethod::Leibnizian => "leibnizian",
            GreenMethod::Nested => "nested",
            GreenMethod::Companion => "companion",
        }
    }
}

pub(crate) fn check_anchor<R: Ring>(model: &(impl CoefficientModel<R> + ?Sized), s: i64) -> Result<()> {
    let first = s - model.order() as i64 + 1;
    if model.domain().contains(first) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "anchor s = {s} needs y_{first} inside coefficient domain {}",
            model.domain()
        )))
    }
}

fn check_branch<R: Ring>(model: &(impl CoefficientModel<R> + ?Sized), m: usize) -> Result<()> {
    let p = model.order();
    if (1..=p).contains(&m) {
        Ok(())
    } else {
        Err(Error::domain(format!("branch index m = {m} outside 1..={p}")))
    }
}

/// `Some(value)` when `t` lies in the initial window `[s-p+1, s]`, where
/// `xi^(m)_{t,s}` is 1 at `t = s-m+1` and 0 elsewhere.
fn window_value<R: Ring>(p: usize, m: usize, t: i64, s: i64) -> Result<Option<R>> {
    if t < s - p as i64 + 1 {
        return Err(Error::domain(format!(
            "t = {t} precedes the initial window starting at {}",
            s - p as i64 + 1
        )));
    }
    if t > s {
        return Ok(None);
    }
    Ok(Some(if t == s - m as i64 + 1 { R::one() } else { R::zero() }))
}

/// `Phi^(m)_{t,s}`: the order `t-s` banded matrix with superdiagonal `-1`,
/// first column `phi_{i-1+m}(s+i)` for `i <= p-m+1` (zero below) and
/// `phi_{i-j+1}(s+i)` elsewhere in the band.
pub fn build_phi_matrix<R: Ring>(
    model: &(impl CoefficientModel<R> + ?Sized),
    m: usize,
    t: i64,
    s: i64,
) -> Result<BandedHessenbergMatrix<R>> {
    check_branch(model, m)?;
    if t <= s {
        return Err(Error::domain(format!("need t > s, got t = {t}, s = {s}")));
    }
    let p = model.order();
    BandedHessenbergMatrix::try_from_fn((t - s) as usize, p, |i, j| {
        let row_t = s + i as i64;
        if j == i + 1 {
            model.phi_ext(0, row_t)
        } else if j == 1 {
            if i + m <= p + 1 {
                model.phi(i - 1 + m, row_t)
            } else {
                model.phi_ext(p + 1, row_t)
            }
        } else {
            model.phi_ext(i - j + 1, row_t)
        }
    })
}

/// Fundamental solution `xi^(m)_{t,s}`, for `t >= s-p+1`.
pub fn xi<R: Ring>(model: &(impl CoefficientModel<R> + ?Sized), m: usize, t: i64, s: i64) -> Result<R> {
    check_branch(model, m)?;
    check_anchor(model, s)?;
    if let Some(v) = window_value(model.order(), m, t, s)? {
        return Ok(v);
    }
    Ok(det_recurrence(&build_phi_matrix(model, m, t, s)?))
}

/// One-sided Green's function `H(t,s) = xi^(1)_{t,s}`.
pub fn green<R: Ring>(model: &(impl CoefficientModel<R> + ?Sized), t: i64, s: i64) -> Result<R> {
    xi(model, 1, t, s)
}

/// `H(t,s)` by the compact representation: each non-trivial SEP of order
/// `k = t-s` contributes `prod_i phi_{i-sigma_i+1}(s+i)`, with the
/// superdiagonal (`sigma_i = i+1`) read in the c view as `+1`.
pub fn green_leibnizian<R: Ring>(
    model: &(impl CoefficientModel<R> + ?Sized),
    t: i64,
    s: i64,
    enum_limit: usize,
) -> Result<R> {
    check_anchor(model, s)?;
    if let Some(v) = window_value(model.order(), 1, t, s)? {
        return Ok(v);
    }
    let k = (t - s) as usize;
    check_limit("t - s", k, enum_limit)?;
    let p = model.order();
    // phi_d(s+i) for d = 1..=min(i, p)
    let table = (1..=k)
        .map(|i| {
            (1..=i.min(p))
                .map(|d| model.phi(d, s + i as i64))
                .collect::<Result<Vec<R>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut acc = R::zero();
    'terms: for term in enumerate_seps(k, enum_limit)? {
        let mut prod = R::one();
        for (row, &col) in term.columns().iter().enumerate() {
            let i = row + 1;
            if col == i + 1 {
                continue;
            }
            let d = i - col + 1;
            if d > p {
                continue 'terms;
            }
            prod = prod.mul(&table[row][d - 1]);
            if prod.is_exact_zero() {
                continue 'terms;
            }
        }
        acc = acc.add(&prod);
    }
    Ok(acc)
}

/// `H(t,s)` by the nested-sum representation over `h[i,j] = phi_{i-j+1}(s+i)`.
pub fn green_nested_sum<R: Ring>(
    model: &(impl CoefficientModel<R> + ?Sized),
    t: i64,
    s: i64,
    enum_limit: usize,
) -> Result<R> {
    check_anchor(model, s)?;
    if let Some(v) = window_value(model.order(), 1, t, s)? {
        return Ok(v);
    }
    let k = (t - s) as usize;
    check_limit("t - s", k, enum_limit)?;
    nested_sum_with(k, |i, j| model.phi_ext(i - j + 1, s + i as i64))
}

/// `H(t,s)` as the top-left entry of `F_{t,s}`.
pub fn green_companion<R: Ring>(model: &(impl CoefficientModel<R> + ?Sized), t: i64, s: i64) -> Result<R> {
    check_anchor(model, s)?;
    if let Some(v) = window_value(model.order(), 1, t, s)? {
        return Ok(v);
    }
    Ok(companion_product(model, t, s)?.get(1, 1).clone())
}

pub fn green_by<R: Ring>(
    model: &(impl CoefficientModel<R> + ?Sized),
    t: i64,
    s: i64,
    method: GreenMethod,
    enum_limit: usize,
) -> Result<R> {
    match method {
        GreenMethod::Recurrence => green(model, t, s),
        GreenMethod::Leibnizian => green_leibnizian(model, t, s, enum_limit),
        GreenMethod::Nested => green_nested_sum(model, t, s, enum_limit),
        GreenMethod::Companion => green_companion(model, t, s),
    }
}

/// `xi^(m)_{t,s} = sum_{j=1}^{p-m+1} phi_{m+j-1}(s+j) H(t,s+j)`, for `t > s`.
pub fn xi_via_green<R: Ring>(
    model: &(impl CoefficientModel<R> + ?Sized),
    m: usize,
    t: i64,
    s: i64,
) -> Result<R> {
    check_branch(model, m)?;
    check_anchor(model, s)?;
    if t <= s {
        return Err(Error::domain(format!("need t > s, got t = {t}, s = {s}")));
    }
    let p = model.order();
    let mut acc = R::zero();
    for j in 1..=(p - m + 1) {
        let u = s + j as i64;
        let h = green(model, t, u)?;
        if h.is_exact_zero() {
            continue;
        }
        acc = acc.add(&model.phi(m + j - 1, u)?.mul(&h));
    }
    Ok(acc)
}

/// Companion matrix `Gamma_t`: first row `phi_1(t), ..., phi_p(t)`, ones
/// on the subdiagonal.
pub fn companion<R: Ring>(model: &(impl CoefficientModel<R> + ?Sized), t: i64) -> Result<SquareMatrix<R>> {
    let p = model.order();
    SquareMatrix::try_from_fn(p, |i, j| {
        if i == 1 {
            model.phi(j, t)
        } else if i == j + 1 {
            Ok(R::one())
        } else {
            Ok(R::zero())
        }
    })
}

/// `F_{t,s} = Gamma_t Gamma_{t-1} ... Gamma_{s+1}`; the identity when `t = s`.
pub fn companion_product<R: Ring>(
    model: &(impl CoefficientModel<R> + ?Sized),
    t: i64,
    s: i64,
) -> Result<SquareMatrix<R>> {
    check_anchor(model, s)?;
    if t < s {
        return Err(Error::domain(format!("need t >= s, got t = {t}, s = {s}")));
    }
    let mut f = SquareMatrix::identity(model.order());
    for u in s + 1..=t {
        f = companion(model, u)?.mul(&f);
    }
    Ok(f)
}

/// Casorati matrix `Xi_{t,s}` with entry `(i,j) = xi^(j)_{t-i+1,s}`.
pub fn casorati<R: Ring>(model: &(impl CoefficientModel<R> + ?Sized), t: i64, s: i64) -> Result<SquareMatrix<R>> {
    check_anchor(model, s)?;
    if t < s {
        return Err(Error::domain(format!("need t >= s, got t = {t}, s = {s}")));
    }
    SquareMatrix::try_from_fn(model.order(), |i, j| xi(model, j, t - i as i64 + 1, s))
}

/// `det Xi_{t,s}`, expanded exactly. Orders above 9 are refused.
pub fn casoratian<R: Ring>(model: &(impl CoefficientModel<R> + ?Sized), t: i64, s: i64) -> Result<R> {
    det_leibniz_oracle(&casorati(model, t, s)?, DEFAULT_ORACLE_LIMIT)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessenberg::LowerHessenberg;
    use crate::scalar::{Rational, TermSum};
    use crate::vclde::model::{ConstantModel, SymbolicModel, TableModel};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn phi(m: usize, t: i64) -> TermSum {
        TermSum::phi(m, t)
    }

    fn sym(p: usize) -> SymbolicModel {
        SymbolicModel::new(p).unwrap()
    }

    #[test]
    fn phi_matrix_shape() {
        let m = build_phi_matrix(&sym(2), 1, 3, 0).unwrap();
        let minus = TermSum::constant(-1);
        let zero = TermSum::zero();
        let rows: Vec<Vec<TermSum>> = (1..=3).map(|i| (1..=3).map(|j| m.h(i, j)).collect()).collect();
        assert_eq!(
            rows,
            vec![
                vec![phi(1, 1), minus.clone(), zero.clone()],
                vec![phi(2, 2), phi(1, 2), minus],
                vec![zero, phi(2, 3), phi(1, 3)],
            ]
        );
    }

    #[test]
    fn phi_matrix_first_column_truncation() {
        let m = build_phi_matrix(&sym(3), 2, 4, 0).unwrap();
        let col: Vec<TermSum> = (1..=4).map(|i| m.h(i, 1)).collect();
        assert_eq!(col, vec![phi(2, 1), phi(3, 2), TermSum::zero(), TermSum::zero()]);
        let m = build_phi_matrix(&sym(3), 3, 4, 0).unwrap();
        assert_eq!(m.h(1, 1), phi(3, 1));
        assert_eq!(m.h(2, 1), TermSum::zero());
        assert!(build_phi_matrix(&sym(3), 4, 4, 0).is_err());
        assert!(build_phi_matrix(&sym(3), 1, 0, 0).is_err());
    }

    #[test]
    fn xi_window_values() {
        let model = sym(3);
        for m in 1..=3 {
            for t in -2..=0 {
                let expected = if t == 1 - m as i64 { TermSum::one() } else { TermSum::zero() };
                assert_eq!(xi(&model, m, t, 0).unwrap(), expected);
            }
            assert!(xi(&model, m, -3, 0).is_err());
        }
    }

    #[test]
    fn xi_geometric_and_fibonacci() {
        let a = ConstantModel::new(vec![q(3)]).unwrap();
        for t in 0..6 {
            assert_eq!(xi(&a, 1, t, 0).unwrap(), q(3i64.pow(t as u32)));
        }
        let fib = ConstantModel::new(vec![q(1), q(1)]).unwrap();
        let got: Vec<Rational> = (1..=4).map(|t| xi(&fib, 1, t, 0).unwrap()).collect();
        assert_eq!(got, vec![q(1), q(2), q(3), q(5)]);
    }

    #[test]
    fn green_order_two_golden() {
        let expected = phi(1, 3)
            .mul(&phi(1, 4))
            .mul(&phi(1, 5))
            .add(&phi(1, 5).mul(&phi(2, 4)))
            .add(&phi(1, 3).mul(&phi(2, 5)));
        for method in GreenMethod::ALL {
            assert_eq!(green_by(&sym(2), 5, 2, method, 24).unwrap(), expected, "{method:?}");
        }
    }

    #[test]
    fn green_single_step_and_identity() {
        for method in GreenMethod::ALL {
            assert_eq!(green_by(&sym(3), 1, 0, method, 24).unwrap(), phi(1, 1));
            assert_eq!(green_by(&sym(3), 0, 0, method, 24).unwrap(), TermSum::one());
            assert_eq!(green_by(&sym(3), -1, 0, method, 24).unwrap(), TermSum::zero());
        }
    }

    #[test]
    fn green_methods_agree_symbolically() {
        for p in 1..=4 {
            for k in 1..=7 {
                let model = sym(p);
                let h = green(&model, k, 0).unwrap();
                assert_eq!(green_leibnizian(&model, k, 0, 24).unwrap(), h, "p={p} k={k}");
                assert_eq!(green_nested_sum(&model, k, 0, 24).unwrap(), h, "p={p} k={k}");
                assert_eq!(green_companion(&model, k, 0).unwrap(), h, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn xi_via_green_symbolic() {
        let model = sym(3);
        for m in 1..=3 {
            for t in 1..=6 {
                assert_eq!(xi_via_green(&model, m, t, 0).unwrap(), xi(&model, m, t, 0).unwrap());
            }
        }
    }

    #[test]
    fn companion_product_small() {
        let f = companion_product(&sym(2), 2, 0).unwrap();
        assert_eq!(f.get(1, 1), &phi(1, 2).mul(&phi(1, 1)).add(&phi(2, 2)));
        assert_eq!(companion_product(&sym(2), 0, 0).unwrap(), SquareMatrix::identity(2));
        assert_eq!(companion_product(&sym(2), 1, 0).unwrap(), companion(&sym(2), 1).unwrap());
        assert!(companion_product(&sym(2), -1, 0).is_err());
    }

    #[test]
    fn casorati_identity_and_equality() {
        let model = sym(3);
        assert_eq!(casorati(&model, 0, 0).unwrap(), SquareMatrix::identity(3));
        for t in 0..=4 {
            assert_eq!(casorati(&model, t, 0).unwrap(), companion_product(&model, t, 0).unwrap());
        }
    }

    #[test]
    fn casoratian_of_companion_product() {
        // det Gamma_t = (-1)^(p+1) phi_p(t)
        let model = ConstantModel::new(vec![q(2), q(-1), q(3)]).unwrap();
        assert_eq!(casoratian(&model, 2, 0).unwrap(), q(9));
    }

    #[test]
    fn anchor_must_be_in_domain() {
        let model = TableModel::new(2, 1, vec![vec![q(1), q(1)]; 6]).unwrap();
        assert!(green(&model, 4, 2).is_ok());
        assert!(matches!(green(&model, 4, 1), Err(Error::Domain(_))));
        assert!(matches!(green(&model, 8, 2), Err(Error::Domain(_))));
    }

    #[test]
    fn enumeration_limit_applies() {
        let model = ConstantModel::new(vec![q(1)]).unwrap();
        assert!(matches!(
            green_leibnizian(&model, 30, 0, 24),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(matches!(
            green_nested_sum(&model, 30, 0, 24),
            Err(Error::LimitExceeded { .. })
        ));
        assert_eq!(green(&model, 30, 0).unwrap(), q(1));
    }
}
