//! Homogeneous, particular and general solutions.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{check_limit, Error, Result};
use crate::hessenberg::{det_recurrence, HessenbergMatrix};
use crate::scalar::{Backend, ParseScalar, Ring, TermSum};

use super::fundamental::{check_anchor, green, green_leibnizian, green_nested_sum, xi};
use super::model::{CoefficientModel, SharedModel, SymbolicModel};

/// Largest `t - s` accepted for symbolic solution expansions.
pub const SYMBOLIC_SPAN_LIMIT: usize = 20;

/// Forcing sequence `v_t` for `t > s`.
#[derive(Clone)]
pub enum Forcing<R> {
    /// `v_t = 0` everywhere.
    Zero,
    /// Explicit values; reading an absent `t` is an error.
    Values(BTreeMap<i64, R>),
    /// Computed on demand.
    Generated(Arc<dyn Fn(i64) -> R + Send + Sync>),
}

impl<R> fmt::Debug for Forcing<R>
where
    R: fmt::Debug,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Forcing::Zero => f.write_str("Zero"),
            Forcing::Values(v) => f.debug_tuple("Values").field(v).finish(),
            Forcing::Generated(_) => f.write_str("Generated(..)"),
        }
    }
}

impl<R: Ring> Forcing<R> {
    /// An empty map means no forcing.
    pub fn from_map(values: BTreeMap<i64, R>) -> Self {
        if values.is_empty() {
            Forcing::Zero
        } else {
            Forcing::Values(values)
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Forcing::Zero)
    }

    pub fn at(&self, t: i64) -> Result<R> {
        match self {
            Forcing::Zero => Ok(R::zero()),
            Forcing::Values(v) => v.get(&t).cloned().ok_or(Error::MissingForcing { t }),
            Forcing::Generated(f) => Ok(f(t)),
        }
    }
}

/// Coefficients, anchor `s`, initial window `y_{s-p+1}, ..., y_s` and
/// forcing.
#[derive(Clone)]
pub struct SolutionProblem<R: Ring> {
    model: SharedModel<R>,
    s: i64,
    init: Vec<R>,
    forcing: Forcing<R>,
}

impl<R: Ring> fmt::Debug for SolutionProblem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SolutionProblem")
            .field("p", &self.p())
            .field("s", &self.s)
            .field("init", &self.init)
            .field("forcing", &self.forcing)
            .finish()
    }
}

impl<R: Ring> SolutionProblem<R> {
    pub fn new(model: SharedModel<R>, s: i64, init: Vec<R>, forcing: Forcing<R>) -> Result<Self> {
        let p = model.order();
        if init.len() != p {
            return Err(Error::Parse(format!(
                "expected {p} initial values, got {}",
                init.len()
            )));
        }
        check_anchor(model.as_ref(), s)?;
        if let Forcing::Values(v) = &forcing {
            if let Some(&t) = v.keys().find(|&&t| t <= s) {
                return Err(Error::domain(format!("forcing key t = {t} is not after s = {s}")));
            }
        }
        Ok(SolutionProblem {
            model,
            s,
            init,
            forcing,
        })
    }

    pub fn model(&self) -> &dyn CoefficientModel<R> {
        self.model.as_ref()
    }

    pub fn shared_model(&self) -> SharedModel<R> {
        self.model.clone()
    }

    pub fn p(&self) -> usize {
        self.model.order()
    }

    pub fn s(&self) -> i64 {
        self.s
    }

    pub fn init(&self) -> &[R] {
        &self.init
    }

    pub fn forcing(&self) -> &Forcing<R> {
        &self.forcing
    }

    pub fn window_start(&self) -> i64 {
        self.s - self.p() as i64 + 1
    }

    /// `y_{s-m+1}`, `1 <= m <= p`.
    fn initial_lag(&self, m: usize) -> &R {
        &self.init[self.p() - m]
    }

    /// The prescribed value when `t` is in the window, an error when it
    /// precedes it, `None` past `s`.
    fn window(&self, t: i64) -> Result<Option<R>> {
        if t < self.window_start() {
            return Err(Error::domain(format!(
                "t = {t} precedes the initial window starting at {}",
                self.window_start()
            )));
        }
        if t > self.s {
            return Ok(None);
        }
        Ok(Some(self.init[(t - self.window_start()) as usize].clone()))
    }

    fn check_span(&self, t: i64) -> Result<()> {
        if R::BACKEND == Backend::Symbolic && t > self.s {
            check_limit("symbolic t - s", (t - self.s) as usize, SYMBOLIC_SPAN_LIMIT)?;
        }
        Ok(())
    }

    fn require_homogeneous(&self) -> Result<()> {
        if self.forcing.is_zero() {
            Ok(())
        } else {
            Err(Error::domain("problem has a forcing term; use the general solution"))
        }
    }
}

impl<R: ParseScalar> SolutionProblem<R> {
    /// Reads a problem file `{"s": 2, "init": ["1", "0"], "forcing": {"3": "1"}}`;
    /// `forcing` may be omitted or empty.
    pub fn from_json(model: SharedModel<R>, v: &Value) -> Result<Self> {
        let s = v
            .get("s")
            .and_then(Value::as_i64)
            .ok_or_else(|| Error::Parse("\"s\" must be an integer".into()))?;
        let init = v
            .get("init")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("\"init\" must be an array".into()))?
            .iter()
            .map(R::parse_json)
            .collect::<Result<Vec<_>>>()?;
        let mut values = BTreeMap::new();
        match v.get("forcing") {
            None | Some(Value::Null) => {}
            Some(Value::Object(map)) => {
                for (key, val) in map {
                    let t: i64 = key
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("forcing key {key:?} is not an integer")))?;
                    values.insert(t, R::parse_json(val)?);
                }
            }
            Some(_) => return Err(Error::Parse("\"forcing\" must be an object keyed by t".into())),
        }
        Self::new(model, s, init, Forcing::from_map(values))
    }
}

impl SolutionProblem<TermSum> {
    /// Fully symbolic problem of order `p`: coefficients `phi_m(t)`, initial
    /// values `y_{s-p+1}..y_s` and forcing `v_t`.
    pub fn symbolic(p: usize, s: i64) -> Result<Self> {
        let model: SharedModel<TermSum> = Arc::new(SymbolicModel::new(p)?);
        let init = (s - p as i64 + 1..=s).map(TermSum::y).collect();
        Self::new(model, s, init, Forcing::Generated(Arc::new(TermSum::v)))
    }

    /// As [`SolutionProblem::symbolic`] without forcing.
    pub fn symbolic_homogeneous(p: usize, s: i64) -> Result<Self> {
        let model: SharedModel<TermSum> = Arc::new(SymbolicModel::new(p)?);
        let init = (s - p as i64 + 1..=s).map(TermSum::y).collect();
        Self::new(model, s, init, Forcing::Zero)
    }
}

/// Evaluator for `y_t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolveMethod {
    /// Green's-function form.
    Green,
    /// Single bordered Hessenbergian.
    Kittappa,
    /// Green's form with compact-representation Green's functions.
    Leibnizian,
    /// Green's form with nested-sum Green's functions.
    Nested,
    /// Forward iteration of the difference equation.
    Recursion,
}

impl SolveMethod {
    pub const ALL: [SolveMethod; 5] = [
        SolveMethod::Green,
        SolveMethod::Kittappa,
        SolveMethod::Leibnizian,
        SolveMethod::Nested,
        SolveMethod::Recursion,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::Green => "green",
            SolveMethod::Kittappa => "kittappa",
            SolveMethod::Leibnizian => "leibnizian",
            SolveMethod::Nested => "nested",
            SolveMethod::Recursion => "recursion",
        }
    }
}

/// `y_t = sum_{m=1}^{p} xi^(m)_{t,s} y_{s-m+1}`; the problem must be
/// unforced.
pub fn homogeneous_solution<R: Ring>(problem: &SolutionProblem<R>, t: i64) -> Result<R> {
    problem.require_homogeneous()?;
    problem.check_span(t)?;
    if let Some(v) = problem.window(t)? {
        return Ok(v);
    }
    let mut acc = R::zero();
    for m in 1..=problem.p() {
        let y = problem.initial_lag(m);
        if y.is_exact_zero() {
            continue;
        }
        acc = acc.add(&xi(problem.model(), m, t, problem.s)?.mul(y));
    }
    Ok(acc)
}

/// `sum_{m=1}^{p} sum_{j=1}^{p-m+1} phi_{m+j-1}(s+j) H(t,s+j) y_{s-m+1}`
/// with `H` supplied by the caller; `t > s`.
fn homogeneous_part<R: Ring>(
    problem: &SolutionProblem<R>,
    t: i64,
    h: &mut impl FnMut(i64, i64) -> Result<R>,
) -> Result<R> {
    let p = problem.p();
    let s = problem.s;
    let model = problem.model();
    let greens = (1..=p as i64)
        .map(|j| h(t, s + j))
        .collect::<Result<Vec<R>>>()?;
    let mut acc = R::zero();
    for m in 1..=p {
        let y = problem.initial_lag(m);
        if y.is_exact_zero() {
            continue;
        }
        for j in 1..=(p - m + 1) {
            if greens[j - 1].is_exact_zero() {
                continue;
            }
            let c = model.phi(m + j - 1, s + j as i64)?;
            acc = acc.add(&c.mul(&greens[j - 1]).mul(y));
        }
    }
    Ok(acc)
}

/// `sum_{j=1}^{t-s} H(t,s+j) v_{s+j}` with `H` supplied by the caller.
fn particular_part<R: Ring>(
    problem: &SolutionProblem<R>,
    t: i64,
    h: &mut impl FnMut(i64, i64) -> Result<R>,
) -> Result<R> {
    if problem.forcing.is_zero() {
        return Ok(R::zero());
    }
    let mut acc = R::zero();
    for u in problem.s + 1..=t {
        let v = problem.forcing.at(u)?;
        if v.is_exact_zero() {
            continue;
        }
        acc = acc.add(&h(t, u)?.mul(&v));
    }
    Ok(acc)
}

fn general_with<R: Ring>(
    problem: &SolutionProblem<R>,
    t: i64,
    mut h: impl FnMut(i64, i64) -> Result<R>,
) -> Result<R> {
    problem.check_span(t)?;
    if let Some(v) = problem.window(t)? {
        return Ok(v);
    }
    Ok(homogeneous_part(problem, t, &mut h)?.add(&particular_part(problem, t, &mut h)?))
}

/// Homogeneous solution written through the Green's function; the problem
/// must be unforced.
pub fn homogeneous_solution_green<R: Ring>(problem: &SolutionProblem<R>, t: i64) -> Result<R> {
    problem.require_homogeneous()?;
    general_with(problem, t, |a, b| green(problem.model(), a, b))
}

/// Solution with zero initial window, `sum_{j=1}^{t-s} H(t,s+j) v_{s+j}`.
pub fn particular_solution<R: Ring>(problem: &SolutionProblem<R>, t: i64) -> Result<R> {
    if t < problem.s {
        return Err(Error::domain(format!("need t >= s, got t = {t}, s = {}", problem.s)));
    }
    problem.check_span(t)?;
    particular_part(problem, t, &mut |a, b| green(problem.model(), a, b))
}

/// Order `t-s` Hessenbergian with first column `first(i)` and the `Phi`
/// pattern `phi_{i-j+1}(s+i)`, superdiagonal `-1`, elsewhere.
fn bordered_det<R: Ring>(
    problem: &SolutionProblem<R>,
    t: i64,
    mut first: impl FnMut(usize) -> Result<R>,
) -> Result<R> {
    let s = problem.s;
    let model = problem.model();
    let m = HessenbergMatrix::try_from_fn((t - s) as usize, |i, j| {
        if j == 1 {
            first(i)
        } else {
            model.phi_ext(i + 1 - j, s + i as i64)
        }
    })?;
    Ok(det_recurrence(&m))
}

/// Particular solution as a single Hessenbergian with first column
/// `v_{s+1}, ..., v_t`.
pub fn particular_solution_det<R: Ring>(problem: &SolutionProblem<R>, t: i64) -> Result<R> {
    if t < problem.s {
        return Err(Error::domain(format!("need t >= s, got t = {t}, s = {}", problem.s)));
    }
    problem.check_span(t)?;
    if t == problem.s {
        return Ok(R::zero());
    }
    bordered_det(problem, t, |i| problem.forcing.at(problem.s + i as i64))
}

/// `y_t` = homogeneous part + particular part, both through the banded
/// Green's function.
pub fn general_solution<R: Ring>(problem: &SolutionProblem<R>, t: i64) -> Result<R> {
    general_with(problem, t, |a, b| green(problem.model(), a, b))
}

/// `y_t` as one bordered Hessenbergian whose first column row `i` is
/// `sum_m y_{s-m+1} phi_{m+i-1}(s+i) + v_{s+i}`.
pub fn general_solution_kittappa<R: Ring>(problem: &SolutionProblem<R>, t: i64) -> Result<R> {
    problem.check_span(t)?;
    if let Some(v) = problem.window(t)? {
        return Ok(v);
    }
    let s = problem.s;
    let model = problem.model();
    bordered_det(problem, t, |i| {
        let u = s + i as i64;
        let mut acc = problem.forcing.at(u)?;
        for m in 1..=problem.p() {
            let y = problem.initial_lag(m);
            if y.is_exact_zero() {
                continue;
            }
            let c = model.phi_ext(m + i - 1, u)?;
            if !c.is_exact_zero() {
                acc = acc.add(&y.mul(&c));
            }
        }
        Ok(acc)
    })
}

pub fn general_solution_leibnizian<R: Ring>(
    problem: &SolutionProblem<R>,
    t: i64,
    enum_limit: usize,
) -> Result<R> {
    general_with(problem, t, |a, b| {
        green_leibnizian(problem.model(), a, b, enum_limit)
    })
}

pub fn general_solution_nested<R: Ring>(
    problem: &SolutionProblem<R>,
    t: i64,
    enum_limit: usize,
) -> Result<R> {
    general_with(problem, t, |a, b| {
        green_nested_sum(problem.model(), a, b, enum_limit)
    })
}

/// Iterates `y_u = sum_m phi_m(u) y_{u-m} + v_u` forward from the window.
pub fn recursion_oracle<R: Ring>(problem: &SolutionProblem<R>, t: i64) -> Result<R> {
    problem.check_span(t)?;
    if let Some(v) = problem.window(t)? {
        return Ok(v);
    }
    let p = problem.p();
    let model = problem.model();
    let mut ys = problem.init.clone();
    for u in problem.s + 1..=t {
        let mut acc = problem.forcing.at(u)?;
        for m in 1..=p {
            let y = &ys[ys.len() - m];
            if y.is_exact_zero() {
                continue;
            }
            acc = acc.add(&model.phi(m, u)?.mul(y));
        }
        ys.push(acc);
    }
    Ok(ys.pop().expect("at least one step"))
}

pub fn solve_by<R: Ring>(
    problem: &SolutionProblem<R>,
    t: i64,
    method: SolveMethod,
    enum_limit: usize,
) -> Result<R> {
    match method {
        SolveMethod::Green => general_solution(problem, t),
        SolveMethod::Kittappa => general_solution_kittappa(problem, t),
        SolveMethod::Leibnizian => general_solution_leibnizian(problem, t, enum_limit),
        SolveMethod::Nested => general_solution_nested(problem, t, enum_limit),
        SolveMethod::Recursion => recursion_oracle(problem, t),
    }
}
