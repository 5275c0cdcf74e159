//! Cross-checks every evaluator against the others on one model.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::hessenberg::{det_recurrence, LowerHessenberg};
use crate::scalar::Ring;

use super::fundamental::{
    build_phi_matrix, casorati, casoratian, companion_product, green_leibnizian, green_nested_sum,
    xi, xi_via_green,
};
use super::model::CoefficientModel;
use super::solution::{
    homogeneous_solution, homogeneous_solution_green, particular_solution,
    particular_solution_det, solve_by, SolutionProblem, SolveMethod,
};

/// Adds one to entry `(row, col)` of every `Phi^(1)` built on the
/// recurrence path. Only useful for checking that the suite catches
/// errors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Corruption {
    pub row: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub comparisons: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

struct Check {
    name: &'static str,
    comparisons: usize,
    counterexample: Option<String>,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Check {
            name,
            comparisons: 0,
            counterexample: None,
        }
    }

    fn compare<R: Ring + fmt::Display>(&mut self, what: impl FnOnce() -> String, values: &[(&str, R)]) {
        self.comparisons += 1;
        if self.counterexample.is_some() {
            return;
        }
        let (first_name, first) = &values[0];
        if let Some((name, v)) = values[1..].iter().find(|(_, v)| !v.approx_eq(first)) {
            self.counterexample = Some(format!("{}: {first_name} = {first}, {name} = {v}", what()));
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.comparisons += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(what());
        }
    }

    fn finish(self) -> CheckOutcome {
        CheckOutcome {
            name: self.name,
            passed: self.counterexample.is_none(),
            comparisons: self.comparisons,
            counterexample: self.counterexample,
        }
    }
}

fn green_recurrence_corrupted<R: Ring>(
    model: &(impl CoefficientModel<R> + ?Sized),
    t: i64,
    s: i64,
    corrupt: Option<Corruption>,
) -> Result<R> {
    let mut m = build_phi_matrix(model, 1, t, s)?;
    if let Some(c) = corrupt {
        if c.row <= m.order() && c.col <= m.order() {
            let bumped = m.h(c.row, c.col).add(&R::one());
            m.set(c.row, c.col, bumped)?;
        }
    }
    Ok(det_recurrence(&m))
}

/// Runs the identity suite on `(t, s)`:
///
/// * `green_four_way`: recurrence, compact, nested and companion values of
///   `H(u, s)` for `s < u <= t`;
/// * `companion_equals_casorati`: `F_{u,s} = Xi_{u,s}` for `s <= u <= t`;
/// * `casoratian_nonzero`;
/// * `fundamental_solutions`: window values and the difference equation for
///   every `xi^(m)`;
/// * `xi_cofactor_expansion`: `xi` against its Green's-function expansion;
/// * with a problem, `solution_five_way` on `s-p+1 <= u <= t`, plus either
///   `particular_forms` or `homogeneous_forms`.
pub fn run_verification<R: Ring + fmt::Display>(
    model: &(impl CoefficientModel<R> + ?Sized),
    problem: Option<&SolutionProblem<R>>,
    t: i64,
    s: i64,
    enum_limit: usize,
    corrupt: Option<Corruption>,
) -> Result<VerifyReport> {
    let p = model.order();
    let mut checks = Vec::new();

    let mut c = Check::new("green_four_way");
    for u in s + 1..=t {
        let rec = green_recurrence_corrupted(model, u, s, corrupt)?;
        let companion = companion_product(model, u, s)?.get(1, 1).clone();
        c.compare(
            || format!("H({u},{s})"),
            &[
                ("recurrence", rec),
                ("leibnizian", green_leibnizian(model, u, s, enum_limit)?),
                ("nested", green_nested_sum(model, u, s, enum_limit)?),
                ("companion", companion),
            ],
        );
    }
    checks.push(c.finish());

    let mut c = Check::new("companion_equals_casorati");
    for u in s..=t {
        let f = companion_product(model, u, s)?;
        let x = casorati(model, u, s)?;
        for i in 1..=p {
            for j in 1..=p {
                c.compare(
                    || format!("entry ({i},{j}) at t = {u}"),
                    &[("F", f.get(i, j).clone()), ("Xi", x.get(i, j).clone())],
                );
            }
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("casoratian_nonzero");
    for u in s..=t {
        let d = casoratian(model, u, s)?;
        c.require(!d.is_zero(), || format!("det Xi_({u},{s}) = {d}"));
    }
    checks.push(c.finish());

    let mut c = Check::new("fundamental_solutions");
    for m in 1..=p {
        for u in s - p as i64 + 1..=s {
            let v = xi(model, m, u, s)?;
            let expected = if u == s - m as i64 + 1 { R::one() } else { R::zero() };
            c.compare(|| format!("xi^({m})_({u},{s})"), &[("window", expected), ("xi", v)]);
        }
        for u in s + 1..=t {
            let mut rhs = R::zero();
            for l in 1..=p {
                rhs = rhs.add(&model.phi(l, u)?.mul(&xi(model, m, u - l as i64, s)?));
            }
            c.compare(
                || format!("xi^({m}) at t = {u}"),
                &[("xi", xi(model, m, u, s)?), ("recurrence", rhs)],
            );
        }
    }
    checks.push(c.finish());

    let mut c = Check::new("xi_cofactor_expansion");
    for m in 1..=p {
        for u in s + 1..=t {
            c.compare(
                || format!("xi^({m})_({u},{s})"),
                &[("xi", xi(model, m, u, s)?), ("via_green", xi_via_green(model, m, u, s)?)],
            );
        }
    }
    checks.push(c.finish());

    if let Some(problem) = problem {
        let mut c = Check::new("solution_five_way");
        for u in problem.window_start()..=t {
            let values = SolveMethod::ALL
                .iter()
                .map(|&m| Ok((m.name(), solve_by(problem, u, m, enum_limit)?)))
                .collect::<Result<Vec<_>>>()?;
            c.compare(|| format!("y_{u}"), &values);
        }
        checks.push(c.finish());

        if problem.forcing().is_zero() {
            let mut c = Check::new("homogeneous_forms");
            for u in problem.window_start()..=t {
                c.compare(
                    || format!("y_{u}"),
                    &[
                        ("fundamental", homogeneous_solution(problem, u)?),
                        ("green", homogeneous_solution_green(problem, u)?),
                    ],
                );
            }
            checks.push(c.finish());
        } else {
            let mut c = Check::new("particular_forms");
            for u in problem.s()..=t {
                c.compare(
                    || format!("particular part at t = {u}"),
                    &[
                        ("green_sum", particular_solution(problem, u)?),
                        ("determinant", particular_solution_det(problem, u)?),
                    ],
                );
            }
            checks.push(c.finish());
        }
    }

    Ok(VerifyReport {
        passed: checks.iter().all(|c| c.passed),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Rational, TermSum};
    use crate::vclde::model::{ConstantModel, SharedModel, SymbolicModel, TableModel};
    use crate::vclde::solution::Forcing;
    use std::sync::Arc;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn table() -> TableModel<Rational> {
        let rows = (0..12)
            .map(|t| (1..=3).map(|m| q((t * 7 + m * 5) % 11 - 5, m + 1)).map(|x| if x == q(0, 1) { q(1, 3) } else { x }).collect())
            .collect();
        TableModel::new(3, 0, rows).unwrap()
    }

    #[test]
    fn suite_passes_on_rational_model() {
        let report = run_verification(&table(), None, 8, 2, 24, None).unwrap();
        assert!(report.passed, "{report:?}");
        assert_eq!(report.checks.len(), 5);
    }

    #[test]
    fn suite_passes_with_problems() {
        let model: SharedModel<Rational> = Arc::new(table());
        let forcing = Forcing::from_map((3..=8).map(|t| (t, q(t, 2))).collect());
        let forced = SolutionProblem::new(model.clone(), 2, vec![q(1, 1), q(-1, 2), q(2, 1)], forcing).unwrap();
        let report = run_verification(model.as_ref(), Some(&forced), 8, 2, 24, None).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.checks.iter().any(|c| c.name == "particular_forms"));

        let free = SolutionProblem::new(model.clone(), 2, vec![q(1, 1), q(0, 1), q(3, 1)], Forcing::Zero).unwrap();
        let report = run_verification(model.as_ref(), Some(&free), 8, 2, 24, None).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.checks.iter().any(|c| c.name == "homogeneous_forms"));
    }

    #[test]
    fn corruption_is_detected() {
        let report = run_verification(&table(), None, 6, 2, 24, Some(Corruption { row: 2, col: 1 })).unwrap();
        assert!(!report.passed);
        let failure = report.first_failure().unwrap();
        assert_eq!(failure.name, "green_four_way");
        assert!(failure.counterexample.as_ref().unwrap().starts_with("H(4,2)"));
    }

    #[test]
    fn symbolic_suite() {
        let model = SymbolicModel::new(2).unwrap();
        let problem = SolutionProblem::<TermSum>::symbolic(2, 0).unwrap();
        let report = run_verification(&model, Some(&problem), 4, 0, 24, None).unwrap();
        assert!(report.passed, "{report:?}");
    }

    #[test]
    fn constant_model_suite() {
        let model = ConstantModel::new(vec![q(1, 2), q(1, 3)]).unwrap();
        assert!(run_verification(&model, None, 7, 0, 24, None).unwrap().passed);
    }
}
