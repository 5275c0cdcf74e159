use std::fmt::Display;
use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{
    Arith, ExpandArgs, FundamentalArgs, GreenArgs, ModelArgs, Outcome, SolveArgs, VerifyArgs,
    EXPAND_LIMIT,
};
use crate::error::{check_limit, Error, Result};
use crate::hessenberg::{det_leibniz_oracle, HessenbergMatrix, LowerHessenberg};
use crate::leibnizian::{det_leibnizian, enumerate_seps};
use crate::matrix::SquareMatrix;
use crate::scalar::{Float64, ParseScalar, Rational, Ring, TermSum, ToJson};
use crate::vclde::{
    casorati, casoratian, green_by, model_from_json, run_verification, solve_by, Corruption,
    GreenMethod, SharedModel, SolutionProblem, SolveMethod, SymbolicModel,
};

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn load_model<R: ParseScalar>(args: &ModelArgs) -> Result<SharedModel<R>> {
    if args.p.is_some() {
        return Err(Error::Parse("--p is only accepted with --arith symbolic".into()));
    }
    let path = args
        .coeffs
        .as_deref()
        .ok_or_else(|| Error::Parse("--coeffs is required unless --arith symbolic".into()))?;
    model_from_json(&read_json(path)?)
}

fn symbolic_model(args: &ModelArgs) -> Result<SharedModel<TermSum>> {
    if args.coeffs.is_some() {
        return Err(Error::Parse("symbolic mode takes --p, not --coeffs".into()));
    }
    let p = args
        .p
        .ok_or_else(|| Error::Parse("--p is required with --arith symbolic".into()))?;
    Ok(Arc::new(SymbolicModel::new(p)?))
}

fn load_problem<R: ParseScalar>(model: SharedModel<R>, path: &Path) -> Result<SolutionProblem<R>> {
    SolutionProblem::from_json(model, &read_json(path)?)
}

fn render(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values always serialize")
}

pub(super) fn green(a: GreenArgs, limit: usize) -> Result<Outcome> {
    match a.model.arith {
        Arith::Rational => green_with(load_model::<Rational>(&a.model)?, &a, limit),
        Arith::Float64 => green_with(load_model::<Float64>(&a.model)?, &a, limit),
        Arith::Symbolic => green_with(symbolic_model(&a.model)?, &a, limit),
    }
}

fn green_with<R: Ring + ToJson + Display>(
    model: SharedModel<R>,
    a: &GreenArgs,
    limit: usize,
) -> Result<Outcome> {
    let method = GreenMethod::from(a.method);
    let h = green_by(model.as_ref(), a.t, a.s, method, limit)?;
    Ok(Outcome::Ok(if a.pretty {
        format!("H({},{}) = {h}", a.t, a.s)
    } else {
        render(&json!({"t": a.t, "s": a.s, "H": h.to_json(), "method": method.name()}))
    }))
}

pub(super) fn solve(a: SolveArgs, limit: usize) -> Result<Outcome> {
    let numeric = |a: &SolveArgs| -> Result<()> {
        if a.s.is_some() || a.homogeneous {
            return Err(Error::Parse(
                "--s and --homogeneous are symbolic-mode options; numeric problems come from --problem".into(),
            ));
        }
        Ok(())
    };
    let problem_path = |a: &SolveArgs| {
        a.problem
            .clone()
            .ok_or_else(|| Error::Parse("--problem is required unless --arith symbolic".into()))
    };
    match a.model.arith {
        Arith::Rational => {
            numeric(&a)?;
            let problem = load_problem(load_model::<Rational>(&a.model)?, &problem_path(&a)?)?;
            solve_with(&problem, &a, limit)
        }
        Arith::Float64 => {
            numeric(&a)?;
            let problem = load_problem(load_model::<Float64>(&a.model)?, &problem_path(&a)?)?;
            solve_with(&problem, &a, limit)
        }
        Arith::Symbolic => {
            if a.problem.is_some() {
                return Err(Error::Parse("symbolic mode takes --p and --s, not --problem".into()));
            }
            symbolic_model(&a.model)?;
            let p = a.model.p.expect("checked by symbolic_model");
            let s = a
                .s
                .ok_or_else(|| Error::Parse("--s is required with --arith symbolic".into()))?;
            let problem = if a.homogeneous {
                SolutionProblem::symbolic_homogeneous(p, s)?
            } else {
                SolutionProblem::symbolic(p, s)?
            };
            solve_with(&problem, &a, limit)
        }
    }
}

fn solve_with<R: Ring + ToJson + Display>(
    problem: &SolutionProblem<R>,
    a: &SolveArgs,
    limit: usize,
) -> Result<Outcome> {
    let method = SolveMethod::from(a.method);
    let y = solve_by(problem, a.t, method, limit)?;
    Ok(Outcome::Ok(if a.pretty {
        format!("y_{} = {y}", a.t)
    } else {
        render(&json!({"t": a.t, "s": problem.s(), "y": y.to_json(), "method": method.name()}))
    }))
}

pub(super) fn fundamental(a: FundamentalArgs) -> Result<Outcome> {
    match a.model.arith {
        Arith::Rational => fundamental_with(load_model::<Rational>(&a.model)?, &a),
        Arith::Float64 => fundamental_with(load_model::<Float64>(&a.model)?, &a),
        Arith::Symbolic => fundamental_with(symbolic_model(&a.model)?, &a),
    }
}

fn pretty_matrix<R: Ring + Display>(m: &SquareMatrix<R>) -> String {
    m.rows()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

fn fundamental_with<R: Ring + ToJson + Display>(
    model: SharedModel<R>,
    a: &FundamentalArgs,
) -> Result<Outcome> {
    let xi = casorati(model.as_ref(), a.t, a.s)?;
    let det = casoratian(model.as_ref(), a.t, a.s)?;
    Ok(Outcome::Ok(if a.pretty {
        format!("{}\ncasoratian = {det}", pretty_matrix(&xi))
    } else {
        render(&json!({
            "t": a.t,
            "s": a.s,
            "matrix": xi.to_json(),
            "casoratian": det.to_json(),
        }))
    }))
}

pub(super) fn expand(a: ExpandArgs) -> Result<Outcome> {
    check_limit("expansion order K", a.order, EXPAND_LIMIT)?;
    if a.order == 0 {
        return Err(Error::domain("expansion order K must be at least 1"));
    }
    let h = HessenbergMatrix::symbolic(a.order);
    let terms: Vec<String> = enumerate_seps(a.order, EXPAND_LIMIT)?
        .map(|t| t.to_string())
        .collect();
    let compact = det_leibnizian(&h, EXPAND_LIMIT)?;
    let oracle = det_leibniz_oracle(&h.to_square(), EXPAND_LIMIT)?;
    let verdict = if compact.sub(&oracle).is_zero() { "TRUE" } else { "FALSE" };
    Ok(if a.pretty {
        let mut line = String::new();
        for (n, t) in terms.iter().enumerate() {
            match (n, t.strip_prefix('-')) {
                (0, _) => line.push_str(t),
                (_, Some(rest)) => {
                    line.push_str(" - ");
                    line.push_str(rest);
                }
                (_, None) => {
                    line.push_str(" + ");
                    line.push_str(t);
                }
            }
        }
        Outcome::Ok(format!("{line}\n{verdict}"))
    } else {
        Outcome::Ok(render(&json!({"order": a.order, "terms": terms, "verdict": verdict})))
    })
}

pub(super) fn verify(a: VerifyArgs, limit: usize) -> Result<Outcome> {
    let corrupt = a.debug_corrupt_phi;
    match a.model.arith {
        Arith::Rational => {
            let model = load_model::<Rational>(&a.model)?;
            let problem = a.problem.as_deref().map(|p| load_problem(model.clone(), p)).transpose()?;
            verify_with(model, problem.as_ref(), &a, limit, corrupt)
        }
        Arith::Float64 => {
            let model = load_model::<Float64>(&a.model)?;
            let problem = a.problem.as_deref().map(|p| load_problem(model.clone(), p)).transpose()?;
            verify_with(model, problem.as_ref(), &a, limit, corrupt)
        }
        Arith::Symbolic => {
            if a.problem.is_some() {
                return Err(Error::Parse("symbolic mode takes no --problem".into()));
            }
            verify_with(symbolic_model(&a.model)?, None, &a, limit, corrupt)
        }
    }
}

fn verify_with<R: Ring + Display>(
    model: SharedModel<R>,
    problem: Option<&SolutionProblem<R>>,
    a: &VerifyArgs,
    limit: usize,
    corrupt: Option<Corruption>,
) -> Result<Outcome> {
    if a.t < a.s {
        return Err(Error::domain(format!("need t >= s, got t = {}, s = {}", a.t, a.s)));
    }
    let report = run_verification(model.as_ref(), problem, a.t, a.s, limit, corrupt)?;
    let text = render(&serde_json::to_value(&report).expect("report serializes"));
    Ok(match report.first_failure() {
        None => Outcome::Ok(text),
        Some(f) => Outcome::Failed(
            text,
            json!({
                "error": "verification_failed",
                "check": f.name,
                "counterexample": f.counterexample,
                "exit_code": 1,
            }),
        ),
    })
}

