//! Acceptance gate: one PASS/FAIL line per criterion.

mod common;

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;
use serde_json::Value;
use vclde::hessenberg::{det_leibniz_oracle, det_recurrence, LowerHessenberg, Permutation};
use vclde::leibnizian::{
    brute_force_seps, det_leibnizian, f_forward, f_inverse, sigma, tau, validate_string_properties,
    zeta, zeta_elementary,
};
use vclde::nested_sum::det_nested_sum;
use vclde::scalar::{approx_eq, Float64, Rational, Ring, TermSum, DEFAULT_ABS_TOL, DEFAULT_REL_TOL};
use vclde::vclde::{
    casorati, casoratian, companion_product, green, solve_by, xi, CoefficientModel, SolveMethod,
    TableModel,
};

use common::{parse_expansion, random_problem, rng};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

const ORDER_4_EXPANSION: &str = "-h[1,2] h[2,3] h[3,4] h[4,1] + h[1,1] h[2,3] h[3,4] h[4,2] \
    + h[1,2] h[2,1] h[3,4] h[4,3] - h[1,1] h[2,2] h[3,4] h[4,3] \
    + h[1,2] h[2,3] h[3,1] h[4,4] - h[1,1] h[2,3] h[3,2] h[4,4] \
    - h[1,2] h[2,1] h[3,3] h[4,4] + h[1,1] h[2,2] h[3,3] h[4,4]";

const GREEN_5_2: &str = "ϕ1(3) ϕ1(4) ϕ1(5) + ϕ1(5) ϕ2(4) + ϕ1(3) ϕ2(5)";

const SOLUTION_5: &str = "ϕ1(4) ϕ1(5) ϕ2(3) y1 + ϕ2(3) ϕ2(5) y1 + ϕ1(3) ϕ1(4) ϕ1(5) y2 \
    + ϕ1(5) ϕ2(4) y2 + ϕ1(3) ϕ2(5) y2 + v4 ϕ1(5) + v3 ϕ1(4) ϕ1(5) + v3 ϕ2(5) + v5";

fn cli(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_vclde"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "vclde {} exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn term_sum(v: &Value) -> Result<TermSum, String> {
    serde_json::from_value(v.clone()).map_err(|e| e.to_string())
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    if elapsed < limit {
        Ok(())
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn c1_expand_golden() -> Verdict {
    let start = Instant::now();
    let out = cli(&["expand", "--order", "4"])?;
    let elapsed = start.elapsed();
    let terms = out["terms"].as_array().ok_or("no terms array")?;
    if terms.len() != 8 {
        return Err(format!("{} terms", terms.len()));
    }
    let text: Vec<&str> = terms.iter().filter_map(Value::as_str).collect();
    let got = parse_expansion(&text.join(" + ").replace("+ -", "- "));
    let expected = parse_expansion(ORDER_4_EXPANSION);
    if got != expected {
        return Err(format!("expansion {got} differs from {expected}"));
    }
    if out["verdict"] != "TRUE" {
        return Err(format!("verdict {}", out["verdict"]));
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("8 terms, verdict TRUE, {elapsed:.2?}"))
}

fn c2_green_solution_golden() -> Verdict {
    let start = Instant::now();
    let h = cli(&["green", "--arith", "symbolic", "--p", "2", "--t", "5", "--s", "2"])?;
    let y = cli(&["solve", "--arith", "symbolic", "--p", "2", "--s", "2", "--t", "5"])?;
    let elapsed = start.elapsed();
    let h = term_sum(&h["H"])?;
    let y = term_sum(&y["y"])?;
    if h != parse_expansion(GREEN_5_2) {
        return Err(format!("H(5,2) = {h}"));
    }
    if y != parse_expansion(SOLUTION_5) || y.len() != 9 {
        return Err(format!("y_5 = {y}"));
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("H(5,2) 3 terms, y_5 9 terms, {elapsed:.2?}"))
}

fn c3_determinant_oracles() -> Verdict {
    let start = Instant::now();
    let mut rng = rng(3);
    let mut compared = 0;
    for k in 1..=8 {
        for _ in 0..200 {
            let h = common::hessenberg(&mut rng, k);
            let rec = det_recurrence(&h);
            let leib = det_leibnizian(&h, 24).map_err(|e| e.to_string())?;
            let oracle = det_leibniz_oracle(&h.to_square(), 9).map_err(|e| e.to_string())?;
            if rec != leib || rec != oracle {
                return Err(format!("k = {k}: recurrence {rec}, leibnizian {leib}, oracle {oracle}"));
            }

            let g = common::hessenberg_minus_one(&mut rng, k);
            let rec = det_recurrence(&g);
            let nested = det_nested_sum(&g, 24).map_err(|e| e.to_string())?;
            let leib = det_leibnizian(&g, 24).map_err(|e| e.to_string())?;
            let oracle = det_leibniz_oracle(&g.to_square(), 9).map_err(|e| e.to_string())?;
            if nested != rec || nested != leib || nested != oracle {
                return Err(format!("k = {k}, -1 superdiagonal: nested {nested}, recurrence {rec}"));
            }
            compared += 2;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!("{compared} matrices, k = 1..8, {elapsed:.2?}"))
}

fn c4_bijections() -> Verdict {
    let start = Instant::now();
    let mut arrays = 0usize;
    for k in 1..=12usize {
        let count = 1u64 << (k - 1);
        let mut seen = BTreeSet::new();
        for m in 0..count {
            let r = tau(k, m).map_err(|e| e.to_string())?;
            if r.to_index() != m || r.get(k) != 1 {
                return Err(format!("tau({k},{m}) = {:?}", r.bits()));
            }
            for i in 1..=k {
                if zeta(i, &r) != zeta_elementary(i, &r) {
                    return Err(format!("zeta forms differ at i = {i}, r = {:?}", r.bits()));
                }
            }
            let term = f_inverse(&r);
            if f_forward(term.columns()).map_err(|e| e.to_string())? != r {
                return Err(format!("f(f^-1(r)) != r for r = {:?}", r.bits()));
            }
            let cols = (1..=k)
                .map(|i| sigma(k, i, m))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| e.to_string())?;
            if cols != term.columns() {
                return Err(format!("sigma({k},.,{m}) = {cols:?} but f^-1 gives {:?}", term.columns()));
            }
            let perm = Permutation::new(cols).map_err(|e| format!("sigma({k},.,{m}) not a permutation: {e}"))?;
            if perm.signature() != term.sign() {
                return Err(format!("sign mismatch at k = {k}, m = {m}"));
            }
            seen.insert(r);
            arrays += 1;
        }
        if seen.len() as u64 != count {
            return Err(format!("tau_{k} hit {} arrays out of {count}", seen.len()));
        }
        // onto: every valid array is some tau(m), and every SEP is some f^-1(r)
        for cols in brute_force_seps(k) {
            let r = f_forward(&cols).map_err(|e| e.to_string())?;
            if !seen.contains(&r) || f_inverse(&r).columns() != cols.as_slice() {
                return Err(format!("SEP {cols:?} not reached"));
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("{arrays} index arrays, k = 1..12, {elapsed:.2?}"))
}

fn c5_string_properties() -> Verdict {
    let start = Instant::now();
    for k in 1..=12 {
        let report = validate_string_properties(k);
        if let Some(c) = report.checks.iter().find(|c| !c.passed) {
            return Err(format!("k = {k}, {}: {:?}", c.name, c.counterexample));
        }
    }
    Ok(format!("P1-P3 and SEP count hold for k = 1..12, {:.2?}", start.elapsed()))
}

fn c6_companion_products() -> Verdict {
    let start = Instant::now();
    let mut rng = rng(6);
    let mut entries = 0;
    for n in 0..100 {
        let p = 1 + n % 4;
        let span = rng.random_range(1..=8);
        let s = rng.random_range(-5..=5);
        let start_t = s - p as i64 + 1;
        let rows = common::coefficient_rows(&mut rng, p, (s + span - start_t + 1) as usize);
        let model = TableModel::new(p, start_t, rows).map_err(|e| e.to_string())?;
        for t in s + 1..=s + span {
            let f = companion_product(&model, t, s).map_err(|e| e.to_string())?;
            let h = green(&model, t, s).map_err(|e| e.to_string())?;
            if f.get(1, 1) != &h {
                return Err(format!("model {n}: H({t},{s}) = {h}, F[1,1] = {}", f.get(1, 1)));
            }
            let x = casorati(&model, t, s).map_err(|e| e.to_string())?;
            if f != x {
                return Err(format!("model {n}: F != Xi at t = {t}, s = {s}"));
            }
            entries += p * p;
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(30))?;
    Ok(format!("100 models, {entries} entries equal, {elapsed:.2?}"))
}

fn c7_solution_paths() -> Verdict {
    let start = Instant::now();
    let mut rng = rng(7);
    let mut worst = 0.0f64;
    for n in 0..100 {
        let p = 1 + n % 4;
        let span = rng.random_range(1..=12);
        let s = rng.random_range(-3..=3);
        let forced = n % 5 != 0;
        let prob = random_problem(&mut rng, p, s, span, forced);
        let t = s + span;
        let exact = SolveMethod::ALL
            .iter()
            .map(|&m| solve_by(&prob.exact, t, m, 24).map(|v| (m, v)))
            .collect::<Result<Vec<(SolveMethod, Rational)>, _>>()
            .map_err(|e| e.to_string())?;
        let truth = exact.last().expect("recursion is last").1.clone();
        if let Some((m, v)) = exact.iter().find(|(_, v)| v != &truth) {
            return Err(format!("problem {n}: {} = {v}, recursion = {truth}", m.name()));
        }
        let oracle = truth.to_f64();
        for &m in &SolveMethod::ALL {
            let Float64(v) = solve_by(&prob.float, t, m, 24).map_err(|e| e.to_string())?;
            if !approx_eq(v, oracle, DEFAULT_REL_TOL, DEFAULT_ABS_TOL) {
                return Err(format!("problem {n}: float {} = {v:e}, exact = {oracle:e}", m.name()));
            }
            let scale = v.abs().max(oracle.abs());
            if scale > 0.0 {
                worst = worst.max((v - oracle).abs() / scale);
            }
        }
    }
    let elapsed = start.elapsed();
    within(elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "100 problems, 5 paths exact; float worst rel {worst:.1e}, {elapsed:.2?}"
    ))
}

fn c8_fundamental_set() -> Verdict {
    let start = Instant::now();
    let mut rng = rng(8);
    let mut steps = 0;
    for n in 0..60 {
        let p = 1 + n % 4;
        let s = rng.random_range(-4..=4);
        let span = 10;
        let start_t = s - p as i64 + 1;
        let rows = common::coefficient_rows(&mut rng, p, (s + span - start_t + 1) as usize);
        let model = TableModel::new(p, start_t, rows).map_err(|e| e.to_string())?;
        let err = |e: vclde::Error| e.to_string();
        for m in 1..=p {
            for t in start_t..=s {
                let want = if t == s - m as i64 + 1 { Rational::one() } else { Rational::zero() };
                if xi(&model, m, t, s).map_err(err)? != want {
                    return Err(format!("model {n}: window value xi^({m})_({t},{s})"));
                }
            }
            for t in s + 1..=s + span {
                let mut rhs = Rational::zero();
                for l in 1..=p {
                    rhs = rhs.add(&model.phi(l, t).map_err(err)?.mul(&xi(&model, m, t - l as i64, s).map_err(err)?));
                }
                if xi(&model, m, t, s).map_err(err)? != rhs {
                    return Err(format!("model {n}: xi^({m}) breaks the recurrence at t = {t}"));
                }
                steps += 1;
            }
        }
        for t in s..=s + span {
            let d = casoratian(&model, t, s).map_err(err)?;
            if d.is_zero() {
                return Err(format!("model {n}: Casoratian vanishes at t = {t}"));
            }
        }
    }
    Ok(format!("60 models, {steps} recurrence steps, Casoratian nonzero, {:.2?}", start.elapsed()))
}

fn c9_banded_performance() -> Verdict {
    let mut rng = rng(9);
    let p = 4;
    let span = 100_000i64;
    let rows: Vec<Vec<Float64>> = (0..=span + p as i64)
        .map(|_| (0..p).map(|_| Float64(rng.random_range(-0.24..0.24))).collect())
        .collect();
    let model = TableModel::new(p, 0, rows).map_err(|e| e.to_string())?;
    let s = p as i64 - 1;
    let t = s + span;
    let start = Instant::now();
    let Float64(h) = green(&model, t, s).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if !h.is_finite() {
        return Err(format!("H = {h}"));
    }
    // the same value by forward iteration of the impulse response
    let mut y = vec![0.0; p - 1];
    y.push(1.0);
    for u in s + 1..=t {
        let n = y.len();
        let v: f64 = (1..=p).map(|m| model.coefficient(m, u).0 * y[n - m]).sum();
        y.push(v);
    }
    let reference = *y.last().unwrap();
    if !approx_eq(h, reference, DEFAULT_REL_TOL, DEFAULT_ABS_TOL) {
        return Err(format!("H = {h:e}, iteration gives {reference:e}"));
    }
    within(elapsed, Duration::from_secs(1))?;
    Ok(format!("p = 4, t - s = 100000 in {elapsed:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("order-4 expansion golden", c1_expand_golden),
        ("Green's function and solution goldens", c2_green_solution_golden),
        ("determinant oracle equivalence", c3_determinant_oracles),
        ("bijection exhaustives", c4_bijections),
        ("string-property exhaustives", c5_string_properties),
        ("companion product equals Casorati matrix", c6_companion_products),
        ("solution path equivalence", c7_solution_paths),
        ("fundamental-set properties", c8_fundamental_set),
        ("banded path performance", c9_banded_performance),
    ];
    let mut failures = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail})", n + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL {name} ({detail})", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
