#![allow(dead_code)]

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vclde::hessenberg::HessenbergMatrix;
use vclde::scalar::{Float64, Rational};
use vclde::vclde::{Forcing, SharedModel, SolutionProblem, TableModel};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// `n/d` with `n` in -9..=9 and `d` in 1..=9.
pub fn rational(rng: &mut StdRng) -> Rational {
    Rational::new(rng.random_range(-9..=9), rng.random_range(1..=9)).unwrap()
}

pub fn nonzero_rational(rng: &mut StdRng) -> Rational {
    let n = loop {
        let n = rng.random_range(-9..=9);
        if n != 0 {
            break n;
        }
    };
    Rational::new(n, rng.random_range(1..=9)).unwrap()
}

pub fn hessenberg(rng: &mut StdRng, k: usize) -> HessenbergMatrix<Rational> {
    HessenbergMatrix::from_fn(k, |_, _| rational(rng))
}

pub fn hessenberg_minus_one(rng: &mut StdRng, k: usize) -> HessenbergMatrix<Rational> {
    HessenbergMatrix::from_fn(k, |i, j| {
        if j == i + 1 {
            Rational::from_integer(-1)
        } else {
            rational(rng)
        }
    })
}

/// Coefficient rows for `t = start .. start + len`, with `phi_p` never zero
/// so that the Casorati matrices stay invertible.
pub fn coefficient_rows(rng: &mut StdRng, p: usize, len: usize) -> Vec<Vec<Rational>> {
    (0..len)
        .map(|_| {
            (1..=p)
                .map(|m| if m == p { nonzero_rational(rng) } else { rational(rng) })
                .collect()
        })
        .collect()
}

pub fn to_float_rows(rows: &[Vec<Rational>]) -> Vec<Vec<Float64>> {
    rows.iter()
        .map(|r| r.iter().map(|q| Float64(q.to_f64())).collect())
        .collect()
}

pub fn table_model(p: usize, start: i64, rows: Vec<Vec<Rational>>) -> TableModel<Rational> {
    TableModel::new(p, start, rows).unwrap()
}

/// A random problem anchored at `s` whose data reach `s + span`, in both
/// exact and binary64 form.
pub struct RandomProblem {
    pub p: usize,
    pub s: i64,
    pub span: i64,
    pub exact: SolutionProblem<Rational>,
    pub float: SolutionProblem<Float64>,
}

pub fn random_problem(rng: &mut StdRng, p: usize, s: i64, span: i64, forced: bool) -> RandomProblem {
    let start = s - p as i64 + 1;
    let len = (s + span - start + 1) as usize;
    let rows = coefficient_rows(rng, p, len);
    let exact_model: SharedModel<Rational> = Arc::new(TableModel::new(p, start, rows.clone()).unwrap());
    let float_model: SharedModel<Float64> =
        Arc::new(TableModel::new(p, start, to_float_rows(&rows)).unwrap());
    let init: Vec<Rational> = (0..p).map(|_| rational(rng)).collect();
    let forcing: BTreeMap<i64, Rational> = if forced {
        (s + 1..=s + span).map(|t| (t, rational(rng))).collect()
    } else {
        BTreeMap::new()
    };
    let float_forcing = forcing.iter().map(|(&t, q)| (t, Float64(q.to_f64()))).collect();
    let float_init = init.iter().map(|q| Float64(q.to_f64())).collect();
    RandomProblem {
        p,
        s,
        span,
        exact: SolutionProblem::new(exact_model, s, init, Forcing::from_map(forcing)).unwrap(),
        float: SolutionProblem::new(float_model, s, float_init, Forcing::from_map(float_forcing)).unwrap(),
    }
}

/// Reads printed expansions such as `-h[1,2] h[2,1] + h[1,1] h[2,2]` or
/// `ϕ1(5) ϕ2(4) y2 + v5`.
pub fn parse_expansion(text: &str) -> vclde::scalar::TermSum {
    use vclde::scalar::{Atom, Ring, TermSum};

    fn atom(tok: &str) -> Atom {
        let num = |s: &str| s.trim().parse::<i64>().unwrap_or_else(|_| panic!("bad number in {tok:?}"));
        if let Some(rest) = tok.strip_prefix("h[") {
            let (i, j) = rest.trim_end_matches(']').split_once(',').expect("h[i,j]");
            Atom::H { i: num(i) as usize, j: num(j) as usize }
        } else if let Some(rest) = tok.strip_prefix('ϕ').or_else(|| tok.strip_prefix('φ')) {
            let (m, t) = rest.trim_end_matches(')').split_once('(').expect("ϕm(t)");
            Atom::Phi { m: num(m) as usize, t: num(t) }
        } else if let Some(rest) = tok.strip_prefix('y') {
            Atom::Y { t: num(rest) }
        } else if let Some(rest) = tok.strip_prefix('v') {
            Atom::V { t: num(rest) }
        } else {
            panic!("unknown atom {tok:?}")
        }
    }

    let spaced = text.replace('+', " + ").replace('-', " - ");
    let mut total = TermSum::zero();
    let mut sign = 1;
    let mut factors = Vec::new();
    let flush = |sign: i64, factors: &mut Vec<Atom>, total: &mut TermSum| {
        if !factors.is_empty() {
            *total = total.add(&TermSum::monomial(sign, std::mem::take(factors)));
        }
    };
    for tok in spaced.split_whitespace() {
        match tok {
            "+" | "-" => {
                flush(sign, &mut factors, &mut total);
                sign = if tok == "-" { -1 } else { 1 };
            }
            _ => factors.push(atom(tok)),
        }
    }
    flush(sign, &mut factors, &mut total);
    total
}
