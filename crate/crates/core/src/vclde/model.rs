use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::scalar::{ParseScalar, Ring, TermSum};

/// Inclusive range of admissible `t`; `None` means unbounded on that side.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Domain {
    pub start: Option<i64>,
    pub end: Option<i64>,
}

impl Domain {
    pub const ALL: Domain = Domain {
        start: None,
        end: None,
    };

    pub fn new(start: i64, end: i64) -> Self {
        Domain {
            start: Some(start),
            end: Some(end),
        }
    }

    pub fn contains(&self, t: i64) -> bool {
        self.start.is_none_or(|a| t >= a) && self.end.is_none_or(|b| t <= b)
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.start, self.end) {
            (Some(a), Some(b)) => write!(f, "[{a}, {b}]"),
            (Some(a), None) => write!(f, "[{a}, inf)"),
            (None, Some(b)) => write!(f, "(-inf, {b}]"),
            (None, None) => f.write_str("(-inf, inf)"),
        }
    }
}

/// Coefficients `phi_1(t), ..., phi_p(t)` of
/// `y_t = phi_1(t) y_{t-1} + ... + phi_p(t) y_{t-p} + v_t`.
///
/// Implementations supply [`CoefficientModel::coefficient`]; callers go
/// through the checked accessors.
pub trait CoefficientModel<R: Ring>: Send + Sync {
    fn order(&self) -> usize;

    fn domain(&self) -> Domain {
        Domain::ALL
    }

    /// `phi_m(t)` for `1 <= m <= p` and `t` inside the domain.
    fn coefficient(&self, m: usize, t: i64) -> R;

    fn phi(&self, m: usize, t: i64) -> Result<R> {
        let p = self.order();
        if !(1..=p).contains(&m) {
            return Err(Error::domain(format!("coefficient index {m} outside 1..={p}")));
        }
        self.check_time(t)?;
        Ok(self.coefficient(m, t))
    }

    /// Extended accessor: `phi_0(t) = -1` and `phi_m(t) = 0` for `m > p`.
    fn phi_ext(&self, m: usize, t: i64) -> Result<R> {
        self.check_time(t)?;
        Ok(if m == 0 {
            R::one().neg()
        } else if m > self.order() {
            R::zero()
        } else {
            self.coefficient(m, t)
        })
    }

    fn check_time(&self, t: i64) -> Result<()> {
        let d = self.domain();
        if d.contains(t) {
            Ok(())
        } else {
            Err(Error::domain(format!("t = {t} outside coefficient domain {d}")))
        }
    }
}

/// Shared handle used by problems and the front ends.
pub type SharedModel<R> = Arc<dyn CoefficientModel<R>>;

/// Time-invariant coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstantModel<R> {
    phi: Vec<R>,
}

impl<R: Ring> ConstantModel<R> {
    pub fn new(phi: Vec<R>) -> Result<Self> {
        if phi.is_empty() {
            return Err(Error::domain("order p must be at least 1"));
        }
        Ok(ConstantModel { phi })
    }
}

impl<R: Ring> CoefficientModel<R> for ConstantModel<R> {
    fn order(&self) -> usize {
        self.phi.len()
    }

    fn coefficient(&self, m: usize, _t: i64) -> R {
        self.phi[m - 1].clone()
    }
}

/// Explicit rows `phi(t) = [phi_1(t), ..., phi_p(t)]` for consecutive `t`
/// starting at `start`.
#[derive(Clone, Debug, PartialEq)]
pub struct TableModel<R> {
    p: usize,
    start: i64,
    rows: Vec<Vec<R>>,
}

impl<R: Ring> TableModel<R> {
    pub fn new(p: usize, start: i64, rows: Vec<Vec<R>>) -> Result<Self> {
        if p == 0 {
            return Err(Error::domain("order p must be at least 1"));
        }
        if rows.is_empty() {
            return Err(Error::domain("coefficient table is empty"));
        }
        if let Some((n, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != p) {
            return Err(Error::Parse(format!(
                "row for t = {} has {} values, expected {p}",
                start + n as i64,
                r.len()
            )));
        }
        Ok(TableModel { p, start, rows })
    }

    /// From a `t -> row` map whose keys must form a contiguous range.
    pub fn from_map(p: usize, rows: BTreeMap<i64, Vec<R>>) -> Result<Self> {
        let start = *rows
            .keys()
            .next()
            .ok_or_else(|| Error::domain("coefficient table is empty"))?;
        for (n, &t) in rows.keys().enumerate() {
            if t != start + n as i64 {
                return Err(Error::Parse(format!(
                    "coefficient table skips t = {}",
                    start + n as i64
                )));
            }
        }
        Self::new(p, start, rows.into_values().collect())
    }
}

impl<R: Ring> CoefficientModel<R> for TableModel<R> {
    fn order(&self) -> usize {
        self.p
    }

    fn domain(&self) -> Domain {
        Domain::new(self.start, self.start + self.rows.len() as i64 - 1)
    }

    fn coefficient(&self, m: usize, t: i64) -> R {
        self.rows[(t - self.start) as usize][m - 1].clone()
    }
}

/// `phi(t) = rows[t mod q]`, for all integer `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicModel<R> {
    p: usize,
    rows: Vec<Vec<R>>,
}

impl<R: Ring> PeriodicModel<R> {
    pub fn new(p: usize, rows: Vec<Vec<R>>) -> Result<Self> {
        let table = TableModel::new(p, 0, rows)?;
        Ok(PeriodicModel { p, rows: table.rows })
    }

    pub fn period(&self) -> usize {
        self.rows.len()
    }
}

impl<R: Ring> CoefficientModel<R> for PeriodicModel<R> {
    fn order(&self) -> usize {
        self.p
    }

    fn coefficient(&self, m: usize, t: i64) -> R {
        self.rows[t.rem_euclid(self.rows.len() as i64) as usize][m - 1].clone()
    }
}

/// Coefficients given by a closure `f(m, t)`.
pub struct FnModel<F> {
    p: usize,
    domain: Domain,
    f: F,
}

impl<F> FnModel<F> {
    pub fn new(p: usize, domain: Domain, f: F) -> Self {
        assert!(p >= 1, "order p must be at least 1");
        FnModel { p, domain, f }
    }
}

impl<R: Ring, F: Fn(usize, i64) -> R + Send + Sync> CoefficientModel<R> for FnModel<F> {
    fn order(&self) -> usize {
        self.p
    }

    fn domain(&self) -> Domain {
        self.domain
    }

    fn coefficient(&self, m: usize, t: i64) -> R {
        (self.f)(m, t)
    }
}

/// Indeterminate coefficients `phi_m(t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SymbolicModel {
    p: usize,
}

impl SymbolicModel {
    pub fn new(p: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::domain("order p must be at least 1"));
        }
        Ok(SymbolicModel { p })
    }
}

impl CoefficientModel<TermSum> for SymbolicModel {
    fn order(&self) -> usize {
        self.p
    }

    fn coefficient(&self, m: usize, t: i64) -> TermSum {
        TermSum::phi(m, t)
    }
}

fn field<'a>(v: &'a Value, name: &str) -> Result<&'a Value> {
    v.get(name)
        .ok_or_else(|| Error::Parse(format!("missing field \"{name}\"")))
}

fn parse_row<R: ParseScalar>(v: &Value, p: usize, what: &str) -> Result<Vec<R>> {
    let arr = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array")))?;
    if arr.len() != p {
        return Err(Error::Parse(format!(
            "{what} has {} values, expected {p}",
            arr.len()
        )));
    }
    arr.iter().map(R::parse_json).collect()
}

/// Reads a coefficient file:
///
/// ```json
/// {"p": 2, "kind": "table", "rows": {"1": ["1/2", "1"], "2": ["0", "3"]}}
/// {"p": 2, "kind": "constant", "phi": ["1", "1"]}
/// {"p": 1, "kind": "periodic", "period": 2, "rows": [["2"], ["1/2"]]}
/// ```
pub fn model_from_json<R: ParseScalar>(v: &Value) -> Result<SharedModel<R>> {
    let p = field(v, "p")?
        .as_u64()
        .filter(|&p| p >= 1)
        .ok_or_else(|| Error::Parse("\"p\" must be a positive integer".into()))? as usize;
    let kind = field(v, "kind")?
        .as_str()
        .ok_or_else(|| Error::Parse("\"kind\" must be a string".into()))?;
    match kind {
        "constant" => Ok(Arc::new(ConstantModel::new(parse_row(
            field(v, "phi")?,
            p,
            "phi",
        )?)?)),
        "table" => {
            let rows = field(v, "rows")?
                .as_object()
                .ok_or_else(|| Error::Parse("\"rows\" must be an object keyed by t".into()))?;
            let mut map = BTreeMap::new();
            for (key, row) in rows {
                let t: i64 = key
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("row key {key:?} is not an integer")))?;
                map.insert(t, parse_row(row, p, &format!("row {t}"))?);
            }
            Ok(Arc::new(TableModel::from_map(p, map)?))
        }
        "periodic" => {
            let rows = field(v, "rows")?
                .as_array()
                .ok_or_else(|| Error::Parse("\"rows\" must be an array".into()))?;
            if let Some(q) = v.get("period") {
                if q.as_u64() != Some(rows.len() as u64) {
                    return Err(Error::Parse(format!(
                        "period {q} does not match {} rows",
                        rows.len()
                    )));
                }
            }
            let rows = rows
                .iter()
                .enumerate()
                .map(|(n, r)| parse_row(r, p, &format!("row {n}")))
                .collect::<Result<Vec<_>>>()?;
            Ok(Arc::new(PeriodicModel::new(p, rows)?))
        }
        other => Err(Error::Parse(format!("unknown coefficient kind {other:?}"))),
    }
}
