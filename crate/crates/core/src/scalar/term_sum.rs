use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Backend, Ring, ToJson};

/// Indeterminate appearing in a symbolic expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Atom {
    /// Matrix entry `h[i,j]`.
    H { i: usize, j: usize },
    /// Coefficient `phi_m(t)`.
    Phi { m: usize, t: i64 },
    /// Prescribed solution value `y_t`.
    Y { t: i64 },
    /// Forcing term `v_t`.
    V { t: i64 },
}

impl Atom {
    // h-atoms order by row, then column; the others by t first.
    fn sort_key(&self) -> (u8, i64, i64) {
        match *self {
            Atom::H { i, j } => (0, i as i64, j as i64),
            Atom::Phi { m, t } => (1, t, m as i64),
            Atom::Y { t } => (2, t, 0),
            Atom::V { t } => (3, t, 0),
        }
    }
}

impl Ord for Atom {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Atom {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn write_indexed(f: &mut fmt::Formatter<'_>, name: &str, t: i64) -> fmt::Result {
    if t < 0 {
        write!(f, "{name}({t})")
    } else {
        write!(f, "{name}{t}")
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Atom::H { i, j } => write!(f, "h[{i},{j}]"),
            Atom::Phi { m, t } => write!(f, "ϕ{m}({t})"),
            Atom::Y { t } => write_indexed(f, "y", t),
            Atom::V { t } => write_indexed(f, "v", t),
        }
    }
}

/// One signed monomial as it appears in the serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignedTerm {
    pub sign: i8,
    pub factors: Vec<Atom>,
}

/// Sum of signed monomials with integer multiplicities, kept in canonical
/// form: factors sorted, identical monomials merged, zero multiplicities
/// dropped. Equality of canonical forms is equality of polynomials.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct TermSum {
    terms: BTreeMap<Vec<Atom>, i64>,
}

impl TermSum {
    pub fn atom(atom: Atom) -> Self {
        Self::monomial(1, vec![atom])
    }

    pub fn h(i: usize, j: usize) -> Self {
        Self::atom(Atom::H { i, j })
    }

    pub fn phi(m: usize, t: i64) -> Self {
        Self::atom(Atom::Phi { m, t })
    }

    pub fn y(t: i64) -> Self {
        Self::atom(Atom::Y { t })
    }

    pub fn v(t: i64) -> Self {
        Self::atom(Atom::V { t })
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, Vec::new())
    }

    /// `coeff * factors[0] * factors[1] * ...` in any factor order.
    pub fn monomial(coeff: i64, mut factors: Vec<Atom>) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            factors.sort();
            terms.insert(factors, coeff);
        }
        TermSum { terms }
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Monomials in canonical order with their multiplicities.
    pub fn terms(&self) -> impl Iterator<Item = (&[Atom], i64)> {
        self.terms.iter().map(|(f, &c)| (f.as_slice(), c))
    }

    /// Expanded multiset form: a monomial of multiplicity `c` appears `|c|`
    /// times with sign `signum(c)`.
    pub fn signed_terms(&self) -> Vec<SignedTerm> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (factors, &c) in &self.terms {
            let sign = if c > 0 { 1 } else { -1 };
            for _ in 0..c.unsigned_abs() {
                out.push(SignedTerm {
                    sign,
                    factors: factors.clone(),
                });
            }
        }
        out
    }

    pub fn from_signed_terms(terms: impl IntoIterator<Item = SignedTerm>) -> Self {
        let mut acc = TermSum::default();
        for t in terms {
            acc.accumulate(t.factors, i64::from(t.sign));
        }
        acc
    }

    fn accumulate(&mut self, mut factors: Vec<Atom>, coeff: i64) {
        if coeff == 0 {
            return;
        }
        factors.sort();
        let entry = self.terms.entry(factors);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let c = o
                    .get()
                    .checked_add(coeff)
                    .expect("symbolic multiplicity overflow");
                if c == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = c;
                }
            }
        }
    }

    /// Substitutes every atom through `f` and re-expands in the target ring.
    pub fn evaluate<R: Ring>(&self, mut f: impl FnMut(&Atom) -> R) -> R {
        let mut acc = R::zero();
        for (factors, &c) in &self.terms {
            let mut term = R::from_i64(c);
            for a in factors {
                term = term.mul(&f(a));
            }
            acc = acc.add(&term);
        }
        acc
    }
}

fn merge_sorted(a: &[Atom], b: &[Atom]) -> Vec<Atom> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] <= b[j] {
            out.push(a[i]);
            i += 1;
        } else {
            out.push(b[j]);
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl Ring for TermSum {
    const BACKEND: Backend = Backend::Symbolic;

    fn zero() -> Self {
        TermSum::default()
    }

    fn one() -> Self {
        TermSum::constant(1)
    }

    fn from_i64(n: i64) -> Self {
        TermSum::constant(n)
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (factors, &c) in &rhs.terms {
            out.accumulate(factors.clone(), c);
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = TermSum::default();
        for (fa, &ca) in &self.terms {
            for (fb, &cb) in &rhs.terms {
                let c = ca.checked_mul(cb).expect("symbolic multiplicity overflow");
                out.accumulate(merge_sorted(fa, fb), c);
            }
        }
        out
    }

    fn neg(&self) -> Self {
        TermSum {
            terms: self.terms.iter().map(|(f, &c)| (f.clone(), -c)).collect(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl fmt::Display for TermSum {
    /// Human-readable form: `-h[1,2] h[2,1] + h[1,1] h[2,2]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (factors, &c)) in self.terms.iter().enumerate() {
            match (n, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.unsigned_abs();
            if factors.is_empty() {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag} ")?;
            }
            for (k, a) in factors.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{a}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for TermSum {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.signed_terms().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TermSum {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let terms = Vec::<SignedTerm>::deserialize(deserializer)?;
        if let Some(bad) = terms.iter().find(|t| t.sign != 1 && t.sign != -1) {
            return Err(serde::de::Error::custom(format!(
                "sign must be 1 or -1, got {}",
                bad.sign
            )));
        }
        Ok(TermSum::from_signed_terms(terms))
    }
}

impl ToJson for TermSum {
    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("TermSum serialization is infallible")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opposite_terms_cancel() {
        let a = TermSum::h(1, 1).mul(&TermSum::h(2, 2));
        let sum = a.add(&a.neg());
        assert!(sum.is_zero());
        assert_eq!(sum.to_string(), "0");
    }

    #[test]
    fn product_sorts_by_row() {
        let p = TermSum::h(2, 1).mul(&TermSum::h(1, 2));
        let (factors, c) = p.terms().next().unwrap();
        assert_eq!(c, 1);
        assert_eq!(factors, &[Atom::H { i: 1, j: 2 }, Atom::H { i: 2, j: 1 }]);
        assert_eq!(p.to_string(), "h[1,2] h[2,1]");
    }

    #[test]
    fn product_distributes() {
        let lhs = TermSum::h(1, 1).add(&TermSum::h(1, 2)).mul(&TermSum::h(2, 1));
        let rhs = TermSum::h(1, 1)
            .mul(&TermSum::h(2, 1))
            .add(&TermSum::h(1, 2).mul(&TermSum::h(2, 1)));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.len(), 2);
    }

    #[test]
    fn phi_atoms_sort_by_time() {
        let p = TermSum::phi(1, 5).mul(&TermSum::phi(2, 3)).mul(&TermSum::y(1));
        assert_eq!(p.to_string(), "ϕ2(3) ϕ1(5) y1");
    }

    #[test]
    fn display_signs_and_multiplicity() {
        let s = TermSum::h(1, 2)
            .neg()
            .add(&TermSum::constant(3))
            .add(&TermSum::h(1, 1).mul(&TermSum::constant(2)));
        assert_eq!(s.to_string(), "3 + 2 h[1,1] - h[1,2]");
    }

    #[test]
    fn json_is_sorted_multiset() {
        let s = TermSum::h(2, 2)
            .add(&TermSum::h(1, 1))
            .add(&TermSum::h(1, 1))
            .sub(&TermSum::phi(1, 3));
        let json = s.to_json();
        assert_eq!(
            json,
            serde_json::json!([
                {"sign": 1, "factors": [{"kind": "h", "i": 1, "j": 1}]},
                {"sign": 1, "factors": [{"kind": "h", "i": 1, "j": 1}]},
                {"sign": 1, "factors": [{"kind": "h", "i": 2, "j": 2}]},
                {"sign": -1, "factors": [{"kind": "phi", "m": 1, "t": 3}]},
            ])
        );
        let back: TermSum = serde_json::from_value(json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn evaluate_substitutes_atoms() {
        let s = TermSum::h(1, 1).mul(&TermSum::h(2, 2)).sub(&TermSum::h(1, 2));
        let v: crate::scalar::Rational = s.evaluate(|a| match a {
            Atom::H { i, j } => crate::scalar::Rational::from_integer((10 * i + j) as i64),
            _ => unreachable!(),
        });
        assert_eq!(v, crate::scalar::Rational::from_integer(11 * 22 - 12));
    }
}
