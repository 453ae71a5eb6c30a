//! Integer polynomials that are squarefree in the edge slope variables `m_e`.
//!
//! A monomial is an [`EdgeSet`]: the set `F` stands for `m_F = ∏_{f∈F} m_f`.
//! Terms are kept in ascending bitmask order with no zero coefficients.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::Fp;
use crate::graph::{EdgeSet, Graph};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    terms: BTreeMap<EdgeSet, BigInt>,
}

impl std::fmt::Debug for MultilinearPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(m, c)| (m, c.to_string())))
            .finish()
    }
}

impl MultilinearPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::monomial(EdgeSet::EMPTY, c)
    }

    pub fn var(e: usize) -> Self {
        Self::monomial(EdgeSet::singleton(e), 1)
    }

    pub fn monomial<C: Into<BigInt>>(support: EdgeSet, c: C) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(support, c);
        }
        MultilinearPoly { terms }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (EdgeSet, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c.into());
        }
        p
    }

    fn add_term(&mut self, m: EdgeSet, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl Iterator<Item = (EdgeSet, &BigInt)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn coefficient(&self, m: EdgeSet) -> BigInt {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    /// Largest monomial size; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.len()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.len());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|x| x == d),
        }
    }

    /// Union of all monomial supports.
    pub fn variables(&self) -> EdgeSet {
        self.terms
            .keys()
            .fold(EdgeSet::EMPTY, |acc, &m| acc.union(m))
    }

    pub fn leading_monomial(&self) -> Option<EdgeSet> {
        self.terms.keys().next().copied()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        MultilinearPoly {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        MultilinearPoly {
            terms: self.terms.iter().map(|(&m, c)| (m, c * k)).collect(),
        }
    }

    /// Product in the multilinear ring. A pair of monomials sharing a
    /// variable would leave the ring and is an error, even if it cancels.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if !a.is_disjoint(b) {
                    return Err(Error::NotMultilinear);
                }
                out.add_term(a.union(b), ca * cb);
            }
        }
        Ok(out)
    }

    /// Flips the global sign so the smallest monomial has a positive coefficient.
    pub fn sign_normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// Equal up to a global sign.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == other.neg()
    }

    /// Renames variable `i` to `map[i]`. The map must be injective on the
    /// variables in use.
    pub fn remap(&self, map: &[usize]) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (EdgeSet::from_indices(m.iter().map(|e| map[e])), c.clone())),
        )
    }

    /// Value at `values[e]` for each variable `m_e`, in `F_p`.
    pub fn eval_mod(&self, field: Fp, values: &[u64]) -> u64 {
        self.terms.iter().fold(0, |acc, (m, c)| {
            let term = m
                .iter()
                .fold(field.from_bigint(c), |t, e| field.mul(t, values[e]));
            field.add(acc, term)
        })
    }

    /// Exact quotient `p / d` over the rationals, if it exists, returned when
    /// it has integer coefficients. Since `p` is multilinear, a cofactor can
    /// only involve variables absent from `d`; grouping `p` by its part over
    /// `vars(d)` reduces division to comparing coefficient blocks.
    pub fn exact_div(p: &Self, d: &Self) -> Result<DivisionOutcome> {
        let (lead, lead_c) = match d.terms.iter().next() {
            Some((&m, c)) => (m, c.clone()),
            None => return Err(Error::ZeroDivisor),
        };
        let dvars = d.variables();
        let mut blocks: BTreeMap<EdgeSet, BTreeMap<EdgeSet, BigInt>> = BTreeMap::new();
        for (&m, c) in &p.terms {
            blocks
                .entry(m.intersection(dvars))
                .or_default()
                .insert(m.difference(dvars), c.clone());
        }
        // p = d * q forces block(S) = d_S * q for every S ⊆ vars(d)
        let empty = BTreeMap::new();
        let q_scaled = blocks.get(&lead).unwrap_or(&empty); // = lead_c * q
        for s in blocks.keys() {
            if !d.terms.contains_key(s) {
                return Ok(DivisionOutcome::NotDivisible);
            }
        }
        for (&s, ds) in &d.terms {
            let block = blocks.get(&s).unwrap_or(&empty);
            let keys: std::collections::BTreeSet<&EdgeSet> =
                block.keys().chain(q_scaled.keys()).collect();
            for k in keys {
                let lhs = block.get(k).cloned().unwrap_or_default() * &lead_c;
                let rhs = q_scaled.get(k).cloned().unwrap_or_default() * ds;
                if lhs != rhs {
                    return Ok(DivisionOutcome::NotDivisible);
                }
            }
        }
        let integral = q_scaled.values().all(|c| (c % &lead_c).is_zero());
        if !integral {
            return Ok(DivisionOutcome::RationalOnly);
        }
        Ok(DivisionOutcome::Quotient(Self::from_terms(
            q_scaled.iter().map(|(&m, c)| (m, c / &lead_c)),
        )))
    }

    /// `{"terms":[{"edges":[["u","v"],...],"coeff":k},...]}` in ascending
    /// monomial order. Coefficients beyond `i64` are emitted as strings.
    pub fn to_json(&self, g: &Graph) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(&m, c)| {
                let coeff = match c.to_i64() {
                    Some(k) => json!(k),
                    None => json!(c.to_string()),
                };
                json!({ "edges": g.edge_pairs(m), "coeff": coeff })
            })
            .collect();
        json!({ "terms": terms })
    }

    pub fn from_json(g: &Graph, value: &Value) -> Result<Self> {
        let bad = |msg: &str| Error::PolyJson(msg.to_string());
        let terms = value
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing `terms` array"))?;
        let mut p = Self::zero();
        for term in terms {
            let edges = term
                .get("edges")
                .and_then(Value::as_array)
                .ok_or_else(|| bad("term without `edges`"))?;
            let mut m = EdgeSet::EMPTY;
            for pair in edges {
                let pair = pair.as_array().ok_or_else(|| bad("edge is not a pair"))?;
                let (a, b) = match pair.as_slice() {
                    [Value::String(a), Value::String(b)] => (a, b),
                    _ => return Err(bad("edge is not a pair of ids")),
                };
                let e = g
                    .edge_by_ids(a, b)
                    .ok_or_else(|| Error::PolyJson(format!("unknown edge {a}{b}")))?;
                if m.contains(e) {
                    return Err(bad("repeated variable in monomial"));
                }
                m = m.with(e);
            }
            let coeff = match term.get("coeff") {
                Some(Value::Number(n)) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| bad("non-integer coefficient"))?,
                Some(Value::String(s)) => s.parse().map_err(|_| bad("bad coefficient string"))?,
                _ => return Err(bad("term without `coeff`")),
            };
            p.add_term(m, coeff);
        }
        Ok(p)
    }

    /// Human-readable form with `m_{uv}` variable names.
    pub fn pretty(&self, g: &Graph) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (&m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let abs = c.abs();
            let mut factors: Vec<String> = m
                .iter()
                .map(|e| format!("m_{{{}}}", g.edge_label(e)))
                .collect();
            if !abs.is_one() || factors.is_empty() {
                factors.insert(0, abs.to_string());
            }
            let _ = write!(out, "{}", factors.join(" "));
        }
        out
    }
}

/// Result of [`MultilinearPoly::exact_div`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DivisionOutcome {
    Quotient(MultilinearPoly),
    /// Divisible over the rationals but not with integer coefficients.
    RationalOnly,
    NotDivisible,
}

impl DivisionOutcome {
    pub fn divides_over_rationals(&self) -> bool {
        !matches!(self, DivisionOutcome::NotDivisible)
    }
}

/// Determinant by Laplace expansion along rows, memoized on the set of
/// unused columns. Each product must stay multilinear.
pub fn determinant(matrix: &[Vec<MultilinearPoly>]) -> Result<MultilinearPoly> {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n), "square matrix");
    assert!(n < 64, "determinant limited to 63 rows");
    let mut memo: std::collections::HashMap<u64, MultilinearPoly> =
        std::collections::HashMap::new();
    det_rec(matrix, (1u64 << n) - 1, &mut memo)
}

fn det_rec(
    matrix: &[Vec<MultilinearPoly>],
    cols: u64,
    memo: &mut std::collections::HashMap<u64, MultilinearPoly>,
) -> Result<MultilinearPoly> {
    if cols == 0 {
        return Ok(MultilinearPoly::one());
    }
    if let Some(p) = memo.get(&cols) {
        return Ok(p.clone());
    }
    let row = matrix.len() - cols.count_ones() as usize;
    let mut acc = MultilinearPoly::zero();
    for (position, j) in EdgeSet(cols).iter().enumerate() {
        let entry = &matrix[row][j];
        if !entry.is_zero() {
            let minor = det_rec(matrix, cols & !(1 << j), memo)?;
            let term = entry.mul(&minor)?;
            acc = if position % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
    }
    memo.insert(cols, acc.clone());
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: usize) -> MultilinearPoly {
        MultilinearPoly::var(e)
    }

    #[test]
    fn add_cancels() {
        assert!(m(0).add(&m(0).neg()).is_zero());
        let s = m(0).add(&m(1));
        assert_eq!(s.num_terms(), 2);
    }

    #[test]
    fn mul_rules() {
        let p = m(0).sub(&m(1));
        assert_eq!(MultilinearPoly::one().mul(&p).unwrap(), p);
        assert_eq!(m(0).mul(&m(0)), Err(Error::NotMultilinear));
        let q = p.mul(&m(2).add(&m(3))).unwrap();
        assert_eq!(q.num_terms(), 4);
        assert!(q.is_homogeneous());
    }

    #[test]
    fn normalization() {
        let p = m(0).neg().add(&m(1));
        let n = p.sign_normalized();
        assert_eq!(n.coefficient(EdgeSet::singleton(0)), BigInt::from(1));
        assert!(p.eq_up_to_sign(&n));
    }

    #[test]
    fn exact_division() {
        let d = m(0).sub(&m(1));
        let q = m(2).mul(&m(3)).unwrap().add(&MultilinearPoly::constant(5));
        let p = d.mul(&q).unwrap();
        assert_eq!(
            MultilinearPoly::exact_div(&p, &d).unwrap(),
            DivisionOutcome::Quotient(q.clone())
        );
        let d2 = d.scale(&BigInt::from(2));
        assert_eq!(
            MultilinearPoly::exact_div(&p, &d2).unwrap(),
            DivisionOutcome::RationalOnly
        );
        assert_eq!(
            MultilinearPoly::exact_div(&p.add(&m(0)), &d).unwrap(),
            DivisionOutcome::NotDivisible
        );
        assert_eq!(
            MultilinearPoly::exact_div(&p, &MultilinearPoly::zero()),
            Err(Error::ZeroDivisor)
        );
    }

    #[test]
    fn determinant_two_by_two() {
        let mat = vec![vec![m(0), m(1)], vec![m(2), m(3)]];
        let det = determinant(&mat).unwrap();
        let expect = m(0).mul(&m(3)).unwrap().sub(&m(1).mul(&m(2)).unwrap());
        assert_eq!(det, expect);
        assert_eq!(determinant(&[]).unwrap(), MultilinearPoly::one());
    }

    #[test]
    fn pretty_and_json() {
        let g = Graph::complete(3);
        let p = m(0).sub(&m(2)).scale(&BigInt::from(-2));
        assert_eq!(p.pretty(&g), "-2 m_{12} + 2 m_{23}");
        let json = p.to_json(&g);
        assert_eq!(
            json.to_string(),
            r#"{"terms":[{"edges":[["1","2"]],"coeff":-2},{"edges":[["2","3"]],"coeff":2}]}"#
        );
        assert_eq!(MultilinearPoly::from_json(&g, &json).unwrap(), p);
    }
}
