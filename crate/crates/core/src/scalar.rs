//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Every [`Scalar`] carries the [`SymbolTable`] it is written over; the
//! table lists chart coordinates first and free parameters after them.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exact rational number used for coefficients and point values.
pub type Rational = BigRational;

/// Builds the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Ordered symbol names; coordinates come first, parameters follow.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymbolTable {
    names: Vec<String>,
    coords: usize,
}

impl SymbolTable {
    pub fn new(coords: &[String], params: &[String]) -> Result<Arc<Self>> {
        let names: Vec<String> = coords.iter().chain(params).cloned().collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Domain(format!("duplicate symbol `{n}`")));
            }
        }
        Ok(Arc::new(SymbolTable { names, coords: coords.len() }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Number of leading symbols that are coordinates.
    pub fn coord_count(&self) -> usize {
        self.coords
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

/// Exponent vector, one entry per symbol of the owning table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    pub fn one(len: usize) -> Self {
        Monomial(SmallVec::from_elem(0, len))
    }

    pub fn exps(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(other.0.iter()).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the first symbol wins.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial over the rationals in the symbols of a [`SymbolTable`].
///
/// Zero is the empty term map; no stored coefficient is ever zero.
#[derive(Clone, Debug)]
pub struct Scalar {
    table: Arc<SymbolTable>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.table == other.table
    }
}

impl Eq for Scalar {}

/// Exact assignment of values to symbol names.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalPoint {
    values: BTreeMap<String, Rational>,
}

impl RationalPoint {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<S: Into<String>>(pairs: impl IntoIterator<Item = (S, Rational)>) -> Self {
        RationalPoint { values: pairs.into_iter().map(|(k, v)| (k.into(), v)).collect() }
    }

    pub fn set(&mut self, name: impl Into<String>, value: Rational) {
        self.values.insert(name.into(), value);
    }

    pub fn get(&self, name: &str) -> Option<&Rational> {
        self.values.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Rational)> {
        self.values.iter()
    }
}

impl Scalar {
    pub fn zero(table: &Arc<SymbolTable>) -> Self {
        Scalar { table: table.clone(), terms: BTreeMap::new() }
    }

    pub fn one(table: &Arc<SymbolTable>) -> Self {
        Self::constant(table, Rational::one())
    }

    pub fn constant(table: &Arc<SymbolTable>, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(table.len()), c);
        }
        Scalar { table: table.clone(), terms }
    }

    /// The symbol at position `i` as a polynomial.
    pub fn var_at(table: &Arc<SymbolTable>, i: usize) -> Self {
        let mut m = Monomial::one(table.len());
        m.0[i] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(m, Rational::one());
        Scalar { table: table.clone(), terms }
    }

    pub fn var(table: &Arc<SymbolTable>, name: &str) -> Result<Self> {
        let i = table.index_of(name).ok_or_else(|| Error::Name(format!("unknown symbol `{name}`")))?;
        Ok(Self::var_at(table, i))
    }

    /// Builds a polynomial from (exponents, coefficient) pairs.
    pub fn from_terms(table: &Arc<SymbolTable>, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut out = Scalar::zero(table);
        for (exps, c) in terms {
            if exps.len() != table.len() {
                return Err(Error::Domain(format!(
                    "exponent vector of length {} over {} symbols",
                    exps.len(),
                    table.len()
                )));
            }
            out.add_term(Monomial(exps.into_iter().collect()), c);
        }
        Ok(out)
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; zero has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// `Some(c)` when the polynomial is the constant `c`.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Whether any symbol at a position in `range` occurs.
    pub fn involves(&self, i: usize) -> bool {
        self.terms.keys().any(|m| m.0[i] > 0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_table(&self, other: &Scalar) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(Error::Domain(format!("symbol-table mismatch: {:?} vs {:?}", self.table.names, other.table.names)))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_table(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.negate())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_table(other)?;
        let mut out = Scalar::zero(&self.table);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn negate(&self) -> Scalar {
        Scalar { table: self.table.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn scale(&self, q: &Rational) -> Scalar {
        if q.is_zero() {
            return Scalar::zero(&self.table);
        }
        Scalar { table: self.table.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut out = Scalar::one(&self.table);
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Formal partial derivative with respect to the symbol at position `i`.
    pub fn partial_at(&self, i: usize) -> Scalar {
        let mut out = Scalar::zero(&self.table);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[i] = e - 1;
            out.add_term(m2, c * Rational::from_integer(BigInt::from(e)));
        }
        out
    }

    pub fn partial(&self, name: &str) -> Result<Scalar> {
        let i = self.table.index_of(name).ok_or_else(|| Error::Name(format!("unknown symbol `{name}`")))?;
        Ok(self.partial_at(i))
    }

    /// Exact value at a point assigning every occurring symbol.
    pub fn eval(&self, p: &RationalPoint) -> Result<Rational> {
        let mut values: Vec<Option<&Rational>> = vec![None; self.table.len()];
        for (i, name) in self.table.names.iter().enumerate() {
            values[i] = p.get(name);
        }
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values[i]
                    .ok_or_else(|| Error::Domain(format!("missing assignment for `{}`", self.table.names[i])))?;
                t *= num_traits::pow(v.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Value at a point given positionally (one value per symbol).
    pub fn eval_at(&self, values: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(values[i].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Substitutes symbol `i` by `images[i]`; all images share `target`.
    pub fn compose(&self, images: &[Scalar], target: &Arc<SymbolTable>) -> Scalar {
        debug_assert_eq!(images.len(), self.table.len());
        let mut powers: Vec<Vec<Scalar>> = images.iter().map(|s| vec![Scalar::one(target), s.clone()]).collect();
        let mut out = Scalar::zero(target);
        for (m, c) in &self.terms {
            let mut t = Scalar::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            for (m2, c2) in t.terms {
                out.add_term(m2, c2);
            }
        }
        out
    }

    /// Moves the polynomial into `target`, sending symbol `i` to `map[i]`.
    pub fn reindex(&self, target: &Arc<SymbolTable>, map: &[usize]) -> Scalar {
        let mut out = Scalar::zero(target);
        for (m, c) in &self.terms {
            let mut m2 = Monomial::one(target.len());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    m2.0[map[i]] += e;
                }
            }
            out.add_term(m2, c.clone());
        }
        out
    }

    /// Canonical text: graded-lex descending, explicit `*` and `^`.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let mono = self.monomial_text(m);
            if mono.is_empty() {
                s.push_str(&rational_text(&abs));
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&rational_text(&abs));
                s.push('*');
                s.push_str(&mono);
            }
        }
        s
    }

    fn monomial_text(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.table.names[i].clone()),
                _ => parts.push(format!("{}^{}", self.table.names[i], e)),
            }
        }
        parts.join("*")
    }

    /// Whether the text form needs parentheses as a factor.
    pub fn is_monomial(&self) -> bool {
        self.terms.len() <= 1
    }

    /// JSON form: `{"symbols": [...], "terms": [[[exps], [num, den]], ...]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| json!([m.0.to_vec(), [bigint_json(c.numer()), bigint_json(c.denom())]]))
            .collect();
        json!({ "symbols": self.table.names, "terms": terms })
    }
}

fn bigint_json(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => json!(n.to_string()),
    }
}

/// `p/q` or `p`.
pub fn rational_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

// Operator forms panic on a table mismatch; library code only combines
// scalars of one chart, so a mismatch there is a bug.
impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar addition")
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar subtraction")
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar multiplication")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::negate(self)
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::negate(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(names: &[&str]) -> Arc<SymbolTable> {
        let v: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        SymbolTable::new(&v, &[]).unwrap()
    }

    #[test]
    fn additive_inverse_and_difference_of_squares() {
        let t = table(&["x", "y"]);
        let x = Scalar::var(&t, "x").unwrap();
        let y = Scalar::var(&t, "y").unwrap();
        let x2 = &x * &x;
        assert!((&x2 + &x2.negate()).is_zero());
        let p = &(&x + &y) * &(&x - &y);
        assert_eq!(p, &x2 - &(&y * &y));
        assert_eq!(p.to_text(), "x^2 - y^2");
    }

    #[test]
    fn partials_and_eval() {
        let t = table(&["x1", "x2", "x3"]);
        let x1 = Scalar::var(&t, "x1").unwrap();
        let x3 = Scalar::var(&t, "x3").unwrap();
        assert_eq!((&x1 * &x3).partial("x1").unwrap(), x3);
        assert!(Scalar::var(&t, "q").is_err());

        let t = table(&["x", "y", "z"]);
        let f: Scalar =
            ["x", "y", "z"].iter().map(|n| Scalar::var(&t, n).unwrap().pow(2)).fold(Scalar::zero(&t), |a, b| &a + &b);
        let p = RationalPoint::from_pairs([("x", int(1)), ("y", int(2)), ("z", int(2))]);
        assert_eq!(f.eval(&p).unwrap(), int(9));
        assert_eq!(Scalar::zero(&t).eval(&RationalPoint::new()).unwrap(), int(0));
        assert!(f.eval(&RationalPoint::from_pairs([("x", int(1))])).is_err());
    }

    #[test]
    fn mismatched_tables_are_rejected() {
        let a = Scalar::var(&table(&["x"]), "x").unwrap();
        let b = Scalar::var(&table(&["y"]), "y").unwrap();
        assert!(a.try_add(&b).is_err());
    }

    #[test]
    fn text_uses_grlex_descending() {
        let t = table(&["x", "y"]);
        let x = Scalar::var(&t, "x").unwrap();
        let y = Scalar::var(&t, "y").unwrap();
        let p = &(&y + &x.pow(2).scale(&rat(-3, 2))) + &Scalar::constant(&t, int(4));
        assert_eq!(p.to_text(), "-3/2*x^2 + y + 4");
    }
}
