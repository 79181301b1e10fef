//! Multivector fields and differential forms on a chart.
//!
//! Components live on strictly increasing multi-indices. Interior products
//! contract from the left: `⟨i_μ X, η⟩ = ⟨X, μ∧η⟩` and `⟨i_u μ, v⟩ = ⟨u∧v, μ⟩`.

use std::fmt;
use std::marker::PhantomData;

use serde_json::{json, Value};

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::exterior::{self, index, normalize, Components, MultiIndex};
use crate::scalar::{Rational, Scalar};

/// Marks the variance of a [`Tensor`].
pub trait Variance: Clone + fmt::Debug + Send + Sync + 'static {
    const NAME: &'static str;
    /// Prefix of a basis element in text form.
    fn basis_symbol(coord: &str) -> String;
}

#[derive(Clone, Debug)]
pub struct Vector;

#[derive(Clone, Debug)]
pub struct Covector;

impl Variance for Vector {
    const NAME: &'static str = "multivector";
    fn basis_symbol(coord: &str) -> String {
        format!("@{coord}")
    }
}

impl Variance for Covector {
    const NAME: &'static str = "form";
    fn basis_symbol(coord: &str) -> String {
        format!("d{coord}")
    }
}

/// A degree-`r` sparse tensor with polynomial coefficients.
#[derive(Clone)]
pub struct Tensor<V: Variance> {
    chart: Chart,
    degree: usize,
    comps: Components<Scalar>,
    _v: PhantomData<V>,
}

pub type Multivector = Tensor<Vector>;
pub type Form = Tensor<Covector>;

impl<V: Variance> PartialEq for Tensor<V> {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.chart.same(&other.chart) && self.comps == other.comps
    }
}

impl<V: Variance> Eq for Tensor<V> {}

impl<V: Variance> Tensor<V> {
    pub fn zero(chart: &Chart, degree: usize) -> Self {
        Tensor { chart: chart.clone(), degree, comps: Components::new(), _v: PhantomData }
    }

    /// A degree-0 tensor.
    pub fn from_scalar(chart: &Chart, s: Scalar) -> Self {
        let mut comps = Components::new();
        exterior::accumulate(&mut comps, MultiIndex::new(), s, false);
        Tensor { chart: chart.clone(), degree: 0, comps, _v: PhantomData }
    }

    /// `coeff · e_{i1} ∧ … ∧ e_{ir}` for positions in any order.
    pub fn term(chart: &Chart, positions: &[usize], coeff: Scalar) -> Result<Self> {
        if let Some(&bad) = positions.iter().find(|&&i| i >= chart.dim()) {
            return Err(Error::Domain(format!("index {bad} outside chart `{}`", chart.name())));
        }
        let mut t = Self::zero(chart, positions.len());
        if let Some((odd, ix)) = normalize(positions) {
            exterior::accumulate(&mut t.comps, ix, coeff, odd);
        }
        Ok(t)
    }

    /// Basis element on named coordinates, e.g. `["x", "y"]`.
    pub fn basis(chart: &Chart, names: &[&str]) -> Result<Self> {
        let pos = names
            .iter()
            .map(|n| chart.coord_index(n).ok_or_else(|| Error::Name(format!("unknown coordinate `{n}`"))))
            .collect::<Result<Vec<_>>>()?;
        Self::term(chart, &pos, chart.one())
    }

    pub fn from_components(chart: &Chart, degree: usize, comps: Components<Scalar>) -> Result<Self> {
        let mut t = Self::zero(chart, degree);
        for (k, v) in comps {
            if k.len() != degree || k.windows(2).any(|w| w[0] >= w[1]) || k.iter().any(|&i| i as usize >= chart.dim()) {
                return Err(Error::Domain(format!("invalid multi-index {:?} for degree {degree}", k)));
            }
            if v.table() != chart.table() {
                return Err(Error::Domain("coefficient symbol table differs from chart".into()));
            }
            exterior::accumulate(&mut t.comps, k, v, false);
        }
        Ok(t)
    }

    pub(crate) fn from_raw(chart: &Chart, degree: usize, comps: Components<Scalar>) -> Self {
        Tensor { chart: chart.clone(), degree, comps, _v: PhantomData }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &Components<Scalar> {
        &self.comps
    }

    pub fn component(&self, positions: &[usize]) -> Scalar {
        match normalize(positions) {
            Some((odd, ix)) => match self.comps.get(&ix) {
                Some(c) if odd => c.negate(),
                Some(c) => c.clone(),
                None => self.chart.zero(),
            },
            None => self.chart.zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// The scalar of a degree-0 tensor.
    pub fn as_scalar(&self) -> Option<Scalar> {
        (self.degree == 0).then(|| self.comps.get(&MultiIndex::new()).cloned().unwrap_or_else(|| self.chart.zero()))
    }

    fn check(&self, other: &Self) -> Result<()> {
        self.chart.check_same(&other.chart)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        if self.degree != other.degree {
            return Err(Error::Type(format!("cannot add {} of degrees {} and {}", V::NAME, self.degree, other.degree)));
        }
        Ok(Self::from_raw(&self.chart, self.degree, exterior::add(&self.comps, &other.comps)))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self::from_raw(&self.chart, self.degree, exterior::neg(&self.comps))
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        Self::from_raw(&self.chart, self.degree, exterior::scale(&self.comps, s))
    }

    pub fn scale_q(&self, q: &Rational) -> Self {
        self.scale(&self.chart.constant(q.clone()))
    }

    pub fn wedge(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self::from_raw(&self.chart, self.degree + other.degree, exterior::wedge(&self.comps, &other.comps)))
    }

    /// Applies `f` to each coefficient, keeping the index set.
    pub fn map_coefficients(&self, chart: &Chart, f: impl Fn(&Scalar) -> Scalar) -> Self {
        let mut comps = Components::new();
        for (k, v) in &self.comps {
            exterior::accumulate(&mut comps, k.clone(), f(v), false);
        }
        Self::from_raw(chart, self.degree, comps)
    }

    /// Text form, e.g. `x^2 * @x^@y - @y^@z`.
    pub fn to_text(&self) -> String {
        if self.comps.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (n, (k, c)) in self.comps.iter().enumerate() {
            let basis: Vec<String> = k.iter().map(|&i| V::basis_symbol(&self.chart.coords()[i as usize])).collect();
            let basis = basis.join("^");
            let (neg, coeff) =
                if c.is_monomial() && c.to_text().starts_with('-') { (true, c.negate()) } else { (false, c.clone()) };
            if n == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let ct = coeff.to_text();
            if basis.is_empty() {
                if coeff.is_monomial() {
                    out.push_str(&ct);
                } else {
                    out.push_str(&format!("({ct})"));
                }
            } else if ct == "1" {
                out.push_str(&basis);
            } else if coeff.is_monomial() {
                out.push_str(&format!("{ct} * {basis}"));
            } else {
                out.push_str(&format!("({ct}) * {basis}"));
            }
        }
        out
    }

    /// `{degree, chart, coords, components: [{index, coeff}]}`.
    pub fn to_json(&self) -> Value {
        let comps: Vec<Value> = self
            .comps
            .iter()
            .map(|(k, c)| {
                let ix: Vec<usize> = k.iter().map(|&i| i as usize).collect();
                json!({ "index": ix, "coeff": c.to_json(), "text": c.to_text() })
            })
            .collect();
        json!({
            "kind": V::NAME,
            "chart": self.chart.name(),
            "coords": self.chart.coords(),
            "degree": self.degree,
            "components": comps,
            "text": self.to_text(),
        })
    }
}

impl<V: Variance> fmt::Display for Tensor<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<V: Variance> fmt::Debug for Tensor<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{} on {:?}]", V::NAME, self.to_text(), self.chart)
    }
}

/// `⟨X, μ⟩ = Σ_J X^J μ_J`.
pub fn pair(x: &Multivector, mu: &Form) -> Result<Scalar> {
    x.chart.check_same(&mu.chart)?;
    if x.degree != mu.degree {
        return Err(Error::Type(format!("pairing degrees {} and {}", x.degree, mu.degree)));
    }
    Ok(exterior::pair(&x.comps, &mu.comps).unwrap_or_else(|| x.chart.zero()))
}

/// `i_μ X` of degree `r − i`.
pub fn contract_form_into_multivector(mu: &Form, x: &Multivector) -> Result<Multivector> {
    mu.chart.check_same(&x.chart)?;
    if mu.degree > x.degree {
        return Err(Error::Type(format!("contracting a {}-form into a {}-vector", mu.degree, x.degree)));
    }
    Ok(Multivector::from_raw(&x.chart, x.degree - mu.degree, exterior::contract(&mu.comps, &x.comps)))
}

/// `i_X μ` of degree `r − i`.
pub fn contract_multivector_into_form(x: &Multivector, mu: &Form) -> Result<Form> {
    mu.chart.check_same(&x.chart)?;
    if x.degree > mu.degree {
        return Err(Error::Type(format!("contracting a {}-vector into a {}-form", x.degree, mu.degree)));
    }
    Ok(Form::from_raw(&mu.chart, mu.degree - x.degree, exterior::contract(&x.comps, &mu.comps)))
}

/// Degree-1 tensor from a list of coefficients.
pub fn one_tensor<V: Variance>(chart: &Chart, coeffs: &[Scalar]) -> Tensor<V> {
    let mut comps = Components::new();
    for (i, c) in coeffs.iter().enumerate() {
        exterior::accumulate(&mut comps, index(&[i]), c.clone(), false);
    }
    Tensor::from_raw(chart, 1, comps)
}

/// `d` of a scalar as a 1-form.
pub fn differential(chart: &Chart, f: &Scalar) -> Form {
    let coeffs: Vec<Scalar> = (0..chart.dim()).map(|i| f.partial_at(i)).collect();
    one_tensor(chart, &coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn chart() -> Chart {
        Chart::new("M", &["x", "y", "z"], &[]).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let m = chart();
        let dx = Multivector::basis(&m, &["x"]).unwrap();
        let dy = Multivector::basis(&m, &["y"]).unwrap();
        assert_eq!(dx.wedge(&dy).unwrap(), Multivector::basis(&m, &["x", "y"]).unwrap());
        assert!(dx.wedge(&dx).unwrap().is_zero());
        let x2 = m.var("x").unwrap().pow(2);
        let a = dx.scale(&x2);
        assert_eq!(a.wedge(&dy).unwrap(), dy.wedge(&a).unwrap().neg());
        assert_eq!(a.wedge(&dy).unwrap().to_text(), "x^2 * @x^@y");
    }

    #[test]
    fn pairing_and_contractions() {
        let m = chart();
        let xy = Multivector::basis(&m, &["x", "y"]).unwrap();
        let dxdy = Form::basis(&m, &["x", "y"]).unwrap();
        let dxdz = Form::basis(&m, &["x", "z"]).unwrap();
        assert_eq!(pair(&xy, &dxdy).unwrap(), m.one());
        assert!(pair(&xy, &dxdz).unwrap().is_zero());

        let dx = Form::basis(&m, &["x"]).unwrap();
        let dz = Form::basis(&m, &["z"]).unwrap();
        assert_eq!(contract_form_into_multivector(&dx, &xy).unwrap(), Multivector::basis(&m, &["y"]).unwrap());
        assert!(contract_form_into_multivector(&dz, &xy).unwrap().is_zero());

        let x = m.var("x").unwrap();
        let bivector = xy.scale(&x.pow(2));
        assert_eq!(contract_form_into_multivector(&dx, &bivector).unwrap().to_text(), "x^2 * @y");

        let ex = Multivector::basis(&m, &["x"]).unwrap();
        let ey = Multivector::basis(&m, &["y"]).unwrap();
        assert_eq!(contract_multivector_into_form(&ex, &dxdy).unwrap(), Form::basis(&m, &["y"]).unwrap());
        assert!(contract_multivector_into_form(&ey, &dx).unwrap().is_zero());
        let mu = dxdy.scale(&x).try_add(&Form::basis(&m, &["y", "z"]).unwrap()).unwrap();
        assert_eq!(contract_multivector_into_form(&ex, &mu).unwrap(), Form::basis(&m, &["y"]).unwrap().scale(&x));
        assert!(contract_form_into_multivector(&dxdy, &ex).is_err());
    }

    #[test]
    fn text_and_json() {
        let m = chart();
        let t = Form::term(&m, &[1, 0], m.constant(int(2))).unwrap();
        assert_eq!(t.to_text(), "-2 * dx^dy");
        assert_eq!(t.to_json()["degree"], 2);
    }
}
