//! Polynomial maps between charts.

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::exterior::{accumulate, Components};
use crate::scalar::{Rational, Scalar};
use crate::tensor::{differential, Form};

/// `φ: source → target`, one polynomial in source symbols per target coordinate.
///
/// Target parameters are identified with source parameters of the same name.
#[derive(Clone, Debug)]
pub struct PolyMap {
    source: Chart,
    target: Chart,
    images: Vec<Scalar>,
}

impl PolyMap {
    pub fn new(source: &Chart, target: &Chart, images: Vec<Scalar>) -> Result<PolyMap> {
        if images.len() != target.dim() {
            return Err(Error::Domain(format!(
                "map into `{}` needs {} components, got {}",
                target.name(),
                target.dim(),
                images.len()
            )));
        }
        for p in target.params() {
            if source.table().index_of(p).is_none() {
                return Err(Error::Domain(format!("parameter `{p}` missing from `{}`", source.name())));
            }
        }
        for s in &images {
            if s.table() != source.table() {
                return Err(Error::Domain("map component not written over the source chart".into()));
            }
        }
        Ok(PolyMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(chart: &Chart) -> PolyMap {
        let images = (0..chart.dim()).map(|i| chart.coord(i)).collect();
        PolyMap { source: chart.clone(), target: chart.clone(), images }
    }

    pub fn source(&self) -> &Chart {
        &self.source
    }

    pub fn target(&self) -> &Chart {
        &self.target
    }

    pub fn images(&self) -> &[Scalar] {
        &self.images
    }

    /// `f ∘ φ` for a function on the target.
    pub fn pull_scalar(&self, f: &Scalar) -> Scalar {
        let mut subst = self.images.clone();
        for p in self.target.params() {
            subst.push(self.source.var(p).expect("checked at construction"));
        }
        f.compose(&subst, self.source.table())
    }

    /// `∂φ^a/∂x^i` as rows `a`, columns `i`.
    pub fn jacobian(&self) -> Vec<Vec<Scalar>> {
        self.images.iter().map(|f| (0..self.source.dim()).map(|i| f.partial_at(i)).collect()).collect()
    }

    /// `φ^*μ = Σ_J (μ_J ∘ φ) dφ^{j1} ∧ … ∧ dφ^{jr}`.
    pub fn pullback_form(&self, mu: &Form) -> Result<Form> {
        mu.chart().check_same(&self.target)?;
        let dphi: Vec<Form> = self.images.iter().map(|f| differential(&self.source, f)).collect();
        let mut out = Form::zero(&self.source, mu.degree());
        for (ix, c) in mu.components() {
            let mut t = Form::from_scalar(&self.source, self.pull_scalar(c));
            for &j in ix.iter() {
                t = t.wedge(&dphi[j as usize])?;
            }
            out = out.try_add(&Form::from_raw(&self.source, mu.degree(), t.components().clone()))?;
        }
        Ok(out)
    }

    /// Evaluates the map at rational source coordinates (parameters must be absent).
    pub fn eval(&self, x: &[Rational]) -> Vec<Rational> {
        self.images.iter().map(|f| f.eval_at(x)).collect()
    }

    pub fn compose_after(&self, inner: &PolyMap) -> Result<PolyMap> {
        inner.target.check_same(&self.source)?;
        let images = self.images.iter().map(|f| inner.pull_scalar(f)).collect();
        PolyMap::new(&inner.source, &self.target, images)
    }
}

/// Evaluates a symbolic matrix at positional symbol values.
pub fn eval_matrix(m: &[Vec<Scalar>], values: &[Rational]) -> Vec<Vec<Rational>> {
    m.iter().map(|row| row.iter().map(|s| s.eval_at(values)).collect()).collect()
}

/// Evaluates symbolic components at positional symbol values.
pub fn eval_components(c: &Components<Scalar>, values: &[Rational]) -> Components<Rational> {
    let mut out = Components::new();
    for (k, v) in c {
        accumulate(&mut out, k.clone(), v.eval_at(values), false);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pullback_of_area_form_is_jacobian_determinant() {
        let m = Chart::new("M", &["u", "v"], &[]).unwrap();
        let n = Chart::new("N", &["x", "y"], &[]).unwrap();
        let u = m.var("u").unwrap();
        let v = m.var("v").unwrap();
        let phi = PolyMap::new(&m, &n, vec![&u * &v, u.clone()]).unwrap();
        let w = Form::basis(&n, &["x", "y"]).unwrap();
        // d(uv)∧du = u dv∧du = −u du∧dv
        assert_eq!(phi.pullback_form(&w).unwrap(), Form::basis(&m, &["u", "v"]).unwrap().scale(&u.negate()));
    }
}
