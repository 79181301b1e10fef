//! Exterior derivative, Lie derivative and the Schouten-Nijenhuis bracket.

use crate::error::{Error, Result};
use crate::exterior::{accumulate, merge, Components, MultiIndex};
use crate::scalar::Scalar;
use crate::tensor::{contract_multivector_into_form, Form, Multivector, Tensor, Variance};

/// `d(μ_I dx^I) = Σ_k ∂_k μ_I dx^k ∧ dx^I`.
pub fn exterior_d(mu: &Form) -> Form {
    let chart = mu.chart();
    let mut comps = Components::new();
    for (ix, c) in mu.components() {
        for k in 0..chart.dim() {
            let dc = c.partial_at(k);
            if dc.is_zero() {
                continue;
            }
            if let Some((odd, j)) = merge(&[k as u8], ix) {
                accumulate(&mut comps, j, dc, odd);
            }
        }
    }
    Form::from_raw(chart, mu.degree() + 1, comps)
}

/// Removes position `k` from `ix` by moving it to the right end first.
fn right_remove(ix: &[u8], k: u8) -> Option<(bool, MultiIndex)> {
    let m = ix.iter().position(|&i| i == k)?;
    let rest: MultiIndex = ix.iter().copied().filter(|&i| i != k).collect();
    Some(((ix.len() - 1 - m) % 2 == 1, rest))
}

/// `Σ_k (∂A/∂θ_k)·(∂B/∂x^k)`, the right θ-derivative of `a` wedged with the
/// `x`-derivative of `b`.
fn half_bracket(a: &Multivector, b: &Multivector) -> Components<Scalar> {
    let mut out = Components::new();
    let n = a.chart().dim();
    for k in 0..n {
        let db: Vec<(&MultiIndex, Scalar)> =
            b.components().iter().map(|(j, c)| (j, c.partial_at(k))).filter(|(_, c)| !c.is_zero()).collect();
        if db.is_empty() {
            continue;
        }
        for (i, ca) in a.components() {
            let Some((odd_r, rest)) = right_remove(i, k as u8) else { continue };
            for (j, cb) in &db {
                if let Some((odd_m, ix)) = merge(&rest, j) {
                    accumulate(&mut out, ix, ca * cb, odd_r ^ odd_m);
                }
            }
        }
    }
    out
}

/// Schouten-Nijenhuis bracket of a `p`-vector and a `q`-vector.
///
/// `[A,B] = Σ_k ∂_θk A · ∂_k B − (−1)^{(p−1)(q−1)} Σ_k ∂_θk B · ∂_k A` with
/// right θ-derivatives; this is the Lie bracket on vector fields, gives
/// `[X,f] = X(f)` and agrees with the decomposable expansion.
pub fn schouten(a: &Multivector, b: &Multivector) -> Result<Multivector> {
    a.chart().check_same(b.chart())?;
    let (p, q) = (a.degree() as i64, b.degree() as i64);
    let deg = p + q - 1;
    if deg < 0 {
        return Ok(Multivector::zero(a.chart(), 0));
    }
    let first = half_bracket(a, b);
    let second = half_bracket(b, a);
    let flip = ((p - 1) * (q - 1)).rem_euclid(2) == 0;
    let mut comps = first;
    for (k, v) in second {
        accumulate(&mut comps, k, v, flip);
    }
    Ok(Multivector::from_raw(a.chart(), deg as usize, comps))
}

/// Lie derivative along a vector field.
pub trait LieDerivative: Sized {
    fn lie_derivative_along(&self, x: &Multivector) -> Result<Self>;
}

impl LieDerivative for Form {
    /// Cartan: `$_X μ = i_X dμ + d i_X μ`.
    fn lie_derivative_along(&self, x: &Multivector) -> Result<Form> {
        if self.degree() == 0 {
            let d = exterior_d(self);
            return contract_multivector_into_form(x, &d);
        }
        let a = contract_multivector_into_form(x, &exterior_d(self))?;
        let b = exterior_d(&contract_multivector_into_form(x, self)?);
        a.try_add(&b)
    }
}

impl LieDerivative for Multivector {
    fn lie_derivative_along(&self, x: &Multivector) -> Result<Multivector> {
        schouten(x, self)
    }
}

pub fn lie_derivative<T: LieDerivative>(x: &Multivector, t: &T) -> Result<T> {
    if x.degree() != 1 {
        return Err(Error::Type(format!("Lie derivative along a degree-{} multivector", x.degree())));
    }
    t.lie_derivative_along(x)
}

/// Applies a vector field to a function: `X(f) = Σ X^k ∂_k f`.
pub fn apply_field(x: &Multivector, f: &Scalar) -> Scalar {
    let mut acc = x.chart().zero();
    for (ix, c) in x.components() {
        if ix.len() == 1 {
            acc = &acc + &(c * &f.partial_at(ix[0] as usize));
        }
    }
    acc
}

/// Maps every coefficient through `f` and relabels positions through `map`.
pub(crate) fn relabel<V: Variance>(
    t: &Tensor<V>,
    chart: &crate::chart::Chart,
    map: &[usize],
    f: impl Fn(&Scalar) -> Scalar,
) -> Tensor<V> {
    let mut comps = Components::new();
    for (ix, c) in t.components() {
        let v: Vec<usize> = ix.iter().map(|&i| map[i as usize]).collect();
        if let Some((odd, k)) = crate::exterior::normalize(&v) {
            accumulate(&mut comps, k, f(c), odd);
        }
    }
    Tensor::from_raw(chart, t.degree(), comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::Chart;
    use crate::scalar::int;

    fn setup() -> (Chart, Scalar, Scalar) {
        let m = Chart::new("M", &["x", "y"], &[]).unwrap();
        let x = m.var("x").unwrap();
        let y = m.var("y").unwrap();
        (m, x, y)
    }

    #[test]
    fn exterior_derivative_examples() {
        let (m, x, _) = setup();
        let f = Form::from_scalar(&m, x.pow(2));
        assert_eq!(exterior_d(&f), Form::basis(&m, &["x"]).unwrap().scale(&x.scale(&int(2))));
        let xdy = Form::basis(&m, &["y"]).unwrap().scale(&x);
        assert_eq!(exterior_d(&xdy), Form::basis(&m, &["x", "y"]).unwrap());
    }

    #[test]
    fn lie_derivative_examples() {
        let (m, x, _) = setup();
        let ex = Multivector::basis(&m, &["x"]).unwrap();
        let ey = Multivector::basis(&m, &["y"]).unwrap();
        let xdx = Form::basis(&m, &["x"]).unwrap().scale(&x);
        assert_eq!(lie_derivative(&ex, &xdx).unwrap(), Form::basis(&m, &["x"]).unwrap());
        assert_eq!(lie_derivative(&ex.scale(&x), &ex).unwrap(), ex.neg());
        let w = Form::basis(&m, &["x", "y"]).unwrap();
        assert!(lie_derivative(&ey.scale(&x), &w).unwrap().is_zero());
    }

    #[test]
    fn vector_field_brackets() {
        let (m, x, y) = setup();
        let ex = Multivector::basis(&m, &["x"]).unwrap();
        let ey = Multivector::basis(&m, &["y"]).unwrap();
        assert!(schouten(&ex, &ey).unwrap().is_zero());
        assert!(schouten(&ex.scale(&x), &ey.scale(&y)).unwrap().is_zero());
        let b = schouten(&ey.scale(&x), &ex.scale(&y)).unwrap();
        assert_eq!(b, ex.scale(&x).try_sub(&ey.scale(&y)).unwrap());
        // [X, f] = X(f)
        let f = Multivector::from_scalar(&m, &x * &y);
        assert_eq!(schouten(&ex.scale(&x), &f).unwrap(), Multivector::from_scalar(&m, &x * &y));
    }
}
