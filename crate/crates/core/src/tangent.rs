//! Lifts to the tangent bundle: `v_T`, `i_T`, `d_T`, complete and vertical
//! lifts, second-order fields, and pullbacks along a vector field's section.
//!
//! In a tangent chart of dimension `2n`, position `i < n` is `x^i` and
//! position `n + i` is its dotted partner.

use crate::cartan::{lie_derivative, relabel};
use crate::chart::{Chart, ChartKind};
use crate::error::{Error, Result};
use crate::exterior::{accumulate, normalize, Components};
use crate::polymap::PolyMap;
use crate::scalar::Scalar;
use crate::tensor::{contract_multivector_into_form, one_tensor, Form, Multivector, Tensor, Variance};

/// Dotted partner of a coordinate name.
pub fn dotted(name: &str) -> String {
    format!("{name}_dot")
}

/// Doubles a base chart: `(x, y) → (x, y, x_dot, y_dot)`.
pub fn tangent_chart(c: &Chart) -> Result<Chart> {
    if !matches!(c.kind(), ChartKind::Base) {
        return Err(Error::Domain(format!("`{}` is not a base chart", c.name())));
    }
    let mut coords: Vec<String> = c.coords().to_vec();
    coords.extend(c.coords().iter().map(|n| dotted(n)));
    Chart::with_kind(&format!("T{}", c.name()), coords, c.params().to_vec(), ChartKind::Tangent(c.clone()))
}

fn base_and_tangent(t: &Chart) -> Result<(Chart, usize)> {
    let base = t.tangent_base().ok_or_else(|| Error::Domain(format!("`{}` is not a tangent chart", t.name())))?.clone();
    let n = base.dim();
    Ok((base, n))
}

/// Symbol positions of the base table inside the tangent table.
fn embedding(base: &Chart) -> Vec<usize> {
    let n = base.dim();
    (0..base.table().len()).map(|i| if i < n { i } else { i + n }).collect()
}

/// `f ∘ τ_M`.
pub fn vertical_lift_scalar(tc: &Chart, f: &Scalar) -> Scalar {
    let base = tc.tangent_base().expect("tangent chart");
    f.reindex(tc.table(), &embedding(base))
}

/// `d_T f = Σ ∂f/∂x^k ẋ^k`.
pub fn tangent_lift_scalar(tc: &Chart, f: &Scalar) -> Scalar {
    let n = tc.dim() / 2;
    let mut acc = tc.zero();
    for k in 0..n {
        let d = f.partial_at(k);
        if !d.is_zero() {
            acc = &acc + &(&vertical_lift_scalar(tc, &d) * &tc.coord(n + k));
        }
    }
    acc
}

/// Substitutes `ẋ := X(x)` and moves the result back to the base table.
pub fn restrict_to_section(x: &Multivector, f: &Scalar) -> Scalar {
    let base = x.chart();
    let n = base.dim();
    let mut images: Vec<Scalar> = (0..n).map(|i| base.coord(i)).collect();
    images.extend((0..n).map(|i| x.component(&[i])));
    images.extend((0..base.params().len()).map(|j| Scalar::var_at(base.table(), n + j)));
    f.compose(&images, base.table())
}

fn lift_identity<V: Variance>(t: &Tensor<V>) -> Result<(Chart, usize)> {
    let tc = tangent_chart(t.chart())?;
    let n = t.chart().dim();
    Ok((tc, n))
}

/// `v_T` on forms: pullback along the projection.
pub fn vertical_lift_form(mu: &Form) -> Result<Form> {
    let (tc, n) = lift_identity(mu)?;
    let map: Vec<usize> = (0..n).collect();
    Ok(relabel(mu, &tc, &map, |c| vertical_lift_scalar(&tc, c)))
}

/// `v_T` on multivectors: `∂x^i ↦ ∂ẋ^i`, coefficients pulled back.
pub fn vertical_lift_mv(x: &Multivector) -> Result<Multivector> {
    let (tc, n) = lift_identity(x)?;
    let map: Vec<usize> = (0..n).map(|i| n + i).collect();
    Ok(relabel(x, &tc, &map, |c| vertical_lift_scalar(&tc, c)))
}

/// Shared coordinate formula of `d_T`.
///
/// `derivative_dotted` selects where the `∂_k c · ẋ^k` term lives: on the
/// base indices (forms) or on the dotted ones (multivectors); the other
/// summand keeps exactly one index on the opposite side.
fn dt_tensor<V: Variance>(t: &Tensor<V>, derivative_dotted: bool) -> Result<Tensor<V>> {
    let (tc, n) = lift_identity(t)?;
    let mut comps = Components::new();
    for (ix, c) in t.components() {
        let base_ix: Vec<usize> = ix.iter().map(|&i| i as usize).collect();
        let shift = |i: usize, dotted: bool| if dotted { i + n } else { i };
        // derivative part
        let dc = tangent_lift_scalar(&tc, c);
        if !dc.is_zero() {
            let v: Vec<usize> = base_ix.iter().map(|&i| shift(i, derivative_dotted)).collect();
            let (odd, k) = normalize(&v).expect("distinct");
            accumulate(&mut comps, k, dc, odd);
        }
        // one slot switched
        let lifted = vertical_lift_scalar(&tc, c);
        for m in 0..base_ix.len() {
            let v: Vec<usize> = base_ix
                .iter()
                .enumerate()
                .map(|(p, &i)| shift(i, if p == m { !derivative_dotted } else { derivative_dotted }))
                .collect();
            let (odd, k) = normalize(&v).expect("distinct");
            accumulate(&mut comps, k, lifted.clone(), odd);
        }
    }
    Ok(Tensor::from_raw(&tc, t.degree(), comps))
}

/// `d_T μ = Σ ∂_kμ_I ẋ^k dx^I + Σ_m μ_I dx^{i1}∧…∧dẋ^{im}∧…∧dx^{ir}`.
pub fn tangent_lift_form(mu: &Form) -> Result<Form> {
    dt_tensor(mu, false)
}

/// `d_T X = Σ ∂_kX^I ẋ^k ∂ẋ^I + Σ_m X^I ∂ẋ^{i1}∧…∧∂x^{im}∧…∧∂ẋ^{ir}`.
pub fn tangent_lift_mv(x: &Multivector) -> Result<Multivector> {
    dt_tensor(x, true)
}

/// Complete lift of a vector field.
pub fn complete_lift(y: &Multivector) -> Result<Multivector> {
    if y.degree() != 1 {
        return Err(Error::Type("complete lift needs a vector field".into()));
    }
    tangent_lift_mv(y)
}

/// Vertical lift of a vector field.
pub fn vertical_lift_field(y: &Multivector) -> Result<Multivector> {
    if y.degree() != 1 {
        return Err(Error::Type("vertical lift needs a vector field".into()));
    }
    vertical_lift_mv(y)
}

/// `Γ = ẋ^k ∂x^k + f^k ∂ẋ^k` on a tangent chart.
#[derive(Clone, Debug)]
pub struct SecondOrderField {
    field: Multivector,
}

impl SecondOrderField {
    pub fn new(field: Multivector) -> Result<Self> {
        let (_, n) = base_and_tangent(field.chart())?;
        if field.degree() != 1 {
            return Err(Error::Type("second-order field must be a vector field".into()));
        }
        for k in 0..n {
            if field.component(&[k]) != field.chart().coord(n + k) {
                return Err(Error::Domain(format!(
                    "component along {} is not {}",
                    field.chart().coords()[k],
                    field.chart().coords()[n + k]
                )));
            }
        }
        Ok(SecondOrderField { field })
    }

    /// `ẋ^k ∂x^k + accel^k ∂ẋ^k`.
    pub fn with_accelerations(tc: &Chart, accel: &[Scalar]) -> Result<Self> {
        let (_, n) = base_and_tangent(tc)?;
        if accel.len() != n {
            return Err(Error::Domain("one acceleration per coordinate".into()));
        }
        let mut coeffs: Vec<Scalar> = (0..n).map(|k| tc.coord(n + k)).collect();
        coeffs.extend(accel.iter().cloned());
        Self::new(one_tensor(tc, &coeffs))
    }

    /// `Γ₀ = ẋ^k ∂x^k`.
    pub fn canonical(tc: &Chart) -> Result<Self> {
        let n = tc.dim() / 2;
        Self::with_accelerations(tc, &vec![tc.zero(); n])
    }

    pub fn field(&self) -> &Multivector {
        &self.field
    }
}

/// `i_T μ = i_Γ v_T μ` for the given second-order field.
pub fn tangent_contraction_with(mu: &Form, gamma: &SecondOrderField) -> Result<Form> {
    let v = vertical_lift_form(mu)?;
    if mu.degree() == 0 {
        return Ok(Form::zero(v.chart(), 0));
    }
    contract_multivector_into_form(gamma.field(), &v)
}

/// `i_T μ` using `Γ₀`.
pub fn tangent_contraction(mu: &Form) -> Result<Form> {
    let tc = tangent_chart(mu.chart())?;
    tangent_contraction_with(mu, &SecondOrderField::canonical(&tc)?)
}

/// The section `x ↦ (x, X(x))` as a polynomial map.
pub fn section_map(x: &Multivector) -> Result<PolyMap> {
    if x.degree() != 1 {
        return Err(Error::Type("section of a non-vector field".into()));
    }
    let base = x.chart();
    let tc = tangent_chart(base)?;
    let mut images: Vec<Scalar> = (0..base.dim()).map(|i| base.coord(i)).collect();
    images.extend((0..base.dim()).map(|i| x.component(&[i])));
    PolyMap::new(base, &tc, images)
}

/// `X^*` on forms: pullback along the section.
pub fn pullback_form_along_field(x: &Multivector, mu: &Form) -> Result<Form> {
    section_map(x)?.pullback_form(mu)
}

/// `X^* Y`: restrict to the section and project
/// `∂ẋ^i ↦ ∂x^i`, `∂x^i ↦ −Σ_k ∂_iX^k ∂x^k`, extended multiplicatively.
pub fn pullback_mv_along_field(x: &Multivector, y: &Multivector) -> Result<Multivector> {
    if x.degree() != 1 {
        return Err(Error::Type("pullback along a non-vector field".into()));
    }
    let base = x.chart();
    let (yb, n) = base_and_tangent(y.chart())?;
    base.check_same(&yb)?;
    let images: Vec<Multivector> = (0..2 * n)
        .map(|i| {
            if i >= n {
                Multivector::term(base, &[i - n], base.one()).expect("in range")
            } else {
                let coeffs: Vec<Scalar> = (0..n).map(|k| x.component(&[k]).partial_at(i).negate()).collect();
                one_tensor(base, &coeffs)
            }
        })
        .collect();
    let mut out = Multivector::zero(base, y.degree());
    for (ix, c) in y.components() {
        let mut t = Multivector::from_scalar(base, restrict_to_section(x, c));
        for &i in ix.iter() {
            t = t.wedge(&images[i as usize])?;
        }
        out = out.try_add(&t)?;
    }
    Ok(out)
}

/// `X_+ μ = d_T μ − v_T($_X μ)`.
pub fn horizontal_part(x: &Multivector, mu: &Form) -> Result<Form> {
    let d = tangent_lift_form(mu)?;
    let l = vertical_lift_form(&lie_derivative(x, mu)?)?;
    d.try_sub(&l)
}

/// `X_*`: the homomorphism with `X_* f = v_T f` and `X_* dx^i = X_+ dx^i`.
///
/// On the image of the section it agrees with `X_+` on 1-forms.
pub fn horizontal_extension(x: &Multivector, mu: &Form) -> Result<Form> {
    let base = mu.chart();
    let tc = tangent_chart(base)?;
    let gens: Vec<Form> = (0..base.dim())
        .map(|i| horizontal_part(x, &Form::term(base, &[i], base.one()).expect("in range")))
        .collect::<Result<_>>()?;
    let mut out = Form::zero(&tc, mu.degree());
    for (ix, c) in mu.components() {
        let mut t = Form::from_scalar(&tc, vertical_lift_scalar(&tc, c));
        for &i in ix.iter() {
            t = t.wedge(&gens[i as usize])?;
        }
        out = out.try_add(&t)?;
    }
    Ok(out)
}

/// Restricts every coefficient of a tensor on `TM` to the section of `X`,
/// keeping the tangent-chart index set.
pub fn restrict_tensor_to_section<V: Variance>(x: &Multivector, t: &Tensor<V>) -> Tensor<V> {
    let tc = t.chart().clone();
    let n = x.chart().dim();
    let lifted: Vec<Scalar> = (0..tc.table().len())
        .map(|i| {
            if i < n {
                tc.coord(i)
            } else if i < 2 * n {
                vertical_lift_scalar(&tc, &x.component(&[i - n]))
            } else {
                Scalar::var_at(tc.table(), i)
            }
        })
        .collect();
    t.map_coefficients(&tc, |c| c.compose(&lifted, tc.table()))
}
