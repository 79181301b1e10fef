//! Cotangent charts and the canonical structures living on them.

use crate::chart::{Chart, ChartKind};
use crate::error::{Error, Result};
use crate::exterior::{multi_indices, MultiIndex};
use crate::tensor::{Form, Multivector};

/// Momentum name for the multi-index `J` over the base coordinates.
pub fn momentum_name(base: &Chart, j: &[u8]) -> String {
    let mut s = String::from("p");
    for &i in j {
        s.push('_');
        s.push_str(&base.coords()[i as usize]);
    }
    s
}

/// `(x^i, p_J)` on `⋀^k T*M`, momenta ordered like [`multi_indices`].
pub fn cotangent_chart(base: &Chart, degree: usize) -> Result<Chart> {
    if !matches!(base.kind(), ChartKind::Base) {
        return Err(Error::Domain(format!("`{}` is not a base chart", base.name())));
    }
    if degree > base.dim() {
        return Err(Error::Domain(format!("no {degree}-covectors on a {}-dimensional chart", base.dim())));
    }
    let mut coords = base.coords().to_vec();
    coords.extend(multi_indices(base.dim(), degree).iter().map(|j| momentum_name(base, j)));
    let name = if degree == 1 { format!("T*{}", base.name()) } else { format!("L{degree}T*{}", base.name()) };
    Chart::with_kind(&name, coords, base.params().to_vec(), ChartKind::Cotangent { base: base.clone(), degree })
}

fn cotangent_parts(c: &Chart) -> Result<(Chart, usize)> {
    match c.kind() {
        ChartKind::Cotangent { base, degree } => Ok((base.clone(), *degree)),
        _ => Err(Error::Domain(format!("`{}` is not a cotangent chart", c.name()))),
    }
}

/// Position of the momentum `p_J` in a cotangent chart.
pub fn momentum_position(c: &Chart, j: &MultiIndex) -> Result<usize> {
    let (base, degree) = cotangent_parts(c)?;
    multi_indices(base.dim(), degree)
        .iter()
        .position(|k| k == j)
        .map(|p| base.dim() + p)
        .ok_or_else(|| Error::Domain(format!("{j:?} is not a degree-{degree} index")))
}

/// Liouville form `θ^k = Σ_J p_J dx^J` on `⋀^k T*M`.
pub fn liouville_form(c: &Chart) -> Result<Form> {
    let (base, degree) = cotangent_parts(c)?;
    let n = base.dim();
    let mut out = Form::zero(c, degree);
    for (pos, j) in multi_indices(n, degree).iter().enumerate() {
        let ix: Vec<usize> = j.iter().map(|&i| i as usize).collect();
        out = out.try_add(&Form::term(c, &ix, c.coord(n + pos))?)?;
    }
    Ok(out)
}

/// `Ω_M = dθ¹ = Σ dp_i ∧ dx^i` on `T*M`.
pub fn canonical_symplectic(c: &Chart) -> Result<Form> {
    let (_, degree) = cotangent_parts(c)?;
    if degree != 1 {
        return Err(Error::Domain("the canonical 2-form lives on T*M".into()));
    }
    Ok(crate::cartan::exterior_d(&liouville_form(c)?))
}

/// `Λ_M = Σ ∂x^i ∧ ∂p_i` on `T*M`.
pub fn canonical_poisson(c: &Chart) -> Result<Multivector> {
    let (base, degree) = cotangent_parts(c)?;
    if degree != 1 {
        return Err(Error::Domain("the canonical bivector lives on T*M".into()));
    }
    let n = base.dim();
    let mut out = Multivector::zero(c, 2);
    for i in 0..n {
        out = out.try_add(&Multivector::term(c, &[i, n + i], c.one())?)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_structures() {
        let m = Chart::new("M", &["x"], &[]).unwrap();
        let c = cotangent_chart(&m, 1).unwrap();
        assert_eq!(c.coords(), &["x".to_string(), "p_x".to_string()]);
        assert_eq!(canonical_symplectic(&c).unwrap().to_text(), "-dx^dp_x");
        assert_eq!(canonical_poisson(&c).unwrap().to_text(), "@x^@p_x");
        assert_eq!(liouville_form(&c).unwrap().to_text(), "p_x * dx");
    }
}
