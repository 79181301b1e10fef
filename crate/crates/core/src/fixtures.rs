//! Worked examples shared by the verification suites, the CLI and tests.

use crate::chart::Chart;
use crate::error::Result;
use crate::poisson::PoissonStructure;
use crate::scalar::{int, Scalar};
use crate::tensor::{one_tensor, Covector, Form, Multivector};

fn bv(c: &Chart, a: usize, b: usize) -> Multivector {
    Multivector::term(c, &[a, b], c.one()).expect("positions in range")
}

fn sum(parts: Vec<Multivector>) -> Multivector {
    parts.into_iter().reduce(|a, b| a.try_add(&b).expect("same chart")).expect("nonempty")
}

/// `x² ∂x ∧ ∂y` on the plane `(x, y)`.
pub fn plane_structure() -> PoissonStructure {
    let m = Chart::new("M", &["x", "y"], &[]).expect("valid chart");
    PoissonStructure::new(bv(&m, 0, 1).scale(&m.coord(0).pow(2))).expect("Poisson")
}

/// `z ∂x∧∂y + x ∂y∧∂z + y ∂z∧∂x` on `(x, y, z)`, the dual of su(2).
pub fn su2_dual() -> PoissonStructure {
    let m = Chart::new("R3", &["x", "y", "z"], &[]).expect("valid chart");
    let c = |i| m.coord(i);
    PoissonStructure::new(sum(vec![bv(&m, 0, 1).scale(&c(2)), bv(&m, 1, 2).scale(&c(0)), bv(&m, 2, 0).scale(&c(1))]))
        .expect("Poisson")
}

/// The quadratic structure on `(x1, x2, x3, x4)` with spare parameters `c, s`
/// for symbolic base points.
pub fn quadratic_r4() -> PoissonStructure {
    let m = Chart::new("R4", &["x1", "x2", "x3", "x4"], &["c", "s"]).expect("valid chart");
    let x = |i| m.coord(i);
    PoissonStructure::new(sum(vec![
        bv(&m, 2, 1).scale(&(&x(0) * &x(2))),
        bv(&m, 3, 1).scale(&(&x(0) * &x(3))),
        bv(&m, 0, 2).scale(&(&x(1) * &x(2))),
        bv(&m, 0, 3).scale(&(&x(1) * &x(3))),
        bv(&m, 1, 0).scale(&(&x(2).pow(2) + &x(3).pow(2))),
    ]))
    .expect("Poisson")
}

/// Coefficient `Σ_k {prefix}{slot}{k} m_k` over the six monomials of degree `≤ 2` in `(x, y)`.
fn general_coefficient(m: &Chart, prefix: char, slot: usize) -> Result<Scalar> {
    let monos: [(u32, u32); 6] = [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)];
    let len = m.table().len();
    let mut acc = m.zero();
    for (k, (a, b)) in monos.iter().enumerate() {
        let pos = m.table().index_of(&format!("{prefix}{slot}{k}")).expect("parameter declared");
        let mut exps = vec![0u32; len];
        exps[0] = *a;
        exps[1] = *b;
        exps[pos] = 1;
        acc = &acc + &Scalar::from_terms(m.table(), vec![(exps, int(1))])?;
    }
    Ok(acc)
}

/// The plane structure over a chart carrying 24 free parameters, and two
/// 1-forms `μ`, `η` whose coefficients are general polynomials of degree `≤ 2`.
pub fn general_plane_forms() -> Result<(PoissonStructure, Form, Form)> {
    let names: Vec<String> =
        ['a', 'b'].iter().flat_map(|p| (1..=2).flat_map(move |s| (0..6).map(move |k| format!("{p}{s}{k}")))).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    let m = Chart::new("M", &["x", "y"], &refs)?;
    let p = PoissonStructure::new(bv(&m, 0, 1).scale(&m.coord(0).pow(2)))?;
    let mu = one_tensor::<Covector>(&m, &[general_coefficient(&m, 'a', 1)?, general_coefficient(&m, 'a', 2)?]);
    let eta = one_tensor::<Covector>(&m, &[general_coefficient(&m, 'b', 1)?, general_coefficient(&m, 'b', 2)?]);
    Ok((p, mu, eta))
}

/// Closed form of `{μ, η}` for the plane structure, written out by hand:
/// first component `x²(μ₁∂_yη₁ − μ₂∂_xη₁ − η₁∂_yμ₁ + η₂∂_xμ₁) + 2x(μ₁η₂ − μ₂η₁)`,
/// second `x²(μ₁∂_yη₂ − μ₂∂_xη₂ − η₁∂_yμ₂ + η₂∂_xμ₂)`.
pub fn plane_bracket_closed_form(mu: &Form, eta: &Form) -> Form {
    let m = mu.chart();
    let x = m.coord(0);
    let (m1, m2) = (mu.component(&[0]), mu.component(&[1]));
    let (e1, e2) = (eta.component(&[0]), eta.component(&[1]));
    let x2 = x.pow(2);
    let part = |a: &Scalar, b: &Scalar| {
        let t = &(&(&m1 * &b.partial_at(1)) - &(&m2 * &b.partial_at(0))) - &(&e1 * &a.partial_at(1));
        &x2 * &(&t + &(&e2 * &a.partial_at(0)))
    };
    let cross = &(&m1 * &e2) - &(&m2 * &e1);
    let first = &part(&m1, &e1) + &(&x.scale(&int(2)) * &cross);
    let second = part(&m2, &e2);
    one_tensor::<Covector>(m, &[first, second])
}
