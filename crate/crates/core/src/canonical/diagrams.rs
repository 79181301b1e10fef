//! Both paths of each commutative diagram, evaluated exactly at given inputs.
//!
//! Charts entering the checks must be free of parameters, since every
//! composite is evaluated at rational points.

use super::fiber::{comps_vector, vector_comps, Bundle, FiberPoint, PointComps};
use super::maps::*;
use super::structures::{canonical_poisson, canonical_symplectic, cotangent_chart, liouville_form};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::exterior::{self, contract, multi_indices, Components, MultiIndex};
use crate::linalg::{apply, nullspace, transpose};
use crate::polymap::{eval_components, eval_matrix, PolyMap};
use crate::scalar::{Rational, Scalar};
use crate::tangent::{
    tangent_chart, tangent_contraction, tangent_lift_form, tangent_lift_mv, tangent_lift_scalar, vertical_lift_scalar,
};
use crate::tensor::{contract_form_into_multivector, Form, Multivector, Tensor, Variance};

/// The two composites of a diagram at one input.
#[derive(Clone, Debug)]
pub struct Comparison {
    pub left: FiberPoint,
    pub right: FiberPoint,
}

impl Comparison {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

/// Outcome of the relation check for the `Λ̃¹` diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Containment {
    /// The graph pair computed from `q` lies in the relation's graph.
    pub forward: bool,
    /// Every `q′` in the fiber of `Λ̃¹` over the same point yields the same pair.
    pub reverse: bool,
}

fn no_params(c: &Chart) -> Result<()> {
    if c.params().is_empty() {
        Ok(())
    } else {
        Err(Error::Domain(format!("chart `{}` has parameters; diagrams need numeric points", c.name())))
    }
}

fn check_dim(c: &Chart, p: &FiberPoint) -> Result<()> {
    if c.dim() != p.dim() {
        return Err(Error::Domain(format!("point of dimension {} on chart `{}`", p.dim(), c.name())));
    }
    Ok(())
}

fn values(x: &[Rational], v: &[Rational]) -> Vec<Rational> {
    x.iter().chain(v).cloned().collect()
}

/// Components at `x` and their derivative along `dx`.
fn value_and_derivative(c: &Components<Scalar>, x: &[Rational], dx: &[Rational]) -> (PointComps, PointComps) {
    let at = eval_components(c, x);
    let mut der = PointComps::new();
    for (k, s) in c {
        let mut acc = Rational::default();
        for (i, d) in dx.iter().enumerate() {
            if !num_traits::Zero::is_zero(d) {
                acc += s.partial_at(i).eval_at(x) * d;
            }
        }
        exterior::accumulate(&mut der, k.clone(), acc, false);
    }
    (at, der)
}

/// `T(contraction with t)` at `(x, a)` with velocity `(δx, δa)`.
fn pushed_contraction<V: Variance>(
    t: &Tensor<V>,
    x: &[Rational],
    a: &PointComps,
    dx: &[Rational],
    da: &PointComps,
) -> (PointComps, PointComps) {
    let (at, der) = value_and_derivative(t.components(), x, dx);
    let point = contract(a, &at);
    let vel = exterior::add(&contract(a, &der), &contract(da, &at));
    (point, vel)
}

/// `κ^{r−i}′ ∘ T μ̃^i ∘ κ^i` against `(d_T μ)~^i` at `u ∈ ⋀^i TTM`.
pub fn tangent_lift_form_diagram(mu: &Form, u: &FiberPoint) -> Result<Comparison> {
    no_params(mu.chart())?;
    check_dim(mu.chart(), u)?;
    u.expect(Bundle::VectorsOnTangent, None)?;
    let (r, i) = (mu.degree(), u.degree());
    if i > r {
        return Err(Error::Domain(format!("contraction degree {i} exceeds form degree {r}")));
    }
    let dt = eval_components(tangent_lift_form(mu)?.components(), &values(u.x(), u.v()));
    let left = FiberPoint::new(
        Bundle::FormsOnTangent,
        r - i,
        u.x().to_vec(),
        u.v().to_vec(),
        contract(u.fiber(), &dt),
        PointComps::new(),
    )?;
    let k = graded_flip(u)?;
    let (p, pdot) = pushed_contraction(mu, k.x(), k.fiber(), k.v(), k.velocity());
    let w = FiberPoint::new(Bundle::TangentOfForms, r - i, k.x().to_vec(), k.v().to_vec(), p, pdot)?;
    Ok(Comparison { left, right: graded_flip_dual(&w)? })
}

/// `ε^{r−i}′ ∘ T X̃^i ∘ ε^i` against `(d_T X)~^i` at `a ∈ ⋀^i T*TM`.
pub fn tangent_lift_mv_diagram(x: &Multivector, a: &FiberPoint) -> Result<Comparison> {
    no_params(x.chart())?;
    check_dim(x.chart(), a)?;
    a.expect(Bundle::FormsOnTangent, None)?;
    let (r, i) = (x.degree(), a.degree());
    if i > r {
        return Err(Error::Domain(format!("contraction degree {i} exceeds multivector degree {r}")));
    }
    let dt = eval_components(tangent_lift_mv(x)?.components(), &values(a.x(), a.v()));
    let left = FiberPoint::new(
        Bundle::VectorsOnTangent,
        r - i,
        a.x().to_vec(),
        a.v().to_vec(),
        contract(a.fiber(), &dt),
        PointComps::new(),
    )?;
    let e = graded_forms_unswap(a)?;
    let (p, pdot) = pushed_contraction(x, e.x(), e.fiber(), e.v(), e.velocity());
    let w = FiberPoint::new(Bundle::TangentOfVectors, r - i, e.x().to_vec(), e.v().to_vec(), p, pdot)?;
    Ok(Comparison { left, right: graded_forms_unswap_dual(&w)? })
}

/// `(x, ẋ, δx, δẋ) ∈ TTM` read as a point of `T⋀^1 TM`.
pub fn ttm_as_tangent_of_vectors(v: &FiberPoint) -> Result<FiberPoint> {
    v.expect(Bundle::VectorsOnTangent, Some(1))?;
    let (dx, dxdot) = v.split_blocks();
    FiberPoint::new(Bundle::TangentOfVectors, 1, v.x().to_vec(), dx, vector_comps(v.v()), vector_comps(&dxdot))
}

/// `κ^r(v₁∧…∧v_r) = T⋀^r(κv₁, …, κv_r)`.
pub fn flip_wedge_diagram(vs: &[FiberPoint]) -> Result<Comparison> {
    let first = vs.first().ok_or_else(|| Error::Domain("at least one factor".into()))?;
    let mut wedge = first.clone();
    let mut tw = ttm_as_tangent_of_vectors(&flip(first)?)?;
    for v in &vs[1..] {
        wedge = wedge_points(&wedge, v)?;
        tw = tangent_wedge(&tw, &ttm_as_tangent_of_vectors(&flip(v)?)?)?;
    }
    Ok(Comparison { left: graded_flip(&wedge)?, right: tw })
}

/// `κ^r(u∧w) = T∧(κ^i u, κ^{r−i} w)`.
pub fn flip_split_diagram(u: &FiberPoint, w: &FiberPoint) -> Result<Comparison> {
    Ok(Comparison {
        left: graded_flip(&wedge_points(u, w)?)?,
        right: tangent_wedge(&graded_flip(u)?, &graded_flip(w)?)?,
    })
}

/// `ε^r(a₁∧…∧a_r) = T⋀^r(εa₁, …, εa_r)`.
pub fn unswap_wedge_diagram(as_: &[FiberPoint]) -> Result<Comparison> {
    let first = as_.first().ok_or_else(|| Error::Domain("at least one factor".into()))?;
    let mut wedge = first.clone();
    let mut tw = forms_unswap(first)?;
    for a in &as_[1..] {
        wedge = wedge_points(&wedge, a)?;
        tw = tangent_wedge(&tw, &forms_unswap(a)?)?;
    }
    Ok(Comparison { left: graded_forms_unswap(&wedge)?, right: tw })
}

/// `ε^r(a∧b) = T∧(ε^i a, ε^{r−i} b)`.
pub fn unswap_split_diagram(a: &FiberPoint, b: &FiberPoint) -> Result<Comparison> {
    Ok(Comparison {
        left: graded_forms_unswap(&wedge_points(a, b)?)?,
        right: tangent_wedge(&graded_forms_unswap(a)?, &graded_forms_unswap(b)?)?,
    })
}

/// `Tφ: TM → TN` as a polynomial map.
pub fn tangent_map(phi: &PolyMap) -> Result<PolyMap> {
    let tm = tangent_chart(phi.source())?;
    let tn = tangent_chart(phi.target())?;
    let mut images: Vec<Scalar> = phi.images().iter().map(|f| vertical_lift_scalar(&tm, f)).collect();
    images.extend(phi.images().iter().map(|f| tangent_lift_scalar(&tm, f)));
    PolyMap::new(&tm, &tn, images)
}

/// `r×r` minors of a symbolic Jacobian: rows are target multi-indices,
/// columns are source multi-indices.
struct Minors {
    rows: Vec<MultiIndex>,
    cols: Vec<MultiIndex>,
    entries: Vec<Vec<Scalar>>,
}

impl Minors {
    fn new(jac: &[Vec<Scalar>], source_dim: usize, r: usize, one: &Scalar) -> Minors {
        let rows = multi_indices(jac.len(), r);
        let cols = multi_indices(source_dim, r);
        let entries = rows
            .iter()
            .map(|j| {
                cols.iter()
                    .map(|i| {
                        let sub: Vec<Vec<Scalar>> = j
                            .iter()
                            .map(|&a| i.iter().map(|&b| jac[a as usize][b as usize].clone()).collect())
                            .collect();
                        exterior::det(&sub, one)
                    })
                    .collect()
            })
            .collect();
        Minors { rows, cols, entries }
    }

    fn at(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        eval_matrix(&self.entries, x)
    }

    fn derivative(&self, x: &[Rational], dx: &[Rational]) -> Vec<Vec<Rational>> {
        self.entries
            .iter()
            .map(|row| {
                row.iter().map(|s| dx.iter().enumerate().map(|(k, d)| s.partial_at(k).eval_at(x) * d).sum()).collect()
            })
            .collect()
    }

    fn push(&self, m: &[Vec<Rational>], a: &PointComps) -> PointComps {
        let mut out = PointComps::new();
        for (row, j) in m.iter().zip(&self.rows) {
            let v: Rational = row.iter().zip(&self.cols).filter_map(|(e, i)| a.get(i).map(|c| e * c)).sum();
            exterior::accumulate(&mut out, j.clone(), v, false);
        }
        out
    }

    fn pull(&self, m: &[Vec<Rational>], p: &PointComps) -> PointComps {
        let mut out = PointComps::new();
        for (c, i) in self.cols.iter().enumerate() {
            let v: Rational = m.iter().zip(&self.rows).filter_map(|(row, j)| p.get(j).map(|q| &row[c] * q)).sum();
            exterior::accumulate(&mut out, i.clone(), v, false);
        }
        out
    }
}

/// Data shared by the naturality checks for a map `φ: M → N`.
pub struct Naturality {
    phi: PolyMap,
    tphi: PolyMap,
    tjac: Vec<Vec<Scalar>>,
    jac: Vec<Vec<Scalar>>,
}

impl Naturality {
    pub fn new(phi: &PolyMap) -> Result<Self> {
        no_params(phi.source())?;
        no_params(phi.target())?;
        let tphi = tangent_map(phi)?;
        Ok(Naturality { phi: phi.clone(), tjac: tphi.jacobian(), jac: phi.jacobian(), tphi })
    }

    fn minors(&self, r: usize) -> Minors {
        Minors::new(&self.jac, self.phi.source().dim(), r, &self.phi.source().one())
    }

    fn tangent_minors(&self, r: usize) -> Minors {
        Minors::new(&self.tjac, self.tphi.source().dim(), r, &self.tphi.source().one())
    }

    /// `Tφ(x, ẋ)` split into base and velocity blocks.
    pub fn tangent_point(&self, x: &[Rational], xdot: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        let img = self.tphi.eval(&values(x, xdot));
        let m = self.phi.target().dim();
        (img[..m].to_vec(), img[m..].to_vec())
    }

    /// `⋀^r TTφ` on `u ∈ ⋀^r TTM`.
    fn wedge_tt(&self, u: &FiberPoint) -> Result<FiberPoint> {
        let (y, ydot) = self.tangent_point(u.x(), u.v());
        let m = self.tangent_minors(u.degree());
        let c = m.push(&m.at(&values(u.x(), u.v())), u.fiber());
        FiberPoint::new(Bundle::VectorsOnTangent, u.degree(), y, ydot, c, PointComps::new())
    }

    /// `⋀^r T*Tφ` on `a ∈ ⋀^r T*TN` over `Tφ(x, ẋ)`, landing over `(x, ẋ)`.
    fn wedge_t_star_t(&self, x: &[Rational], xdot: &[Rational], a: &FiberPoint) -> Result<FiberPoint> {
        let m = self.tangent_minors(a.degree());
        let c = m.pull(&m.at(&values(x, xdot)), a.fiber());
        FiberPoint::new(Bundle::FormsOnTangent, a.degree(), x.to_vec(), xdot.to_vec(), c, PointComps::new())
    }

    /// `T⋀^r Tφ` on `(x, a, δx, δa)`.
    fn t_wedge_t(&self, u: &FiberPoint) -> Result<FiberPoint> {
        let (y, dy) = self.tangent_point(u.x(), u.v());
        let m = self.minors(u.degree());
        let at = m.at(u.x());
        let der = m.derivative(u.x(), u.v());
        let a = m.push(&at, u.fiber());
        let da = exterior::add(&m.push(&der, u.fiber()), &m.push(&at, u.velocity()));
        FiberPoint::new(Bundle::TangentOfVectors, u.degree(), y, dy, a, da)
    }

    /// `T⋀^r T*φ` on `w = (φ(x), p, Dφ ẋ, ṗ)`, landing over `(x, ẋ)`.
    fn t_wedge_t_star(&self, x: &[Rational], xdot: &[Rational], w: &FiberPoint) -> Result<FiberPoint> {
        let m = self.minors(w.degree());
        let at = m.at(x);
        let der = m.derivative(x, xdot);
        let p = m.pull(&at, w.fiber());
        let pdot = exterior::add(&m.pull(&der, w.fiber()), &m.pull(&at, w.velocity()));
        FiberPoint::new(Bundle::TangentOfForms, w.degree(), x.to_vec(), xdot.to_vec(), p, pdot)
    }

    fn check_over(&self, x: &[Rational], xdot: &[Rational], p: &FiberPoint) -> Result<()> {
        let (y, ydot) = self.tangent_point(x, xdot);
        if p.x() != y.as_slice() || p.v() != ydot.as_slice() {
            return Err(Error::Domain("target point does not lie over Tφ(x, ẋ)".into()));
        }
        Ok(())
    }

    /// `κ^r_N ∘ ⋀^r TTφ` against `T⋀^r Tφ ∘ κ^r_M`.
    pub fn flip(&self, u: &FiberPoint) -> Result<Comparison> {
        check_dim(self.phi.source(), u)?;
        Ok(Comparison { left: graded_flip(&self.wedge_tt(u)?)?, right: self.t_wedge_t(&graded_flip(u)?)? })
    }

    /// `T⋀^r T*φ ∘ ε^r_N` against `ε^r_M ∘ ⋀^r T*Tφ` for `a` over `Tφ(x, ẋ)`.
    pub fn forms_unswap(&self, x: &[Rational], xdot: &[Rational], a: &FiberPoint) -> Result<Comparison> {
        self.check_over(x, xdot, a)?;
        let left = self.t_wedge_t_star(x, xdot, &graded_forms_unswap(a)?)?;
        let right = graded_forms_unswap(&self.wedge_t_star_t(x, xdot, a)?)?;
        Ok(Comparison { left, right })
    }

    /// `κ^r_M′ ∘ T⋀^r T*φ` against `⋀^r T*Tφ ∘ κ^r_N′` for `w` over `Tφ(x, ẋ)`.
    pub fn flip_dual(&self, x: &[Rational], xdot: &[Rational], w: &FiberPoint) -> Result<Comparison> {
        self.check_over(x, xdot, w)?;
        let left = graded_flip_dual(&self.t_wedge_t_star(x, xdot, w)?)?;
        let right = self.wedge_t_star_t(x, xdot, &graded_flip_dual(w)?)?;
        Ok(Comparison { left, right })
    }

    /// `⋀^r TTφ ∘ ε^r_M′` against `ε^r_N′ ∘ T⋀^r Tφ`.
    pub fn forms_unswap_dual(&self, u: &FiberPoint) -> Result<Comparison> {
        check_dim(self.phi.source(), u)?;
        Ok(Comparison {
            left: self.wedge_tt(&graded_forms_unswap_dual(u)?)?,
            right: graded_forms_unswap_dual(&self.t_wedge_t(u)?)?,
        })
    }
}

fn tangent_push(map: &PolyMap, point: &[Rational], vel: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let j = eval_matrix(&map.jacobian(), point);
    (map.eval(point), apply(&j, vel))
}

fn cotangent_pull(map: &PolyMap, point: &[Rational], covector: &[Rational]) -> Vec<Rational> {
    let j = eval_matrix(&map.jacobian(), point);
    apply(&transpose(&j), covector)
}

fn split(v: &[Rational], n: usize) -> (Vec<Rational>, Vec<Rational>) {
    (v[..n].to_vec(), v[n..].to_vec())
}

/// `ω̃¹: TM → T*M`, `(x, w) ↦ (x, i_w ω)`.
pub fn flat_map(two_form: &Form) -> Result<PolyMap> {
    let base = two_form.chart();
    let tc = tangent_chart(base)?;
    let cot = cotangent_chart(base, 1)?;
    let it = tangent_contraction(two_form)?;
    let mut images: Vec<Scalar> = (0..base.dim()).map(|i| tc.coord(i)).collect();
    images.extend((0..base.dim()).map(|j| it.component(&[j])));
    PolyMap::new(&tc, &cot, images)
}

/// `α ∘ Tν ∘ κ` against `T*ν ∘ Ω̃¹ ∘ Tν` for `ν = ω̃¹` at `v ∈ TTM`.
pub fn symplectic_flat_diagram(two_form: &Form, v: &FiberPoint) -> Result<Comparison> {
    no_params(two_form.chart())?;
    check_dim(two_form.chart(), v)?;
    v.expect(Bundle::VectorsOnTangent, Some(1))?;
    if two_form.degree() != 2 {
        return Err(Error::Type("the diagram needs a 2-form".into()));
    }
    let n = v.dim();
    let nu = flat_map(two_form)?;
    let (dx, dxdot) = v.split_blocks();

    let kv = flip(v)?;
    let (kdx, kdxdot) = kv.split_blocks();
    let (img, vel) = tangent_push(&nu, &values(kv.x(), kv.v()), &values(&kdx, &kdxdot));
    let (_, p) = split(&img, n);
    let (xdot, pdot) = split(&vel, n);
    let left = forms_swap(&FiberPoint::tt_star(v.x().to_vec(), p, xdot, pdot)?)?;

    let base_point = values(v.x(), v.v());
    let (img, vel) = tangent_push(&nu, &base_point, &values(&dx, &dxdot));
    let canonical_form = canonical_symplectic(nu.target())?;
    let form_values = eval_components(canonical_form.components(), &img);
    let covector = contract(&vector_comps(&vel), &form_values);
    let pulled = cotangent_pull(&nu, &base_point, &comps_vector(&covector, 2 * n));
    let (pi, pidot) = split(&pulled, n);
    let right = FiberPoint::t_star_t(v.x().to_vec(), v.v().to_vec(), pi, pidot)?;
    Ok(Comparison { left, right })
}

/// Lifts base-chart coefficients into a cotangent (or any base-prefixed) chart.
fn lift_into<V: Variance>(t: &Tensor<V>, target: &Chart) -> Tensor<V> {
    let base = t.chart();
    let n = base.dim();
    let shift = target.dim() - n;
    let map: Vec<usize> = (0..base.table().len()).map(|i| if i < n { i } else { i + shift }).collect();
    t.map_coefficients(target, |s| s.reindex(target.table(), &map))
}

/// `Λ̃¹: T*M → TM`, `(x, p) ↦ (x, i_p Λ)`.
pub fn sharp_map(structure: &Multivector) -> Result<PolyMap> {
    let base = structure.chart();
    let cot = cotangent_chart(base, 1)?;
    let tc = tangent_chart(base)?;
    let v = contract_form_into_multivector(&liouville_form(&cot)?, &lift_into(structure, &cot))?;
    let mut images: Vec<Scalar> = (0..base.dim()).map(|i| cot.coord(i)).collect();
    images.extend((0..base.dim()).map(|k| v.component(&[k])));
    PolyMap::new(&cot, &tc, images)
}

/// Whether `⋀²T(Λ̃¹) Λ_M = d_T Λ ∘ Λ̃¹`, compared symbolically.
pub fn sharp_relatedness(structure: &Multivector) -> Result<bool> {
    if structure.degree() != 2 {
        return Err(Error::Type("relatedness needs a bivector".into()));
    }
    let sharp = sharp_map(structure)?;
    let cot = sharp.source().clone();
    let lm = canonical_poisson(&cot)?;
    let pushed = exterior::push_forward(&sharp.jacobian(), lm.components(), &cot.one());
    let dt = tangent_lift_mv(structure)?;
    let mut pulled = Components::new();
    for (k, c) in dt.components() {
        exterior::accumulate(&mut pulled, k.clone(), sharp.pull_scalar(c), false);
    }
    Ok(pushed == pulled)
}

/// `T*λ` then `Λ̃_M¹` then `Tλ`, at `q = (x, p)` and `a` over `λ(q)`.
fn relation_left(sharp: &PolyMap, q: &[Rational], a: &[Rational]) -> Result<(Vec<Rational>, Vec<Rational>)> {
    let n = q.len() / 2;
    let cot = sharp.source();
    let b = cotangent_pull(sharp, q, a);
    let lm = eval_components(canonical_poisson(cot)?.components(), q);
    let vec = comps_vector(&contract(&vector_comps(&b), &lm), 2 * n);
    Ok(tangent_push(sharp, q, &vec))
}

/// The `Λ̃¹` diagram as a relation: `a ∈ T*_{λ(q)}TM` with `a = (π, π̇)`.
///
/// The right column `κ ∘ Tλ ∘ ε` is a map; the left column goes through
/// `T*λ`, a relation, so both containment directions are reported.
pub fn poisson_relation_diagram(
    structure: &Multivector,
    x: &[Rational],
    p: &[Rational],
    pi: &[Rational],
    pidot: &[Rational],
) -> Result<Containment> {
    no_params(structure.chart())?;
    let n = structure.chart().dim();
    if [x.len(), p.len(), pi.len(), pidot.len()].iter().any(|&l| l != n) {
        return Err(Error::Domain("every block must have the chart dimension".into()));
    }
    let sharp = sharp_map(structure)?;
    let q = values(x, p);
    let (_, xdot) = split(&sharp.eval(&q), n);
    let a = FiberPoint::t_star_t(x.to_vec(), xdot.clone(), pi.to_vec(), pidot.to_vec())?;

    // right column: ε, then Tλ at (x, π̇), then κ
    let e = forms_unswap(&a)?;
    let (img, vel) = tangent_push(
        &sharp,
        &values(e.x(), &comps_vector(e.fiber(), n)),
        &values(e.v(), &comps_vector(e.velocity(), n)),
    );
    let (bx, bv) = split(&img, n);
    let (dx, dxdot) = split(&vel, n);
    let right = flip(&FiberPoint::ttm(bx, bv, dx, dxdot)?)?;

    let as_pair = |img: Vec<Rational>, vel: Vec<Rational>| -> Result<FiberPoint> {
        let (bx, bv) = split(&img, n);
        let (dx, dxdot) = split(&vel, n);
        FiberPoint::ttm(bx, bv, dx, dxdot)
    };
    let cov = values(pi, pidot);
    let (img, vel) = relation_left(&sharp, &q, &cov)?;
    let forward = as_pair(img, vel)? == right;

    let kernel_rows: Vec<Vec<Rational>> = {
        let bivector = eval_matrix(
            &(0..n).map(|i| (0..n).map(|j| structure.component(&[i, j])).collect::<Vec<_>>()).collect::<Vec<_>>(),
            x,
        );
        nullspace(&bivector, n)
    };
    let mut reverse = true;
    for k in &kernel_rows {
        let shifted: Vec<Rational> = p.iter().zip(k).map(|(a, b)| a + b).collect();
        let (img, vel) = relation_left(&sharp, &values(x, &shifted), &cov)?;
        reverse &= as_pair(img, vel)? == right;
    }
    Ok(Containment { forward, reverse })
}

/// `i_T μ` against `(μ̃¹)^* θ^{r−1}`.
pub fn liouville_identity(mu: &Form) -> Result<bool> {
    if mu.degree() == 0 {
        return Err(Error::Domain("needs a form of positive degree".into()));
    }
    let base = mu.chart();
    let tc = tangent_chart(base)?;
    let cot = cotangent_chart(base, mu.degree() - 1)?;
    let it = tangent_contraction(mu)?;
    let mut images: Vec<Scalar> = (0..base.dim()).map(|i| tc.coord(i)).collect();
    for j in multi_indices(base.dim(), mu.degree() - 1) {
        let ix: Vec<usize> = j.iter().map(|&i| i as usize).collect();
        images.push(it.component(&ix));
    }
    let map = PolyMap::new(&tc, &cot, images)?;
    Ok(map.pullback_form(&liouville_form(&cot)?)? == it)
}

/// Returns `(dω = 0, d_T ω = (ω̃¹)^* Ω_M)`; the two agree for every 2-form.
pub fn closed_form_pullback(two_form: &Form) -> Result<(bool, bool)> {
    if two_form.degree() != 2 {
        return Err(Error::Type("needs a 2-form".into()));
    }
    let nu = flat_map(two_form)?;
    let pulled = nu.pullback_form(&canonical_symplectic(nu.target())?)?;
    let closed = crate::cartan::exterior_d(two_form).is_zero();
    Ok((closed, pulled == tangent_lift_form(two_form)?))
}
