//! The canonical involutions and their graded and dual versions, acting on
//! [`FiberPoint`]s.
//!
//! Multi-indices over `TM` use positions `0..n` for `x` and `n..2n` for `ẋ`;
//! `J + n` shifts every entry of `J` into the dotted block.

use num_traits::Zero;

use super::fiber::{comps_vector, Bundle, FiberPoint, PointComps};
use crate::error::{Error, Result};
use crate::exterior::{accumulate, multi_indices, MultiIndex};
use crate::scalar::Rational;

fn shift(ix: &[u8], n: usize) -> MultiIndex {
    ix.iter().map(|&i| i + n as u8).collect()
}

fn without(ix: &[u8], m: usize) -> MultiIndex {
    ix.iter().enumerate().filter(|&(k, _)| k != m).map(|(_, &i)| i).collect()
}

/// `(−1)^e` as a negate flag.
fn odd(e: usize) -> bool {
    e % 2 == 1
}

fn get(c: &PointComps, k: &MultiIndex) -> Rational {
    c.get(k).cloned().unwrap_or_default()
}

/// Base block followed by one dotted index: `sorted(K ∪ {l + n})` with `K` all base.
fn with_dotted_last(k: &[u8], l: u8, n: usize) -> MultiIndex {
    let mut out: MultiIndex = k.iter().copied().collect();
    out.push(l + n as u8);
    out
}

/// One base index followed by a dotted block: `sorted({l} ∪ (K + n))`.
fn with_base_first(l: u8, k: &[u8], n: usize) -> MultiIndex {
    let mut out = MultiIndex::new();
    out.push(l);
    out.extend(shift(k, n));
    out
}

/// `κ_M: TTM → TTM`, `(x, ẋ, δx, δẋ) ↦ (x, δx, ẋ, δẋ)`.
pub fn flip(v: &FiberPoint) -> Result<FiberPoint> {
    v.expect(Bundle::VectorsOnTangent, Some(1))?;
    let (dx, dxdot) = v.split_blocks();
    FiberPoint::ttm(v.x().to_vec(), dx, v.v().to_vec(), dxdot)
}

/// `α_M: TT*M → T*TM`, `(x, p, ẋ, ṗ) ↦ (x, ẋ, ṗ, p)`.
pub fn forms_swap(w: &FiberPoint) -> Result<FiberPoint> {
    w.expect(Bundle::TangentOfForms, Some(1))?;
    let n = w.dim();
    FiberPoint::t_star_t(w.x().to_vec(), w.v().to_vec(), comps_vector(w.velocity(), n), comps_vector(w.fiber(), n))
}

/// `ε_M: T*TM → TT*M`, the inverse of [`forms_swap`].
pub fn forms_unswap(a: &FiberPoint) -> Result<FiberPoint> {
    a.expect(Bundle::FormsOnTangent, Some(1))?;
    let (pi, pidot) = a.split_blocks();
    FiberPoint::tt_star(a.x().to_vec(), pidot, a.v().to_vec(), pi)
}

/// `κ^r_M: ⋀^r TTM → T⋀^r TM`.
///
/// `a^J = U^J`, `δx = ẋ`,
/// `δa^L = Σ_m (−1)^{r−m} U^{(L∖l_m) ∪ {l_m + n}}` (1-based `m`).
pub fn graded_flip(u: &FiberPoint) -> Result<FiberPoint> {
    u.expect(Bundle::VectorsOnTangent, None)?;
    let (n, r) = (u.dim(), u.degree());
    let mut a = PointComps::new();
    let mut da = PointComps::new();
    for l in multi_indices(n, r) {
        accumulate(&mut a, l.clone(), get(u.fiber(), &l), false);
        for m in 0..r {
            let key = with_dotted_last(&without(&l, m), l[m], n);
            accumulate(&mut da, l.clone(), get(u.fiber(), &key), odd(r - (m + 1)));
        }
    }
    FiberPoint::new(Bundle::TangentOfVectors, r, u.x().to_vec(), u.v().to_vec(), a, da)
}

/// `ε^r_M: ⋀^r T*TM → T⋀^r T*M`.
///
/// `p_J = A_{J+n}`, `ṗ_L = Σ_m (−1)^{m−1} A_{{l_m} ∪ (L∖l_m)+n}`.
pub fn graded_forms_unswap(a: &FiberPoint) -> Result<FiberPoint> {
    a.expect(Bundle::FormsOnTangent, None)?;
    let (n, r) = (a.dim(), a.degree());
    let mut p = PointComps::new();
    let mut pdot = PointComps::new();
    for l in multi_indices(n, r) {
        accumulate(&mut p, l.clone(), get(a.fiber(), &shift(&l, n)), false);
        for m in 0..r {
            let key = with_base_first(l[m], &without(&l, m), n);
            accumulate(&mut pdot, l.clone(), get(a.fiber(), &key), odd(m));
        }
    }
    FiberPoint::new(Bundle::TangentOfForms, r, a.x().to_vec(), a.v().to_vec(), p, pdot)
}

/// `κ^r′_M: T⋀^r T*M → ⋀^r T*TM`, the dual of [`graded_flip`].
///
/// `A_J = ṗ_J`, `A_{K ∪ {l+n}} = (−1)^{r−m} p_{K∪l}` with `m` the position of
/// `l` in `K ∪ {l}`; components with two or more dotted slots vanish.
pub fn graded_flip_dual(w: &FiberPoint) -> Result<FiberPoint> {
    w.expect(Bundle::TangentOfForms, None)?;
    let (n, r) = (w.dim(), w.degree());
    let mut out = PointComps::new();
    for l in multi_indices(n, r) {
        accumulate(&mut out, l.clone(), get(w.velocity(), &l), false);
        let pl = get(w.fiber(), &l);
        for m in 0..r {
            let key = with_dotted_last(&without(&l, m), l[m], n);
            accumulate(&mut out, key, pl.clone(), odd(r - (m + 1)));
        }
    }
    FiberPoint::new(Bundle::FormsOnTangent, r, w.x().to_vec(), w.v().to_vec(), out, PointComps::new())
}

/// `ε^r′_M: T⋀^r TM → ⋀^r TTM`, the dual of [`graded_forms_unswap`].
///
/// `U^{J+n} = δa^J`, `U^{{l} ∪ K+n} = (−1)^{m−1} a^{K∪l}`.
pub fn graded_forms_unswap_dual(u: &FiberPoint) -> Result<FiberPoint> {
    u.expect(Bundle::TangentOfVectors, None)?;
    let (n, r) = (u.dim(), u.degree());
    let mut out = PointComps::new();
    for l in multi_indices(n, r) {
        accumulate(&mut out, shift(&l, n), get(u.velocity(), &l), false);
        let al = get(u.fiber(), &l);
        for m in 0..r {
            let key = with_base_first(l[m], &without(&l, m), n);
            accumulate(&mut out, key, al.clone(), odd(m));
        }
    }
    FiberPoint::new(Bundle::VectorsOnTangent, r, u.x().to_vec(), u.v().to_vec(), out, PointComps::new())
}

fn check_same_base(a: &FiberPoint, b: &FiberPoint) -> Result<()> {
    if a.dim() != b.dim() || a.degree() != b.degree() || a.x() != b.x() || a.v() != b.v() {
        return Err(Error::Domain(format!("{a:?} and {b:?} do not lie over the same point of TM")));
    }
    Ok(())
}

/// `⟨U, A⟩` for an r-vector and an r-form on `TM` over the same `(x, ẋ)`.
pub fn pairing(u: &FiberPoint, a: &FiberPoint) -> Result<Rational> {
    u.expect(Bundle::VectorsOnTangent, None)?;
    a.expect(Bundle::FormsOnTangent, None)?;
    check_same_base(u, a)?;
    Ok(crate::exterior::pair(u.fiber(), a.fiber()).unwrap_or_default())
}

/// Tangent pairing `⟨(a, δa), (p, ṗ)⟩′ = Σ_J (δa^J p_J + a^J ṗ_J)` over the
/// same `(x, ẋ)` (the `δx` of the first equals the `ẋ` of the second).
pub fn tangent_pairing(u: &FiberPoint, w: &FiberPoint) -> Result<Rational> {
    u.expect(Bundle::TangentOfVectors, None)?;
    w.expect(Bundle::TangentOfForms, None)?;
    check_same_base(u, w)?;
    let a = crate::exterior::pair(u.velocity(), w.fiber()).unwrap_or_default();
    let b = crate::exterior::pair(u.fiber(), w.velocity()).unwrap_or_default();
    Ok(a + b)
}

/// Wedge of multivectors on `TM` over the same point.
pub fn wedge_points(a: &FiberPoint, b: &FiberPoint) -> Result<FiberPoint> {
    if a.bundle() != b.bundle() || !matches!(a.bundle(), Bundle::VectorsOnTangent | Bundle::FormsOnTangent) {
        return Err(Error::Domain("wedge needs two points of the same ⋀TTM or ⋀T*TM".into()));
    }
    check_same_base_any_degree(a, b)?;
    let c = crate::exterior::wedge(a.fiber(), b.fiber());
    FiberPoint::new(a.bundle(), a.degree() + b.degree(), a.x().to_vec(), a.v().to_vec(), c, PointComps::new())
}

/// Tangent of the wedge on `⋀TM` (or `⋀T*M`): `(a∧b, δa∧b + a∧δb)`.
pub fn tangent_wedge(a: &FiberPoint, b: &FiberPoint) -> Result<FiberPoint> {
    if a.bundle() != b.bundle() || !matches!(a.bundle(), Bundle::TangentOfVectors | Bundle::TangentOfForms) {
        return Err(Error::Domain("tangent wedge needs two points of the same T⋀TM or T⋀T*M".into()));
    }
    check_same_base_any_degree(a, b)?;
    use crate::exterior::{add, wedge};
    let p = wedge(a.fiber(), b.fiber());
    let dp = add(&wedge(a.velocity(), b.fiber()), &wedge(a.fiber(), b.velocity()));
    FiberPoint::new(a.bundle(), a.degree() + b.degree(), a.x().to_vec(), a.v().to_vec(), p, dp)
}

fn check_same_base_any_degree(a: &FiberPoint, b: &FiberPoint) -> Result<()> {
    if a.x() != b.x() || a.v() != b.v() {
        return Err(Error::Domain("points lie over different base points".into()));
    }
    Ok(())
}

/// `T⋀^1 TM → TTM` under `⋀^1 TM = TM`: `(x, a, δx, δa) ↦ (x, a, δx, δa)` read as
/// base point `(x, a)` with velocity `(δx, δa)`.
pub fn tangent_of_vectors_as_ttm(p: &FiberPoint) -> Result<FiberPoint> {
    p.expect(Bundle::TangentOfVectors, Some(1))?;
    let n = p.dim();
    FiberPoint::ttm(p.x().to_vec(), comps_vector(p.fiber(), n), p.v().to_vec(), comps_vector(p.velocity(), n))
}

/// Returns true when every coordinate vanishes outside the base blocks.
pub fn is_zero_fiber(p: &FiberPoint) -> bool {
    p.fiber().values().all(Zero::is_zero) && p.velocity().values().all(Zero::is_zero)
}

/// The degree-0 map as literally displayed, `(x, ẋ, t) ↦ (x, a = 0, δx = ẋ, δa = t)`.
///
/// Kept for comparison only: it is not dual to [`graded_flip_dual`] at `r = 0`
/// and breaks the `d_T` diagram at contraction degree 0. [`graded_flip`] uses
/// `a = t, δa = 0` instead.
pub fn degree_zero_flip_as_displayed(u: &FiberPoint) -> Result<FiberPoint> {
    u.expect(Bundle::VectorsOnTangent, Some(0))?;
    let t = get(u.fiber(), &MultiIndex::new());
    let mut da = PointComps::new();
    accumulate(&mut da, MultiIndex::new(), t, false);
    FiberPoint::new(Bundle::TangentOfVectors, 0, u.x().to_vec(), u.v().to_vec(), PointComps::new(), da)
}
