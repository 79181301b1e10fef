//! Poisson structures and their tangent lifts.
//!
//! Brackets use `{f, g} = ⟨Λ, df ∧ dg⟩` and hamiltonian fields
//! `X_f = i_{df}Λ`, so that `X_f(g) = {f, g}`.

use crate::cartan::{exterior_d, lie_derivative, schouten};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::linalg::{row_basis, same_span};
use crate::polymap::PolyMap;
use crate::scalar::{Rational, Scalar};
use crate::tangent::{
    complete_lift, dotted, horizontal_part, tangent_chart, tangent_contraction, tangent_lift_mv, tangent_lift_scalar,
    vertical_lift_field, vertical_lift_mv, vertical_lift_scalar,
};
use crate::tensor::{contract_form_into_multivector, differential, one_tensor, pair, Form, Multivector};

/// Outcome of the cyclic coordinate test: a failing index triple and its sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicWitness {
    pub indices: (usize, usize, usize),
    pub sum: Scalar,
}

/// `Σ_i (Λ^{ij}∂_iΛ^{kl} + Λ^{ik}∂_iΛ^{lj} + Λ^{il}∂_iΛ^{jk})` for one triple.
pub fn cyclic_sum(structure: &Multivector, j: usize, k: usize, l: usize) -> Scalar {
    let c = structure.chart();
    let mut acc = c.zero();
    for i in 0..c.dim() {
        for (a, b, d) in [(j, k, l), (k, l, j), (l, j, k)] {
            let lead = structure.component(&[i, a]);
            if lead.is_zero() {
                continue;
            }
            let dv = structure.component(&[b, d]).partial_at(i);
            acc = &acc + &(&lead * &dv);
        }
    }
    acc
}

/// First triple `j < k < l` with a nonzero cyclic sum, if any.
pub fn cyclic_condition(structure: &Multivector) -> Option<CyclicWitness> {
    let n = structure.chart().dim();
    for j in 0..n {
        for k in j + 1..n {
            for l in k + 1..n {
                let s = cyclic_sum(structure, j, k, l);
                if !s.is_zero() {
                    return Some(CyclicWitness { indices: (j, k, l), sum: s });
                }
            }
        }
    }
    None
}

/// Both Poisson criteria: (cyclic condition holds, `[Λ,Λ] = 0`).
pub fn jacobi_criteria(structure: &Multivector) -> Result<(bool, bool)> {
    if structure.degree() != 2 {
        return Err(Error::Type(format!("Poisson structures are bivectors, got degree {}", structure.degree())));
    }
    Ok((cyclic_condition(structure).is_none(), schouten(structure, structure)?.is_zero()))
}

/// A bivector that passed both Jacobi criteria.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonStructure {
    structure: Multivector,
}

impl PoissonStructure {
    pub fn new(structure: Multivector) -> Result<Self> {
        let (cyclic, square) = jacobi_criteria(&structure)?;
        if cyclic != square {
            return Err(Error::Internal(format!(
                "cyclic condition ({cyclic}) and Schouten square ({square}) disagree on {structure}"
            )));
        }
        if let Some(w) = cyclic_condition(&structure) {
            let (j, k, l) = w.indices;
            return Err(Error::JacobiFailure { j, k, l, sum: w.sum.to_text() });
        }
        Ok(PoissonStructure { structure })
    }

    pub fn bivector(&self) -> &Multivector {
        &self.structure
    }

    pub fn chart(&self) -> &Chart {
        self.structure.chart()
    }

    /// `{f, g} = ⟨Λ, df ∧ dg⟩`.
    pub fn bracket(&self, f: &Scalar, g: &Scalar) -> Result<Scalar> {
        let c = self.chart();
        pair(&self.structure, &differential(c, f).wedge(&differential(c, g))?)
    }

    /// `Λ_μ = i_μ Λ` for a 1-form.
    pub fn sharp(&self, mu: &Form) -> Result<Multivector> {
        if mu.degree() != 1 {
            return Err(Error::Type("sharp needs a 1-form".into()));
        }
        contract_form_into_multivector(mu, &self.structure)
    }

    pub fn hamiltonian(&self, f: &Scalar) -> Result<Multivector> {
        self.sharp(&differential(self.chart(), f))
    }

    /// `d_T Λ` on the tangent chart, revalidated.
    pub fn tangent(&self) -> Result<PoissonStructure> {
        let lifted = tangent_lift_mv(&self.structure)?;
        PoissonStructure::new(lifted).map_err(|e| Error::Internal(format!("tangent lift is not Poisson: {e}")))
    }

    /// `{μ, η} = $_{Λμ} η − $_{Λη} μ − d⟨Λ, μ ∧ η⟩`.
    pub fn one_form_bracket(&self, mu: &Form, eta: &Form) -> Result<Form> {
        let a = lie_derivative(&self.sharp(mu)?, eta)?;
        let b = lie_derivative(&self.sharp(eta)?, mu)?;
        let d = exterior_d(&Form::from_scalar(self.chart(), pair(&self.structure, &mu.wedge(eta)?)?));
        a.try_sub(&b)?.try_sub(&d)
    }

    /// The same bracket written as `i_{Λμ}dη − i_{Λη}dμ + d⟨Λ, μ ∧ η⟩`.
    pub fn one_form_bracket_contracted(&self, mu: &Form, eta: &Form) -> Result<Form> {
        use crate::tensor::contract_multivector_into_form as ic;
        let a = ic(&self.sharp(mu)?, &exterior_d(eta))?;
        let b = ic(&self.sharp(eta)?, &exterior_d(mu))?;
        let d = exterior_d(&Form::from_scalar(self.chart(), pair(&self.structure, &mu.wedge(eta)?)?));
        a.try_sub(&b)?.try_add(&d)
    }

    /// Rejected reading in which the last term contracts `μ` itself, a
    /// function killed by `i_T`: `i_{Λμ}dη + d⟨Λ, μ ∧ η⟩`.
    ///
    /// Kept so tests can show it fails the tangent-bracket identity.
    pub fn one_form_bracket_undifferentiated(&self, mu: &Form, eta: &Form) -> Result<Form> {
        use crate::tensor::contract_multivector_into_form as ic;
        let a = ic(&self.sharp(mu)?, &exterior_d(eta))?;
        let d = exterior_d(&Form::from_scalar(self.chart(), pair(&self.structure, &mu.wedge(eta)?)?));
        a.try_add(&d)
    }

    /// `{i_T μ, i_T η}` under `d_T Λ` against `i_T` of `bracket(μ, η)`.
    pub fn tangent_bracket_identity(
        &self,
        mu: &Form,
        eta: &Form,
        bracket: impl Fn(&Self, &Form, &Form) -> Result<Form>,
    ) -> Result<bool> {
        let tp = self.tangent()?;
        let scalar = |f: Form| f.as_scalar().ok_or_else(|| Error::Internal("i_T of a 1-form".into()));
        let lhs = tp.bracket(&scalar(tangent_contraction(mu)?)?, &scalar(tangent_contraction(eta)?)?)?;
        let rhs = scalar(tangent_contraction(&bracket(self, mu, eta)?)?)?;
        Ok(lhs == rhs)
    }

    /// The three lift relations of the tangent bracket for one pair.
    pub fn bracket_relations(&self, f: &Scalar, g: &Scalar) -> Result<BracketRelations> {
        let tp = self.tangent()?;
        let tc = tp.chart().clone();
        let fg = self.bracket(f, g)?;
        let (tf, tg) = (tangent_lift_scalar(&tc, f), tangent_lift_scalar(&tc, g));
        let (vf, vg) = (vertical_lift_scalar(&tc, f), vertical_lift_scalar(&tc, g));
        Ok(BracketRelations {
            tangent_tangent: tp.bracket(&tf, &tg)? == tangent_lift_scalar(&tc, &fg),
            tangent_vertical: tp.bracket(&tf, &vg)? == vertical_lift_scalar(&tc, &fg),
            vertical_vertical: tp.bracket(&vf, &vg)?.is_zero(),
        })
    }

    pub fn is_casimir(&self, f: &Scalar) -> Result<bool> {
        Ok(self.hamiltonian(f)?.is_zero())
    }

    /// For a Casimir `f`: whether `f ∘ τ` and `d_T f` are Casimirs of `d_T Λ`.
    pub fn casimir_lifts(&self, f: &Scalar) -> Result<(bool, bool)> {
        let tp = self.tangent()?;
        let tc = tp.chart().clone();
        Ok((tp.is_casimir(&vertical_lift_scalar(&tc, f))?, tp.is_casimir(&tangent_lift_scalar(&tc, f))?))
    }

    /// Rows `Λ^{ij}(p)`: row `i` is `Λ̃¹(dx^i)` at `p`.
    ///
    /// The point lists coordinates then parameters; parameters may be
    /// omitted when no component involves them.
    pub fn matrix_at(&self, point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
        let c = self.chart();
        let (n, len) = (c.dim(), c.table().len());
        let mut values = point.to_vec();
        if point.len() == n && len > n {
            let uses_params = self.structure.components().values().any(|s| (n..len).any(|i| s.involves(i)));
            if uses_params {
                return Err(Error::Domain(format!("structure on `{}` needs parameter values", c.name())));
            }
            values.resize(len, Rational::default());
        } else if point.len() != len {
            return Err(Error::Domain(format!(
                "point has {} values, chart `{}` has {n} coordinates and {} parameters",
                point.len(),
                c.name(),
                len - n
            )));
        }
        Ok((0..n).map(|i| (0..n).map(|j| self.structure.component(&[i, j]).eval_at(&values)).collect()).collect())
    }

    /// Rank and image of `Λ̃¹` at a rational point (coordinates then parameters).
    pub fn rank_at(&self, point: &[Rational]) -> Result<CharacteristicData> {
        let span = row_basis(&self.matrix_at(point)?);
        Ok(CharacteristicData { point: point.to_vec(), rank: span.len(), span })
    }

    /// Components `Λ^{ij}` evaluated at a point whose coordinates may
    /// involve the chart's parameters.
    fn at_symbolic(&self, point: &[Scalar], s: &Scalar) -> Result<Scalar> {
        let c = self.chart();
        let n = c.dim();
        if point.len() != n {
            return Err(Error::Domain(format!("point has {} coordinates, expected {n}", point.len())));
        }
        if point.iter().any(|p| (0..n).any(|i| p.involves(i))) {
            return Err(Error::Domain("point coordinates may only involve parameters".into()));
        }
        let mut images = point.to_vec();
        images.extend((n..c.table().len()).map(|i| Scalar::var_at(c.table(), i)));
        Ok(s.compose(&images, c.table()))
    }

    /// Linear structure `Σ_{i<j} Σ_k ∂_kΛ^{ij}(p) ẋ^k ∂ẋ^i ∧ ∂ẋ^j` on `T_pM`.
    ///
    /// The point may involve parameters; it must be singular, meaning every
    /// `Λ^{ij}(p)` vanishes identically.
    pub fn linearize_at(&self, point: &[Scalar]) -> Result<Multivector> {
        let c = self.chart();
        let n = c.dim();
        let rank = self.symbolic_rank_hint(point)?;
        if rank > 0 {
            return Err(Error::NonSingularPoint(rank));
        }
        let names: Vec<String> = c.coords().iter().map(|s| dotted(s)).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let params: Vec<&str> = c.params().iter().map(String::as_str).collect();
        let out = Chart::new(&format!("T{}|p", c.name()), &refs, &params)?;
        let ident: Vec<usize> = (0..c.table().len()).collect();
        let mut acc = Multivector::zero(&out, 2);
        for (ix, coef) in self.structure.components() {
            let mut lin = out.zero();
            for k in 0..n {
                let d = self.at_symbolic(point, &coef.partial_at(k))?;
                if !d.is_zero() {
                    lin = &lin + &(&d.reindex(out.table(), &ident) * &out.coord(k));
                }
            }
            acc = acc.try_add(&Multivector::term(&out, &[ix[0] as usize, ix[1] as usize], lin)?)?;
        }
        Ok(acc)
    }

    /// Zero at a singular point; otherwise the exact rank when the point is
    /// rational, else 2 (a nonzero antisymmetric matrix has rank at least 2).
    fn symbolic_rank_hint(&self, point: &[Scalar]) -> Result<usize> {
        let mut singular = true;
        for coef in self.structure.components().values() {
            if !self.at_symbolic(point, coef)?.is_zero() {
                singular = false;
                break;
            }
        }
        if singular {
            return Ok(0);
        }
        let values: Option<Vec<Rational>> = point.iter().map(Scalar::as_constant).collect();
        match values {
            Some(v) if self.chart().params().is_empty() => Ok(self.rank_at(&v)?.rank),
            _ => Ok(2),
        }
    }

    /// At a singular point `p` and a rational `v ∈ T_pM`, compares `d_TΛ(v)`,
    /// `v_T($_ṽ Λ)(v)` for the constant extension `ṽ`, and the linearization at `v`.
    pub fn linearization_matches_lie_derivative(&self, point: &[Scalar], v: &[Rational]) -> Result<bool> {
        let c = self.chart();
        let n = c.dim();
        if v.len() != n {
            return Err(Error::Domain(format!("tangent vector has {} entries, expected {n}", v.len())));
        }
        let lin = self.linearize_at(point)?;
        let tc = tangent_chart(c)?;
        let mut images: Vec<Scalar> = point.iter().map(|p| vertical_lift_scalar(&tc, p)).collect();
        images.extend(v.iter().map(|q| tc.constant(q.clone())));
        images.extend((2 * n..tc.table().len()).map(|i| Scalar::var_at(tc.table(), i)));
        let at_v = |t: &Multivector| t.map_coefficients(&tc, |s| s.compose(&images, tc.table()));

        let lifted = at_v(&tangent_lift_mv(&self.structure)?);
        let constant_field = one_tensor(c, &v.iter().map(|q| c.constant(q.clone())).collect::<Vec<_>>());
        let via_lie = at_v(&vertical_lift_mv(&lie_derivative(&constant_field, &self.structure)?)?);

        let mut lin_images: Vec<Scalar> = v.iter().map(|q| tc.constant(q.clone())).collect();
        lin_images.extend((2 * n..tc.table().len()).map(|i| Scalar::var_at(tc.table(), i)));
        let mut via_lin = Multivector::zero(&tc, 2);
        for (ix, coef) in lin.components() {
            let val = coef.compose(&lin_images, tc.table());
            via_lin = via_lin.try_add(&Multivector::term(&tc, &[ix[0] as usize + n, ix[1] as usize + n], val)?)?;
        }
        Ok(lifted == via_lie && lifted == via_lin)
    }

    /// `$_X Λ = 0` computed directly and through the pairing criterion with
    /// `X_* dg` and `X_* df` over coordinates and their pairwise products.
    pub fn canonical_field_check(&self, x: &Multivector) -> Result<bool> {
        if x.degree() != 1 {
            return Err(Error::Type("canonical-field check needs a vector field".into()));
        }
        let direct = lie_derivative(x, &self.structure)?.is_zero();
        let c = self.chart();
        let mut family: Vec<Scalar> = (0..c.dim()).map(|i| c.coord(i)).collect();
        for i in 0..c.dim() {
            for j in i..c.dim() {
                family.push(&c.coord(i) * &c.coord(j));
            }
        }
        let lifted = tangent_lift_mv(&self.structure)?;
        let star: Vec<Form> = family.iter().map(|f| horizontal_part(x, &differential(c, f))).collect::<Result<_>>()?;
        let mut criterion = true;
        'outer: for a in 0..star.len() {
            for b in a + 1..star.len() {
                let value = pair(&lifted, &star[a].wedge(&star[b])?)?;
                if !crate::tangent::restrict_to_section(x, &value).is_zero() {
                    criterion = false;
                    break 'outer;
                }
            }
        }
        if direct != criterion {
            return Err(Error::Internal(format!("canonical-field criteria disagree for {x}")));
        }
        Ok(direct)
    }
}

/// Results of the three tangent-bracket relations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BracketRelations {
    pub tangent_tangent: bool,
    pub tangent_vertical: bool,
    pub vertical_vertical: bool,
}

impl BracketRelations {
    pub fn holds(&self) -> bool {
        self.tangent_tangent && self.tangent_vertical && self.vertical_vertical
    }
}

/// Rank and image of `Λ̃¹` at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicData {
    pub point: Vec<Rational>,
    pub rank: usize,
    pub span: Vec<Vec<Rational>>,
}

/// `Σ Λ_M^{ij} ∂_iφ^a ∂_jφ^b = Λ_N^{ab} ∘ φ` for all `a < b`.
pub fn is_poisson_map(phi: &PolyMap, source: &Multivector, target: &Multivector) -> Result<bool> {
    phi.source().check_same(source.chart())?;
    phi.target().check_same(target.chart())?;
    if source.degree() != 2 || target.degree() != 2 {
        return Err(Error::Type("Poisson maps relate bivectors".into()));
    }
    let jac = phi.jacobian();
    let m = phi.target().dim();
    for a in 0..m {
        for b in a + 1..m {
            let mut lhs = phi.source().zero();
            for (ix, c) in source.components() {
                let (i, j) = (ix[0] as usize, ix[1] as usize);
                let t = &(&jac[a][i] * &jac[b][j]) - &(&jac[a][j] * &jac[b][i]);
                lhs = &lhs + &(c * &t);
            }
            if lhs != phi.pull_scalar(&target.component(&[a, b])) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Evaluates a vector field's components at a rational point.
fn vector_at(x: &Multivector, point: &[Rational]) -> Vec<Rational> {
    (0..x.chart().dim()).map(|i| x.component(&[i]).eval_at(point)).collect()
}

/// Span at a point of `TM` of the vertical and complete lifts of `fields`.
pub fn lifted_span(fields: &[Multivector], point: &[Rational]) -> Result<Vec<Vec<Rational>>> {
    let mut rows = Vec::new();
    for f in fields {
        rows.push(vector_at(&vertical_lift_field(f)?, point));
        rows.push(vector_at(&complete_lift(f)?, point));
    }
    Ok(row_basis(&rows))
}

/// Lifted characteristic distribution against the image of `(d_TΛ)~¹` at a
/// point of `TM`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistributionSpan {
    pub lifts: Vec<Vec<Rational>>,
    pub image: Vec<Vec<Rational>>,
}

impl DistributionSpan {
    pub fn dim(&self) -> usize {
        self.lifts.len()
    }

    pub fn agree(&self) -> bool {
        same_span(&self.lifts, &self.image)
    }
}

impl PoissonStructure {
    pub fn tangent_distribution(&self, point: &[Rational]) -> Result<DistributionSpan> {
        let c = self.chart();
        let fields: Vec<Multivector> = (0..c.dim()).map(|i| self.hamiltonian(&c.coord(i))).collect::<Result<_>>()?;
        let lifts = lifted_span(&fields, point)?;
        let image = self.tangent()?.rank_at(point)?.span;
        Ok(DistributionSpan { lifts, image })
    }
}
