//! Finite-dimensional Lie algebras, cobrackets and classical r-matrices.
//!
//! Elements of `⋀^k g` are rational components on strictly increasing
//! basis multi-indices. A cobracket is stored through its images
//! `δ(X_k) = Σ_{i<j} d^{ij}_k X_i ∧ X_j`; an r-matrix as `Σ_{i<j} r^{ij} X_i ∧ X_j`.
//!
//! The tangent algebra `Tg` uses the ordered basis `(Ẋ_1..Ẋ_n, X̂_1..X̂_n)`,
//! matching the coordinate order `(x, ẋ)` of a tangent chart: `Ẋ_i` is the
//! coordinate field `∂x^i` and `X̂_i` is `∂ẋ^i`.

use std::fmt;

use num_traits::Zero;

use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::exterior::{self, accumulate, index, merge, normalize, Components, MultiIndex};
use crate::poisson::PoissonStructure;
use crate::random::Sampler;
use crate::scalar::{Rational, Scalar};
use crate::tangent::{dotted, tangent_lift_mv};
use crate::tensor::Multivector;

/// An element of `⋀^k g`.
pub type Element = Components<Rational>;

/// One bracket-table row: `[X_i, X_j] = Σ c_k X_k` as `(i, j, [(k, c_k)])`.
pub type BracketRow = (usize, usize, Vec<(usize, Rational)>);

/// Basis element `X_i` as a degree-1 element.
pub fn basis_vector(i: usize) -> Element {
    let mut e = Element::new();
    e.insert(index(&[i]), Rational::from_integer(1.into()));
    e
}

fn entry(e: &Element, ix: &[usize]) -> Rational {
    match normalize(ix) {
        Some((odd, k)) => {
            let v = e.get(&k).cloned().unwrap_or_default();
            if odd {
                -v
            } else {
                v
            }
        }
        None => Rational::zero(),
    }
}

/// Text form `3 e1^e2 - e2^e3`, or `0`.
pub fn element_text(e: &Element, names: &[String]) -> String {
    if e.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (ix, c)) in e.iter().enumerate() {
        let word: Vec<&str> = ix.iter().map(|&i| names[i as usize].as_str()).collect();
        let word = if word.is_empty() { "1".to_string() } else { word.join("^") };
        let neg = c < &Rational::zero();
        let mag = if neg { -c.clone() } else { c.clone() };
        match (n, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if mag != Rational::from_integer(1.into()) {
            out.push_str(&format!("{mag} "));
        }
        out.push_str(&word);
    }
    out
}

/// Structure constants `c^k_{ij}` of a Lie algebra, with basis names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraData {
    names: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
}

/// Basis triple where an identity fails, and the nonzero residue.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub indices: Vec<usize>,
    pub residue: Element,
}

impl LieAlgebraData {
    /// From brackets `[X_i, X_j] = Σ c_k X_k` for `i ≠ j`; unlisted pairs
    /// bracket to zero. Conflicting or non-antisymmetric entries are rejected,
    /// as is a failure of the Jacobi identity.
    pub fn from_brackets(names: &[&str], brackets: &[BracketRow]) -> Result<Self> {
        let n = names.len();
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut seen = vec![vec![false; n]; n];
        for (i, j, image) in brackets {
            let (i, j) = (*i, *j);
            if i >= n || j >= n || image.iter().any(|(k, _)| *k >= n) {
                return Err(Error::Domain(format!("bracket [{i},{j}] refers to a missing basis element")));
            }
            if i == j {
                if image.iter().any(|(_, q)| !q.is_zero()) {
                    return Err(Error::Domain(format!("[{0},{0}] must vanish", names[i])));
                }
                continue;
            }
            let mut row = vec![Rational::zero(); n];
            for (k, q) in image {
                row[*k] += q;
            }
            if seen[i][j] && row != c[i][j] {
                return Err(Error::Domain(format!("conflicting brackets for [{},{}]", names[i], names[j])));
            }
            seen[i][j] = true;
            seen[j][i] = true;
            c[j][i] = row.iter().map(|q| -q.clone()).collect();
            c[i][j] = row;
        }
        Self::from_constants(names, c)
    }

    /// From a full array `c[i][j][k] = c^k_{ij}`.
    pub fn from_constants(names: &[&str], c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let g = Self::unchecked(names, c)?;
        for i in 0..g.dim() {
            for j in 0..g.dim() {
                for k in 0..g.dim() {
                    if g.c[i][j][k] != -g.c[j][i][k].clone() {
                        return Err(Error::Domain(format!("structure constants not antisymmetric at ({i},{j},{k})")));
                    }
                }
            }
        }
        if let Some(w) = g.jacobi_witness() {
            return Err(Error::Domain(format!(
                "Jacobi identity fails on {:?}: {}",
                w.indices,
                element_text(&w.residue, &g.names)
            )));
        }
        Ok(g)
    }

    /// Shape checks only; used for candidate algebras that may fail Jacobi.
    pub fn unchecked(names: &[&str], c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = names.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Domain(format!("structure constants must be {n}×{n}×{n}")));
        }
        Ok(LieAlgebraData { names: names.iter().map(|s| s.to_string()).collect(), c })
    }

    pub fn abelian(names: &[&str]) -> Self {
        let n = names.len();
        LieAlgebraData {
            names: names.iter().map(|s| s.to_string()).collect(),
            c: vec![vec![vec![Rational::zero(); n]; n]; n],
        }
    }

    /// `[e1,e2] = e3` and cyclic.
    pub fn su2() -> Self {
        let one = || Rational::from_integer(1.into());
        Self::from_brackets(
            &["e1", "e2", "e3"],
            &[(0, 1, vec![(2, one())]), (1, 2, vec![(0, one())]), (2, 0, vec![(1, one())])],
        )
        .expect("su(2) is a Lie algebra")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// `c^k_{ij}`.
    pub fn constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[i][j][k]
    }

    /// `[X_i, X_j]` as a degree-1 element.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Element {
        let mut out = Element::new();
        for (k, q) in self.c[i][j].iter().enumerate() {
            accumulate(&mut out, index(&[k]), q.clone(), false);
        }
        out
    }

    /// Bracket of two degree-1 elements.
    pub fn bracket(&self, x: &Element, y: &Element) -> Element {
        let mut out = Element::new();
        for (a, p) in x {
            for (b, q) in y {
                let pq = p * q;
                for (k, c) in self.c[a[0] as usize][b[0] as usize].iter().enumerate() {
                    accumulate(&mut out, index(&[k]), &pq * c, false);
                }
            }
        }
        out
    }

    /// Cyclic sum `[[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j]` at the
    /// first basis triple where it is nonzero.
    pub fn jacobi_witness(&self) -> Option<Witness> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let e = |a: usize| basis_vector(a);
                    let t1 = self.bracket(&self.bracket_basis(i, j), &e(k));
                    let t2 = self.bracket(&self.bracket_basis(j, k), &e(i));
                    let t3 = self.bracket(&self.bracket_basis(k, i), &e(j));
                    let sum = exterior::add(&exterior::add(&t1, &t2), &t3);
                    if !sum.is_empty() {
                        return Some(Witness { indices: vec![i, j, k], residue: sum });
                    }
                }
            }
        }
        None
    }

    /// `ad_{X_a}` on `⋀^k g`, by the Leibniz rule.
    pub fn ad(&self, a: usize, e: &Element) -> Element {
        let mut out = Element::new();
        for (ix, q) in e {
            for slot in 0..ix.len() {
                for (k, c) in self.c[a][ix[slot] as usize].iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let word: Vec<usize> =
                        ix.iter().enumerate().map(|(s, &i)| if s == slot { k } else { i as usize }).collect();
                    if let Some((odd, key)) = normalize(&word) {
                        accumulate(&mut out, key, q * c, odd);
                    }
                }
            }
        }
        out
    }

    /// `ad_X` for a general degree-1 `X`.
    pub fn ad_by(&self, x: &Element, e: &Element) -> Element {
        let mut out = Element::new();
        for (a, p) in x {
            out = exterior::add(&out, &exterior::scale(&self.ad(a[0] as usize, e), p));
        }
        out
    }

    /// The semidirect product `g ⋉ g` on `(Ẋ_1..Ẋ_n, X̂_1..X̂_n)`:
    /// `[Ẋ_i,Ẋ_j] = c^k_{ij}Ẋ_k`, `[Ẋ_i,X̂_j] = c^k_{ij}X̂_k`, `[X̂_i,X̂_j] = 0`.
    pub fn tangent(&self) -> LieAlgebraData {
        let n = self.dim();
        let mut c = vec![vec![vec![Rational::zero(); 2 * n]; 2 * n]; 2 * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let q = self.c[i][j][k].clone();
                    c[i][j][k] = q.clone();
                    c[i][n + j][n + k] = q.clone();
                    c[n + i][j][n + k] = q;
                }
            }
        }
        LieAlgebraData { names: tangent_names(&self.names), c }
    }

    /// `Σ_{i<j} c^k_{ij} ξ_k ∂_i ∧ ∂_j` on a chart whose coordinates are the
    /// dual basis, so that `{ξ_i, ξ_j} = c^k_{ij} ξ_k`. Not validated.
    pub fn linear_bivector(&self, chart: &Chart) -> Result<Multivector> {
        linear_bivector_from(chart, self.dim(), |i, j, k| self.c[i][j][k].clone())
    }

    /// The Lie-Poisson structure on `g*`.
    pub fn linear_poisson(&self, chart: &Chart) -> Result<PoissonStructure> {
        PoissonStructure::new(self.linear_bivector(chart)?)
    }

    /// Chart with one coordinate per basis element.
    pub fn chart(&self, name: &str) -> Result<Chart> {
        let refs: Vec<&str> = self.names.iter().map(String::as_str).collect();
        Chart::new(name, &refs, &[])
    }

    pub fn to_text(&self) -> String {
        let mut lines = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                let b = self.bracket_basis(i, j);
                if !b.is_empty() {
                    lines.push(format!("[{},{}] = {}", self.names[i], self.names[j], element_text(&b, &self.names)));
                }
            }
        }
        if lines.is_empty() {
            "abelian".into()
        } else {
            lines.join("; ")
        }
    }
}

impl fmt::Display for LieAlgebraData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// `(e_dot.., e_hat..)` for basis names `e..`.
pub fn tangent_names(names: &[String]) -> Vec<String> {
    names.iter().map(|s| dotted(s)).chain(names.iter().map(|s| format!("{s}_hat"))).collect()
}

fn linear_bivector_from(
    chart: &Chart,
    n: usize,
    coef: impl Fn(usize, usize, usize) -> Rational,
) -> Result<Multivector> {
    if chart.dim() != n {
        return Err(Error::Domain(format!("chart {} has dimension {}, expected {n}", chart.name(), chart.dim())));
    }
    let mut comps = Components::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut s = chart.zero();
            for k in 0..n {
                let q = coef(i, j, k);
                if !q.is_zero() {
                    s = &s + &(&chart.constant(q) * &chart.coord(k));
                }
            }
            accumulate(&mut comps, index(&[i, j]), s, false);
        }
    }
    Multivector::from_components(chart, 2, comps)
}

/// A linear map `δ: g → g ∧ g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cobracket {
    images: Vec<Element>,
}

impl Cobracket {
    /// Images `δ(X_k)`, each of degree 2 (or zero).
    pub fn new(images: Vec<Element>) -> Result<Self> {
        let n = images.len();
        for (k, e) in images.iter().enumerate() {
            if e.keys().any(|ix| ix.len() != 2 || ix.iter().any(|&i| i as usize >= n)) {
                return Err(Error::Type(format!("image of basis element {k} is not a bivector on {n} elements")));
            }
        }
        Ok(Cobracket { images })
    }

    pub fn zero(n: usize) -> Self {
        Cobracket { images: vec![Element::new(); n] }
    }

    pub fn dim(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, k: usize) -> &Element {
        &self.images[k]
    }

    /// `d^{ij}_k`, antisymmetric in `(i, j)`.
    pub fn coefficient(&self, i: usize, j: usize, k: usize) -> Rational {
        entry(&self.images[k], &[i, j])
    }

    /// `δ` extended linearly to a degree-1 element.
    pub fn apply(&self, x: &Element) -> Element {
        let mut out = Element::new();
        for (a, p) in x {
            out = exterior::add(&out, &exterior::scale(&self.images[a[0] as usize], p));
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(Element::is_empty)
    }

    /// `Σ_k Σ_{i<j} d^{ij}_k x^k ∂_i ∧ ∂_j` on a chart of `g`.
    pub fn linear_bivector(&self, chart: &Chart) -> Result<Multivector> {
        linear_bivector_from(chart, self.dim(), |i, j, k| self.coefficient(i, j, k))
    }

    /// Reads back a bivector whose coefficients are linear forms in the coordinates.
    pub fn from_linear_bivector(structure: &Multivector) -> Result<Self> {
        if structure.degree() != 2 {
            return Err(Error::Type(format!("expected a bivector, got degree {}", structure.degree())));
        }
        let chart = structure.chart();
        let n = chart.dim();
        let mut images = vec![Element::new(); n];
        for (ix, s) in structure.components() {
            let mut rebuilt = chart.zero();
            for (k, image) in images.iter_mut().enumerate() {
                let d = s.partial_at(k);
                let q = d
                    .as_constant()
                    .ok_or_else(|| Error::Type(format!("coefficient {s} is not linear in the coordinates")))?;
                if !q.is_zero() {
                    rebuilt = &rebuilt + &(&chart.constant(q.clone()) * &chart.coord(k));
                    accumulate(image, ix.clone(), q, false);
                }
            }
            if &rebuilt != s {
                return Err(Error::Type(format!("coefficient {s} is not a linear form in the coordinates")));
            }
        }
        Ok(Cobracket { images })
    }

    pub fn to_text(&self, names: &[String]) -> String {
        (0..self.dim())
            .map(|k| format!("d({}) = {}", names[k], element_text(&self.images[k], names)))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// Which bialgebra condition fails, with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BialgebraFailure {
    /// The transpose of `δ` violates Jacobi on the dual basis triple.
    CoJacobi(Witness),
    /// `δ[X_i,X_j] ≠ ad_{X_i}δX_j − ad_{X_j}δX_i` on the basis pair.
    Cocycle(Witness),
}

impl fmt::Display for BialgebraFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BialgebraFailure::CoJacobi(w) => write!(f, "co-Jacobi fails on dual triple {:?}", w.indices),
            BialgebraFailure::Cocycle(w) => write!(f, "cocycle condition fails on pair {:?}", w.indices),
        }
    }
}

/// Outcome of [`validate_bialgebra`]: every failing condition, co-Jacobi first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraVerdict {
    pub failures: Vec<BialgebraFailure>,
}

impl BialgebraVerdict {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

fn dual_candidate(delta: &Cobracket) -> LieAlgebraData {
    let n = delta.dim();
    let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            for (k, v) in cell.iter_mut().enumerate() {
                *v = delta.coefficient(i, j, k);
            }
        }
    }
    LieAlgebraData { names: (0..n).map(|i| format!("f{}", i + 1)).collect(), c }
}

/// The first basis pair `(i, j)` where the cocycle identity fails.
pub fn cocycle_witness(g: &LieAlgebraData, delta: &Cobracket) -> Option<Witness> {
    let n = g.dim();
    for i in 0..n {
        for j in i + 1..n {
            let lhs = delta.apply(&g.bracket_basis(i, j));
            let rhs = exterior::add(&g.ad(i, delta.image(j)), &exterior::neg(&g.ad(j, delta.image(i))));
            let diff = exterior::add(&lhs, &exterior::neg(&rhs));
            if !diff.is_empty() {
                return Some(Witness { indices: vec![i, j], residue: diff });
            }
        }
    }
    None
}

/// Co-Jacobi and the 1-cocycle condition.
pub fn validate_bialgebra(g: &LieAlgebraData, delta: &Cobracket) -> Result<BialgebraVerdict> {
    if g.dim() != delta.dim() {
        return Err(Error::Domain(format!(
            "cobracket on {} elements for an algebra of dimension {}",
            delta.dim(),
            g.dim()
        )));
    }
    let mut failures = Vec::new();
    if let Some(w) = dual_candidate(delta).jacobi_witness() {
        failures.push(BialgebraFailure::CoJacobi(w));
    }
    if let Some(w) = cocycle_witness(g, delta) {
        failures.push(BialgebraFailure::Cocycle(w));
    }
    Ok(BialgebraVerdict { failures })
}

/// The transpose bracket on `g*`: `[ξ^i, ξ^j] = d^{ij}_k ξ^k`, with basis
/// names `{name}_star`.
pub fn dual_bracket(g: &LieAlgebraData, delta: &Cobracket) -> Result<LieAlgebraData> {
    let mut dual = dual_candidate(delta);
    if let Some(w) = dual.jacobi_witness() {
        return Err(Error::Domain(format!("co-Jacobi fails on dual triple {:?}", w.indices)));
    }
    if g.dim() != delta.dim() {
        return Err(Error::Domain("cobracket and algebra dimensions differ".into()));
    }
    dual.names = g.names.iter().map(|s| format!("{s}_star")).collect();
    Ok(dual)
}

/// Cobracket of `Tg` read from `d_T` of the linear bivector of `δ`.
///
/// Requires a validated bialgebra and rechecks the output on `Tg`.
pub fn tangent_cobracket(g: &LieAlgebraData, delta: &Cobracket) -> Result<Cobracket> {
    let verdict = validate_bialgebra(g, delta)?;
    if let Some(f) = verdict.failures.first() {
        return Err(Error::Domain(format!("not a bialgebra: {f}")));
    }
    let chart = g.chart("g")?;
    let lifted = Cobracket::from_linear_bivector(&tangent_lift_mv(&delta.linear_bivector(&chart)?)?)?;
    let tg = g.tangent();
    if let Some(f) = validate_bialgebra(&tg, &lifted)?.failures.first() {
        return Err(Error::Internal(format!("lifted cobracket is not a bialgebra on Tg: {f}")));
    }
    Ok(lifted)
}

/// The same lift written out directly:
/// `δ(X̂_k) = Σ_{i<j} d^{ij}_k X̂_i ∧ X̂_j`, `δ(Ẋ_k) = Σ_{i,j} d^{ij}_k Ẋ_i ∧ X̂_j`.
pub fn tangent_cobracket_explicit(delta: &Cobracket) -> Cobracket {
    let n = delta.dim();
    let mut images = vec![Element::new(); 2 * n];
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let d = delta.coefficient(i, j, k);
                if d.is_zero() {
                    continue;
                }
                if i < j {
                    accumulate(&mut images[n + k], index(&[n + i, n + j]), d.clone(), false);
                }
                let (odd, key) = normalize(&[i, n + j]).expect("distinct blocks");
                accumulate(&mut images[k], key, d, odd);
            }
        }
    }
    Cobracket { images }
}

/// An element of `g ∧ g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    dim: usize,
    comps: Element,
}

impl RMatrix {
    pub fn new(dim: usize, comps: Element) -> Result<Self> {
        if comps.keys().any(|ix| ix.len() != 2 || ix.iter().any(|&i| i as usize >= dim)) {
            return Err(Error::Type(format!("r-matrix components must be pairs below {dim}")));
        }
        Ok(RMatrix { dim, comps })
    }

    /// `Σ q X_i ∧ X_j` over the listed pairs (any order).
    pub fn from_terms(dim: usize, terms: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut comps = Element::new();
        for (i, j, q) in terms {
            if *i >= dim || *j >= dim {
                return Err(Error::Domain(format!("r-matrix index out of range for dimension {dim}")));
            }
            if let Some((odd, key)) = normalize(&[*i, *j]) {
                accumulate(&mut comps, key, q.clone(), odd);
            }
        }
        Ok(RMatrix { dim, comps })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn components(&self) -> &Element {
        &self.comps
    }

    /// `r^{ij}` for any `(i, j)`.
    pub fn coefficient(&self, i: usize, j: usize) -> Rational {
        entry(&self.comps, &[i, j])
    }
}

fn check_dim(g: &LieAlgebraData, r: &RMatrix) -> Result<()> {
    if g.dim() != r.dim() {
        return Err(Error::Domain(format!("r-matrix of dimension {} on an algebra of dimension {}", r.dim(), g.dim())));
    }
    Ok(())
}

/// Bracket of decomposable multivectors,
/// `[X_1∧..∧X_p, Y_1∧..∧Y_q] = Σ (−1)^{i+j} [X_i,Y_j] ∧ X_1..X̂_i..X_p ∧ Y_1..Ŷ_j..Y_q`.
fn schouten_words(g: &LieAlgebraData, a: &[u8], b: &[u8]) -> Element {
    let mut out = Element::new();
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            let rest_a: MultiIndex = a.iter().enumerate().filter(|&(s, _)| s != i).map(|(_, &v)| v).collect();
            let rest_b: MultiIndex = b.iter().enumerate().filter(|&(s, _)| s != j).map(|(_, &v)| v).collect();
            let Some((odd_rest, rest)) = merge(&rest_a, &rest_b) else { continue };
            let sign = ((i + j) % 2 == 1) ^ odd_rest;
            for (k, c) in g.c[x as usize][y as usize].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let head: MultiIndex = index(&[k]);
                if let Some((odd, key)) = merge(&head, &rest) {
                    accumulate(&mut out, key, c.clone(), sign ^ odd);
                }
            }
        }
    }
    out
}

/// Algebraic Schouten bracket of two elements of `⋀g`, expanded over basis words.
pub fn algebraic_schouten_elements(g: &LieAlgebraData, a: &Element, b: &Element) -> Element {
    let mut out = Element::new();
    for (ia, p) in a {
        for (ib, q) in b {
            let pq = p * q;
            for (key, c) in schouten_words(g, ia, ib) {
                accumulate(&mut out, key, &pq * &c, false);
            }
        }
    }
    out
}

/// `[r, s] = Σ_{a,b,c,d} r^{ab} s^{cd} c^e_{ac} X_e ∧ X_b ∧ X_d` with full antisymmetric sums.
pub fn algebraic_schouten_components(g: &LieAlgebraData, r: &RMatrix, s: &RMatrix) -> Element {
    let n = g.dim();
    let mut out = Element::new();
    for a in 0..n {
        for b in 0..n {
            let rab = r.coefficient(a, b);
            if rab.is_zero() {
                continue;
            }
            for c in 0..n {
                for d in 0..n {
                    let scd = s.coefficient(c, d);
                    if scd.is_zero() {
                        continue;
                    }
                    for e in 0..n {
                        let k = &g.c[a][c][e];
                        if k.is_zero() {
                            continue;
                        }
                        if let Some((odd, key)) = normalize(&[e, b, d]) {
                            accumulate(&mut out, key, &(&rab * &scd) * k, odd);
                        }
                    }
                }
            }
        }
    }
    out
}

/// `[r₁, r₂] ∈ ⋀³g`, computed by both expansions; they must agree.
pub fn algebraic_schouten(r1: &RMatrix, r2: &RMatrix, g: &LieAlgebraData) -> Result<Element> {
    check_dim(g, r1)?;
    check_dim(g, r2)?;
    let words = algebraic_schouten_elements(g, &r1.comps, &r2.comps);
    let comps = algebraic_schouten_components(g, r1, r2);
    if words != comps {
        return Err(Error::Internal(format!(
            "Schouten expansions disagree: {} versus {}",
            element_text(&words, &g.names),
            element_text(&comps, &g.names)
        )));
    }
    Ok(words)
}

/// The first basis element `X_a` with `ad_{X_a}[r,r] ≠ 0`.
pub fn gybe_witness(r: &RMatrix, g: &LieAlgebraData) -> Result<Option<Witness>> {
    let square = algebraic_schouten(r, r, g)?;
    Ok((0..g.dim()).find_map(|a| {
        let moved = g.ad(a, &square);
        (!moved.is_empty()).then(|| Witness { indices: vec![a], residue: moved })
    }))
}

/// Generalized Yang-Baxter equation: `[r, r]` is ad-invariant.
pub fn gybe_check(r: &RMatrix, g: &LieAlgebraData) -> Result<bool> {
    Ok(gybe_witness(r, g)?.is_none())
}

/// `δ_r(X) = ad_X r`.
pub fn coboundary_cobracket(r: &RMatrix, g: &LieAlgebraData) -> Result<Cobracket> {
    check_dim(g, r)?;
    Ok(Cobracket { images: (0..g.dim()).map(|a| g.ad(a, &r.comps)).collect() })
}

/// `Σ_{i,j} r^{ij} Ẋ_i ∧ X̂_j` on `Tg`, the `d_T` lift of `r`.
pub fn lift_rmatrix(r: &RMatrix, g: &LieAlgebraData) -> Result<RMatrix> {
    check_dim(g, r)?;
    let n = g.dim();
    let mut comps = Element::new();
    for i in 0..n {
        for j in 0..n {
            let q = r.coefficient(i, j);
            if let Some((odd, key)) = normalize(&[i, n + j]) {
                accumulate(&mut comps, key, q, odd);
            }
        }
    }
    Ok(RMatrix { dim: 2 * n, comps })
}

/// The lift computed as `d_T` of `r` viewed as a constant bivector on a chart of `g`.
pub fn lift_rmatrix_via_tangent_lift(r: &RMatrix, g: &LieAlgebraData) -> Result<RMatrix> {
    check_dim(g, r)?;
    let chart = g.chart("g")?;
    let comps: Components<Scalar> = r.comps.iter().map(|(k, q)| (k.clone(), chart.constant(q.clone()))).collect();
    let lifted = tangent_lift_mv(&Multivector::from_components(&chart, 2, comps)?)?;
    let mut out = Element::new();
    for (k, s) in lifted.components() {
        let q = s.as_constant().ok_or_else(|| Error::Internal("lift of a constant bivector is not constant".into()))?;
        accumulate(&mut out, k.clone(), q, false);
    }
    RMatrix::new(2 * g.dim(), out)
}

/// Linearization at the origin of the linear structure built from `δ`
/// reproduces `δ`; the same holds for `d_T` of that structure and the
/// tangent cobracket.
pub fn linearization_bridge(g: &LieAlgebraData, delta: &Cobracket) -> Result<bool> {
    let chart = g.chart("g")?;
    let structure = PoissonStructure::new(delta.linear_bivector(&chart)?)?;
    let origin = vec![chart.zero(); g.dim()];
    let base = Cobracket::from_linear_bivector(&structure.linearize_at(&origin)?)? == *delta;
    let lifted = PoissonStructure::new(tangent_lift_mv(structure.bivector())?)?;
    let torigin = vec![lifted.chart().zero(); 2 * g.dim()];
    let tangent = Cobracket::from_linear_bivector(&lifted.linearize_at(&torigin)?)? == tangent_cobracket(g, delta)?;
    Ok(base && tangent)
}

/// A bilinear `λ: V × V* → V`, `λ(v, a)^j = Σ v^k a_i L^{ij}_k`, the
/// sharp map of a linear bivector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSharp {
    /// `l[k][i][j] = L^{ij}_k`.
    l: Vec<Vec<Vec<Rational>>>,
}

/// The two pointwise conditions and the bracket reading of a [`LinearSharp`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearVerdict {
    /// `λ(v, ·)` is skew: `⟨λ(v,a), b⟩ = −⟨λ(v,b), a⟩`.
    pub skew: bool,
    /// `λ(v, *λ(b,a)) = λ(λ(v,a),b) − λ(λ(v,b),a)`.
    pub identity: bool,
    /// `*λ` is a Lie bracket on `V*`.
    pub conjugate_is_lie: bool,
}

impl LinearVerdict {
    pub fn consistent(&self) -> bool {
        (self.skew && self.identity) == self.conjugate_is_lie
    }
}

impl LinearSharp {
    pub fn new(l: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = l.len();
        if l.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Domain(format!("linear sharp map must be {n}×{n}×{n}")));
        }
        Ok(LinearSharp { l })
    }

    /// The sharp map of a linear bivector `Σ_{i<j} Λ^{ij} ∂_i ∧ ∂_j`.
    pub fn of_bivector(structure: &Multivector) -> Result<Self> {
        let d = Cobracket::from_linear_bivector(structure)?;
        let n = d.dim();
        let l = (0..n).map(|k| (0..n).map(|i| (0..n).map(|j| d.coefficient(i, j, k)).collect()).collect()).collect();
        Ok(LinearSharp { l })
    }

    pub fn dim(&self) -> usize {
        self.l.len()
    }

    pub fn apply(&self, v: &[Rational], a: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (k, vk) in v.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
            for (i, ai) in a.iter().enumerate().filter(|(_, q)| !q.is_zero()) {
                for (j, o) in out.iter_mut().enumerate() {
                    *o += vk * ai * &self.l[k][i][j];
                }
            }
        }
        out
    }

    /// Left conjugate `*λ(b, a) ∈ V*`: `⟨*λ(b,a), w⟩ = ⟨b, λ(w,a)⟩`.
    pub fn left_conjugate(&self, b: &[Rational], a: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        (0..n).map(|p| dot(b, &self.apply(&unit(n, p), a))).collect()
    }

    pub fn verdict(&self) -> LinearVerdict {
        let n = self.dim();
        let e = |i: usize| unit(n, i);
        let mut skew = true;
        let mut identity = true;
        for k in 0..n {
            for i in 0..n {
                for m in 0..n {
                    let lhs = dot(&e(m), &self.apply(&e(k), &e(i)));
                    let rhs = dot(&e(i), &self.apply(&e(k), &e(m)));
                    skew &= lhs == -rhs;
                    let left = self.apply(&e(k), &self.left_conjugate(&e(m), &e(i)));
                    let r1 = self.apply(&self.apply(&e(k), &e(i)), &e(m));
                    let r2 = self.apply(&self.apply(&e(k), &e(m)), &e(i));
                    identity &= left.iter().zip(r1.iter().zip(&r2)).all(|(l, (a, b))| *l == a - b);
                }
            }
        }
        // *λ as constants on V*: [ε^b, ε^a] = *λ(ε^b, ε^a)
        let c: Vec<Vec<Vec<Rational>>> =
            (0..n).map(|b| (0..n).map(|a| self.left_conjugate(&e(b), &e(a))).collect()).collect();
        let antisym = (0..n).all(|b| (0..n).all(|a| (0..n).all(|p| c[b][a][p] == -c[a][b][p].clone())));
        let names: Vec<String> = (0..n).map(|i| format!("f{i}")).collect();
        let refs: Vec<&str> = names.iter().map(String::as_str).collect();
        let jacobi = LieAlgebraData::unchecked(&refs, c).map(|g| g.jacobi_witness().is_none()).unwrap_or(false);
        LinearVerdict { skew, identity, conjugate_is_lie: antisym && jacobi }
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(1.into());
    v
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Compares the dual bracket of the tangent bialgebra with the tangent
/// algebra of the dual. `(Tg)*` is identified with `T(g*)` by swapping the
/// blocks: the dual of `Ẋ_i` is `ξ̂_i` and the dual of `X̂_i` is `ξ̇_i`.
pub fn dual_tangent_compatible(g: &LieAlgebraData, delta: &Cobracket) -> Result<bool> {
    let n = g.dim();
    let lhs = dual_bracket(&g.tangent(), &tangent_cobracket(g, delta)?)?;
    let rhs = dual_bracket(g, delta)?.tangent();
    let swap = |p: usize| if p < n { n + p } else { p - n };
    Ok((0..2 * n).all(|i| (0..2 * n).all(|j| (0..2 * n).all(|k| lhs.c[i][j][k] == rhs.c[swap(i)][swap(j)][swap(k)]))))
}

/// Random element of `g ∧ g` with small rational coefficients.
pub fn random_rmatrix(sampler: &mut Sampler, dim: usize) -> RMatrix {
    let mut comps = Element::new();
    for ix in exterior::multi_indices(dim, 2) {
        accumulate(&mut comps, ix, sampler.rational(3), false);
    }
    RMatrix { dim, comps }
}

/// Named bialgebras for corpus checks: fixed examples plus `random`
/// coboundary structures on su(2) from seeded r-matrices.
pub fn bialgebra_corpus(seed: u64, random: usize) -> Vec<(String, LieAlgebraData, Cobracket)> {
    let q = |n: i64| Rational::from_integer(n.into());
    let su2 = LieAlgebraData::su2();
    let aff = LieAlgebraData::from_brackets(&["a", "b"], &[(0, 1, vec![(1, q(1))])]).expect("aff(1)");
    let heis = LieAlgebraData::from_brackets(&["p", "q", "z"], &[(0, 1, vec![(2, q(1))])]).expect("heisenberg");
    let ab2 = LieAlgebraData::abelian(&["u", "v"]);
    let r = |g: &LieAlgebraData, i: usize, j: usize| {
        let r = RMatrix::from_terms(g.dim(), &[(i, j, q(1))]).expect("in range");
        coboundary_cobracket(&r, g).expect("same dimension")
    };
    let mut dual_aff = Element::new();
    dual_aff.insert(index(&[0, 1]), q(1));
    let mut out = vec![
        ("su2-zero".to_string(), su2.clone(), Cobracket::zero(3)),
        ("su2-standard".to_string(), su2.clone(), r(&su2, 1, 2)),
        ("aff1-triangular".to_string(), aff.clone(), r(&aff, 0, 1)),
        ("heisenberg-coboundary".to_string(), heis.clone(), r(&heis, 0, 1)),
        (
            "abelian-dual-aff1".to_string(),
            ab2,
            Cobracket::new(vec![dual_aff, Element::new()]).expect("bivector images"),
        ),
    ];
    for t in 0..random {
        let mut s = Sampler::for_trial(seed, "bialgebra-corpus", t);
        let rm = random_rmatrix(&mut s, 3);
        let d = coboundary_cobracket(&rm, &su2).expect("same dimension");
        out.push((format!("su2-random-{t}"), su2.clone(), d));
    }
    out
}
