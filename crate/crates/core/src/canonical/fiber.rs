//! Points of the bundles the canonical maps act on, in adapted coordinates.

use std::fmt;

use crate::error::{Error, Result};
use crate::exterior::{Components, MultiIndex};
use crate::scalar::{rational_text, Rational};

/// Rational components keyed by multi-index.
pub type PointComps = Components<Rational>;

/// Bundle tag of a [`FiberPoint`]; the degree is stored on the point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bundle {
    /// `⋀^r TTM`: an r-vector on `TM` at `(x, ẋ)`; `TTM` when `r = 1`.
    VectorsOnTangent,
    /// `T⋀^r TM`: point `(x, a)` with velocity `(δx, δa)`.
    TangentOfVectors,
    /// `⋀^r T*TM`: an r-form on `TM` at `(x, ẋ)`; `T*TM` when `r = 1`.
    FormsOnTangent,
    /// `T⋀^r T*M`: point `(x, p)` with velocity `(ẋ, ṗ)`; `TT*M` when `r = 1`.
    TangentOfForms,
}

impl Bundle {
    pub fn label(self, r: usize) -> String {
        match (self, r) {
            (Bundle::VectorsOnTangent, 1) => "TTM".into(),
            (Bundle::FormsOnTangent, 1) => "T*TM".into(),
            (Bundle::TangentOfForms, 1) => "TT*M".into(),
            (Bundle::VectorsOnTangent, _) => format!("⋀^{r}TTM"),
            (Bundle::TangentOfVectors, _) => format!("T⋀^{r}TM"),
            (Bundle::FormsOnTangent, _) => format!("⋀^{r}T*TM"),
            (Bundle::TangentOfForms, _) => format!("T⋀^{r}T*M"),
        }
    }

    fn is_on_tangent(self) -> bool {
        matches!(self, Bundle::VectorsOnTangent | Bundle::FormsOnTangent)
    }
}

/// A point with exact rational coordinates.
///
/// * `x`: base point on `M` (length `n`);
/// * `v`: the second `TM` coordinate block: `ẋ` for points over `(x, ẋ)`,
///   `δx` for `T⋀^r TM`, `ẋ` for `T⋀^r T*M`;
/// * `fiber`: the r-vector/r-form components (over `2n` positions on the
///   `…TM`-bundles, `n` positions on the `T⋀^r…` ones);
/// * `velocity`: `δa` or `ṗ` on the `T⋀^r…` bundles, empty otherwise.
#[derive(Clone, PartialEq, Eq)]
pub struct FiberPoint {
    bundle: Bundle,
    degree: usize,
    x: Vec<Rational>,
    v: Vec<Rational>,
    fiber: PointComps,
    velocity: PointComps,
}

fn check_keys(c: &PointComps, r: usize, width: usize) -> Result<()> {
    for k in c.keys() {
        if k.len() != r || k.windows(2).any(|w| w[0] >= w[1]) || k.iter().any(|&i| i as usize >= width) {
            return Err(Error::Domain(format!("component key {:?} outside the degree-{r} schema", k)));
        }
    }
    Ok(())
}

impl FiberPoint {
    pub fn new(
        bundle: Bundle,
        degree: usize,
        x: Vec<Rational>,
        v: Vec<Rational>,
        fiber: PointComps,
        velocity: PointComps,
    ) -> Result<Self> {
        let n = x.len();
        if v.len() != n {
            return Err(Error::Domain("base and second block differ in length".into()));
        }
        if bundle.is_on_tangent() {
            check_keys(&fiber, degree, 2 * n)?;
            if !velocity.is_empty() {
                return Err(Error::Domain(format!("{} has no velocity block", bundle.label(degree))));
            }
        } else {
            check_keys(&fiber, degree, n)?;
            check_keys(&velocity, degree, n)?;
        }
        let strip = |c: PointComps| c.into_iter().filter(|(_, v)| !num_traits::Zero::is_zero(v)).collect();
        Ok(FiberPoint { bundle, degree, x, v, fiber: strip(fiber), velocity: strip(velocity) })
    }

    /// `(x, ẋ, δx, δẋ)` in `TTM`.
    pub fn ttm(x: Vec<Rational>, xdot: Vec<Rational>, dx: Vec<Rational>, dxdot: Vec<Rational>) -> Result<Self> {
        let n = x.len();
        Self::new(Bundle::VectorsOnTangent, 1, x, xdot, blocks(&dx, &dxdot, n), PointComps::new())
    }

    /// `(x, p, ẋ, ṗ)` in `TT*M`.
    pub fn tt_star(x: Vec<Rational>, p: Vec<Rational>, xdot: Vec<Rational>, pdot: Vec<Rational>) -> Result<Self> {
        Self::new(Bundle::TangentOfForms, 1, x, xdot, vector_comps(&p), vector_comps(&pdot))
    }

    /// `(x, ẋ, π, π̇)` in `T*TM`.
    pub fn t_star_t(x: Vec<Rational>, xdot: Vec<Rational>, pi: Vec<Rational>, pidot: Vec<Rational>) -> Result<Self> {
        let n = x.len();
        Self::new(Bundle::FormsOnTangent, 1, x, xdot, blocks(&pi, &pidot, n), PointComps::new())
    }

    pub fn bundle(&self) -> Bundle {
        self.bundle
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.x.len()
    }

    pub fn x(&self) -> &[Rational] {
        &self.x
    }

    pub fn v(&self) -> &[Rational] {
        &self.v
    }

    pub fn fiber(&self) -> &PointComps {
        &self.fiber
    }

    pub fn velocity(&self) -> &PointComps {
        &self.velocity
    }

    pub(crate) fn expect(&self, bundle: Bundle, degree: Option<usize>) -> Result<()> {
        if self.bundle != bundle || degree.is_some_and(|d| d != self.degree) {
            return Err(Error::Domain(format!(
                "expected a point of {}, got {}",
                bundle.label(degree.unwrap_or(self.degree)),
                self.bundle.label(self.degree)
            )));
        }
        Ok(())
    }

    /// First `n` and last `n` coordinates of a degree-1 block over `2n` positions.
    pub fn split_blocks(&self) -> (Vec<Rational>, Vec<Rational>) {
        let n = self.dim();
        let get = |i: usize| self.fiber.get(&MultiIndex::from_slice(&[i as u8])).cloned().unwrap_or_default();
        ((0..n).map(get).collect(), (n..2 * n).map(get).collect())
    }

    /// Adapted coordinate names and values, e.g. `δẋ^{1 2}` or `ṗ_{1}`.
    pub fn coordinates(&self) -> Vec<(String, Rational)> {
        let n = self.dim();
        let mut out = Vec::new();
        for (i, v) in self.x.iter().enumerate() {
            out.push((format!("x^{}", i + 1), v.clone()));
        }
        let second = match self.bundle {
            Bundle::TangentOfVectors => "δx",
            _ => "ẋ",
        };
        for (i, v) in self.v.iter().enumerate() {
            out.push((format!("{second}^{}", i + 1), v.clone()));
        }
        let label = |k: &MultiIndex| {
            k.iter()
                .map(|&i| if (i as usize) < n { format!("{}", i + 1) } else { format!("{}'", i as usize - n + 1) })
                .collect::<Vec<_>>()
                .join(" ")
        };
        let (f, g) = match self.bundle {
            Bundle::VectorsOnTangent => ("u^", ""),
            Bundle::FormsOnTangent => ("a_", ""),
            Bundle::TangentOfVectors => ("ẋ^", "δẋ^"),
            Bundle::TangentOfForms => ("p_", "ṗ_"),
        };
        for (k, v) in &self.fiber {
            out.push((format!("{f}{{{}}}", label(k)), v.clone()));
        }
        for (k, v) in &self.velocity {
            out.push((format!("{g}{{{}}}", label(k)), v.clone()));
        }
        out
    }
}

impl fmt::Debug for FiberPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> =
            self.coordinates().into_iter().map(|(k, v)| format!("{k}={}", rational_text(&v))).collect();
        write!(f, "{}({})", self.bundle.label(self.degree), coords.join(", "))
    }
}

pub(crate) fn vector_comps(v: &[Rational]) -> PointComps {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !num_traits::Zero::is_zero(*c))
        .map(|(i, c)| (MultiIndex::from_slice(&[i as u8]), c.clone()))
        .collect()
}

pub(crate) fn comps_vector(c: &PointComps, n: usize) -> Vec<Rational> {
    (0..n).map(|i| c.get(&MultiIndex::from_slice(&[i as u8])).cloned().unwrap_or_default()).collect()
}

fn blocks(first: &[Rational], second: &[Rational], n: usize) -> PointComps {
    let mut c = vector_comps(first);
    for (i, v) in second.iter().enumerate() {
        if !num_traits::Zero::is_zero(v) {
            c.insert(MultiIndex::from_slice(&[(n + i) as u8]), v.clone());
        }
    }
    c
}
