//! Coordinate charts.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar, SymbolTable};

#[derive(Debug)]
struct ChartData {
    name: String,
    coords: Vec<String>,
    params: Vec<String>,
    kind: ChartKind,
    table: Arc<SymbolTable>,
}

/// What a chart models.
#[derive(Debug, Clone)]
pub enum ChartKind {
    Base,
    /// Adapted coordinates `(x^i, x_dot^i)` on the tangent bundle of the base.
    Tangent(Chart),
    /// Adapted coordinates `(x^i, p_J)` on the bundle of `degree`-covectors.
    Cotangent {
        base: Chart,
        degree: usize,
    },
}

/// An ordered list of coordinate names plus free parameters; cheap to clone.
#[derive(Clone)]
pub struct Chart(Arc<ChartData>);

impl Chart {
    pub fn new(name: &str, coords: &[&str], params: &[&str]) -> Result<Chart> {
        let c: Vec<String> = coords.iter().map(|s| s.to_string()).collect();
        let p: Vec<String> = params.iter().map(|s| s.to_string()).collect();
        Self::with_kind(name, c, p, ChartKind::Base)
    }

    pub(crate) fn with_kind(name: &str, coords: Vec<String>, params: Vec<String>, kind: ChartKind) -> Result<Chart> {
        if coords.len() > 200 {
            return Err(Error::Domain("chart dimension above 200".into()));
        }
        for n in coords.iter().chain(&params) {
            if !is_identifier(n) {
                return Err(Error::Domain(format!("invalid symbol name `{n}`")));
            }
        }
        let table = SymbolTable::new(&coords, &params)?;
        Ok(Chart(Arc::new(ChartData { name: name.to_string(), coords, params, kind, table })))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn dim(&self) -> usize {
        self.0.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.0.coords
    }

    pub fn params(&self) -> &[String] {
        &self.0.params
    }

    pub fn kind(&self) -> &ChartKind {
        &self.0.kind
    }

    pub fn table(&self) -> &Arc<SymbolTable> {
        &self.0.table
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.0.coords.iter().position(|c| c == name)
    }

    /// The base chart when this is a tangent chart.
    pub fn tangent_base(&self) -> Option<&Chart> {
        match &self.0.kind {
            ChartKind::Tangent(b) => Some(b),
            _ => None,
        }
    }

    pub fn is_tangent(&self) -> bool {
        matches!(self.0.kind, ChartKind::Tangent(_))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(self.table())
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(self.table())
    }

    pub fn constant(&self, q: Rational) -> Scalar {
        Scalar::constant(self.table(), q)
    }

    /// Coordinate `i` as a scalar.
    pub fn coord(&self, i: usize) -> Scalar {
        Scalar::var_at(self.table(), i)
    }

    /// Any coordinate or parameter by name.
    pub fn var(&self, name: &str) -> Result<Scalar> {
        Scalar::var(self.table(), name)
    }

    pub fn same(&self, other: &Chart) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.name == other.0.name && self.0.coords == other.0.coords && self.0.params == other.0.params)
    }

    pub(crate) fn check_same(&self, other: &Chart) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::Domain(format!("chart mismatch: `{}` vs `{}`", self.name(), other.name())))
        }
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Chart {}

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.0.name, self.0.coords.join(","))?;
        if !self.0.params.is_empty() {
            write!(f, "[{}]", self.0.params.join(","))?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_bad_names() {
        assert!(Chart::new("M", &["x", "x"], &[]).is_err());
        assert!(Chart::new("M", &["x"], &["x"]).is_err());
        assert!(Chart::new("M", &["1x"], &[]).is_err());
        let m = Chart::new("M", &["x", "y"], &["c"]).unwrap();
        assert_eq!(m.dim(), 2);
        assert_eq!(m.table().len(), 3);
        assert!(m.var("c").is_ok());
    }
}
