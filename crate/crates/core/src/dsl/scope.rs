//! Name resolution and argument checking, done before anything runs.

use std::collections::HashMap;

use super::ast::{Arg, Expr, Located, Stmt, TensorKind};
use super::verbs::{lookup, ArgKind};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Kind {
    Chart { coords: Vec<String>, params: Vec<String> },
    Scalar { chart: String },
    Tensor { kind: TensorKind, degree: usize, chart: String },
    Poisson { chart: String },
    LieAlg { basis: Vec<String> },
    Cobracket { alg: String },
    RMatrix { alg: String },
    Map { source: String, target: String },
    Point { chart: String },
}

impl Kind {
    fn label(&self) -> &'static str {
        match self {
            Kind::Chart { .. } => "chart",
            Kind::Scalar { .. } => "scalar",
            Kind::Tensor { kind: TensorKind::Form, .. } => "form",
            Kind::Tensor { kind: TensorKind::Mv, .. } => "multivector",
            Kind::Poisson { .. } => "Poisson structure",
            Kind::LieAlg { .. } => "Lie algebra",
            Kind::Cobracket { .. } => "cobracket",
            Kind::RMatrix { .. } => "r-matrix",
            Kind::Map { .. } => "map",
            Kind::Point { .. } => "point",
        }
    }

    /// The chart a value lives on, if any.
    pub fn chart(&self) -> Option<&str> {
        match self {
            Kind::Scalar { chart } | Kind::Tensor { chart, .. } | Kind::Poisson { chart } | Kind::Point { chart } => {
                Some(chart)
            }
            Kind::Map { source, .. } => Some(source),
            _ => None,
        }
    }
}

/// Declared names and their kinds, in declaration order.
#[derive(Clone, Debug, Default)]
pub struct Scope {
    kinds: HashMap<String, Kind>,
    order: Vec<String>,
}

/// How bare identifiers in an expression resolve.
enum Context<'a> {
    Chart(&'a str),
    Algebra(&'a [String]),
}

impl Scope {
    pub fn get(&self, name: &str) -> Option<&Kind> {
        self.kinds.get(name)
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }

    fn chart(&self, name: &str) -> Result<(&[String], &[String])> {
        match self.kinds.get(name) {
            Some(Kind::Chart { coords, params }) => Ok((coords, params)),
            Some(k) => Err(Error::Type(format!("`{name}` is a {}, not a chart", k.label()))),
            None => Err(Error::Name(format!("undeclared chart `{name}`"))),
        }
    }

    fn basis(&self, alg: &str) -> Result<Vec<String>> {
        match self.kinds.get(alg) {
            Some(Kind::LieAlg { basis }) => Ok(basis.clone()),
            Some(k) => Err(Error::Type(format!("`{alg}` is a {}, not a Lie algebra", k.label()))),
            None => Err(Error::Name(format!("undeclared Lie algebra `{alg}`"))),
        }
    }

    fn check_expr(&self, e: &Expr, ctx: &Context) -> Result<()> {
        match e {
            Expr::Num(..) => Ok(()),
            Expr::Neg(a) => self.check_expr(a, ctx),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Caret(a, b) => {
                self.check_expr(a, ctx)?;
                self.check_expr(b, ctx)
            }
            Expr::Field(x) => match ctx {
                Context::Chart(c) => {
                    let (coords, _) = self.chart(c)?;
                    if coords.contains(x) {
                        Ok(())
                    } else {
                        Err(Error::Name(format!("`{x}` is not a coordinate of `{c}`")))
                    }
                }
                Context::Algebra(_) => Err(Error::Type(format!("`@{x}` has no meaning in a Lie algebra"))),
            },
            Expr::Ident(x) => match ctx {
                Context::Algebra(basis) => {
                    if basis.contains(x) {
                        Ok(())
                    } else {
                        Err(Error::Name(format!("`{x}` is not a basis element")))
                    }
                }
                Context::Chart(c) => {
                    let (coords, params) = self.chart(c)?;
                    if coords.contains(x) || params.contains(x) {
                        return Ok(());
                    }
                    if let Some(k) = self.kinds.get(x) {
                        return match k {
                            Kind::Scalar { chart } | Kind::Tensor { chart, .. } if chart == c => Ok(()),
                            Kind::Scalar { .. } | Kind::Tensor { .. } => {
                                Err(Error::Type(format!("`{x}` lives on another chart than `{c}`")))
                            }
                            other => Err(Error::Type(format!("a {} cannot appear in an expression", other.label()))),
                        };
                    }
                    if x.strip_prefix('d').is_some_and(|rest| coords.iter().any(|n| n == rest)) {
                        return Ok(());
                    }
                    Err(Error::Name(format!("undeclared name `{x}` on chart `{c}`")))
                }
            },
        }
    }

    fn fresh(&self, name: &str) -> Result<()> {
        if self.kinds.contains_key(name) {
            Err(Error::Name(format!("`{name}` is already declared")))
        } else {
            Ok(())
        }
    }

    fn insert(&mut self, name: &str, k: Kind) {
        self.kinds.insert(name.to_string(), k);
        self.order.push(name.to_string());
    }

    /// Checks one statement and records what it declares.
    pub fn declare(&mut self, s: &Located) -> Result<()> {
        self.declare_stmt(&s.stmt).map_err(|e| e.at(s.line, s.col))
    }

    fn declare_stmt(&mut self, s: &Stmt) -> Result<()> {
        match s {
            Stmt::Chart { name, coords, params } => {
                self.fresh(name)?;
                let mut all: Vec<&String> = coords.iter().chain(params).collect();
                all.sort();
                if all.windows(2).any(|w| w[0] == w[1]) {
                    return Err(Error::Name(format!("repeated symbol in chart `{name}`")));
                }
                self.insert(name, Kind::Chart { coords: coords.clone(), params: params.clone() });
            }
            Stmt::Scalar { name, chart, value } | Stmt::Poisson { name, chart, value } => {
                self.chart(chart)?;
                self.check_expr(value, &Context::Chart(chart))?;
                self.fresh(name)?;
                let k = if matches!(s, Stmt::Scalar { .. }) {
                    Kind::Scalar { chart: chart.clone() }
                } else {
                    Kind::Poisson { chart: chart.clone() }
                };
                self.insert(name, k);
            }
            Stmt::Tensor { kind, name, degree, chart, value } => {
                self.chart(chart)?;
                self.check_expr(value, &Context::Chart(chart))?;
                self.fresh(name)?;
                self.insert(name, Kind::Tensor { kind: *kind, degree: *degree, chart: chart.clone() });
            }
            Stmt::LieAlg { name, basis, brackets } => {
                self.fresh(name)?;
                let basis = match basis {
                    Some(b) => b.clone(),
                    None => {
                        let mut seen: Vec<String> = Vec::new();
                        for (a, b, e) in brackets {
                            let mut words = vec![a.clone(), b.clone()];
                            idents(e, &mut words);
                            for w in words {
                                if !seen.contains(&w) {
                                    seen.push(w);
                                }
                            }
                        }
                        seen
                    }
                };
                if basis.is_empty() {
                    return Err(Error::Domain(format!("Lie algebra `{name}` needs a basis")));
                }
                for (a, b, e) in brackets {
                    for x in [a, b] {
                        if !basis.contains(x) {
                            return Err(Error::Name(format!("`{x}` is not a basis element of `{name}`")));
                        }
                    }
                    self.check_expr(e, &Context::Algebra(&basis))?;
                }
                self.insert(name, Kind::LieAlg { basis });
            }
            Stmt::Cobracket { name, alg, images } => {
                let basis = self.basis(alg)?;
                for (b, e) in images {
                    if !basis.contains(b) {
                        return Err(Error::Name(format!("`{b}` is not a basis element of `{alg}`")));
                    }
                    self.check_expr(e, &Context::Algebra(&basis))?;
                }
                self.fresh(name)?;
                self.insert(name, Kind::Cobracket { alg: alg.clone() });
            }
            Stmt::RMatrix { name, alg, value } => {
                let basis = self.basis(alg)?;
                self.check_expr(value, &Context::Algebra(&basis))?;
                self.fresh(name)?;
                self.insert(name, Kind::RMatrix { alg: alg.clone() });
            }
            Stmt::Map { name, source, target, images } => {
                self.chart(source)?;
                let (coords, _) = self.chart(target)?;
                if coords.len() != images.len() {
                    return Err(Error::Type(format!(
                        "map `{name}` needs {} components, got {}",
                        coords.len(),
                        images.len()
                    )));
                }
                for e in images {
                    self.check_expr(e, &Context::Chart(source))?;
                }
                self.fresh(name)?;
                self.insert(name, Kind::Map { source: source.clone(), target: target.clone() });
            }
            Stmt::Point { name, chart, values } => {
                let (coords, _) = self.chart(chart)?;
                if coords.len() != values.len() {
                    return Err(Error::Type(format!(
                        "point `{name}` needs {} values, got {}",
                        coords.len(),
                        values.len()
                    )));
                }
                for e in values {
                    self.check_expr(e, &Context::Chart(chart))?;
                }
                self.fresh(name)?;
                self.insert(name, Kind::Point { chart: chart.clone() });
            }
            Stmt::Command { verb, args, options } => self.check_command(verb, args, options)?,
        }
        Ok(())
    }

    fn check_command(&self, verb: &str, args: &[Arg], options: &[(String, Arg)]) -> Result<()> {
        let sig = lookup(verb).ok_or_else(|| Error::Name(format!("unknown command `{verb}`")))?;
        if args.len() != sig.args.len() {
            return Err(Error::Type(format!("`{verb}` takes {} arguments, got {}", sig.args.len(), args.len())));
        }
        let mut chart: Option<String> = None;
        for (a, kind) in args.iter().zip(sig.args) {
            if let Arg::Word(w) = a {
                if let Some(c) = self.kinds.get(w).and_then(Kind::chart) {
                    chart.get_or_insert_with(|| c.to_string());
                }
            }
            self.check_arg(verb, a, *kind, chart.as_deref())?;
        }
        for (k, v) in options {
            if !sig.options.contains(&k.as_str()) {
                return Err(Error::Name(format!("`{verb}` has no option `--{k}`")));
            }
            if k == "at" {
                match v {
                    Arg::Word(w) if matches!(self.kinds.get(w), Some(Kind::Point { chart: pc }) if Some(pc) == chart.as_ref()) =>
                        {}
                    Arg::Word(w) if self.kinds.contains_key(w) => {
                        return Err(Error::Type(format!("`--at {w}` must name a point on the structure's chart")))
                    }
                    _ => return Err(Error::Name(format!("`--at` needs a declared point, got `{v}`"))),
                }
            } else if !matches!(v, Arg::Number(_)) {
                return Err(Error::Type(format!("`--{k}` takes a number")));
            }
        }
        for r in sig.required {
            if !options.iter().any(|(k, _)| k == r) {
                return Err(Error::Type(format!("`{verb}` requires `--{r}`")));
            }
        }
        Ok(())
    }

    fn check_arg(&self, verb: &str, a: &Arg, kind: ArgKind, chart: Option<&str>) -> Result<()> {
        let found = match a {
            Arg::Word(w) => self.kinds.get(w),
            _ => None,
        };
        let expr_ok = matches!(kind, ArgKind::Scalar | ArgKind::Operand);
        match (a, found) {
            (Arg::Word(_), _) if kind == ArgKind::Word => return Ok(()),
            (Arg::Word(w), None) => {
                return match chart {
                    // a bare chart symbol is a one-token expression
                    Some(c) if expr_ok => self.check_expr(&Expr::Ident(w.clone()), &Context::Chart(c)),
                    _ => Err(Error::Name(format!("undeclared name `{w}`"))),
                };
            }
            (Arg::Number(_), _) | (Arg::Expr(_), _) => {
                if !expr_ok {
                    return Err(Error::Type(format!("`{verb}` expects a declared name here, got `{a}`")));
                }
                let c = chart.ok_or_else(|| {
                    Error::Type("an expression argument needs a chart from an earlier argument".into())
                })?;
                if let Arg::Expr(e) = a {
                    self.check_expr(e, &Context::Chart(c))?;
                }
                return Ok(());
            }
            _ => {}
        }
        let (w, k) = match (a, found) {
            (Arg::Word(w), Some(k)) => (w, k),
            _ => unreachable!("handled above"),
        };
        let same_chart = |c: &str| chart.is_none_or(|want| want == c);
        let ok = match (kind, k) {
            (ArgKind::Declared, _) => true,
            (ArgKind::Poisson, Kind::Poisson { .. }) => true,
            (ArgKind::Bivector, Kind::Poisson { .. }) => true,
            (ArgKind::Bivector, Kind::Tensor { kind: TensorKind::Mv, degree: 2, .. }) => true,
            (ArgKind::Scalar, Kind::Scalar { chart: c }) => same_chart(c),
            (ArgKind::Operand, Kind::Scalar { chart: c }) => same_chart(c),
            (ArgKind::Operand, Kind::Tensor { kind: TensorKind::Form, degree: 1, chart: c }) => same_chart(c),
            (ArgKind::Tensor, Kind::Scalar { .. } | Kind::Tensor { .. }) => true,
            (ArgKind::Form, Kind::Tensor { kind: TensorKind::Form, .. }) => true,
            (ArgKind::Field, Kind::Tensor { kind: TensorKind::Mv, degree: 1, chart: c }) => same_chart(c),
            (ArgKind::Map, Kind::Map { .. }) => true,
            (ArgKind::Cobracket, Kind::Cobracket { .. }) => true,
            (ArgKind::RMatrix, Kind::RMatrix { .. }) => true,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::Type(format!("`{verb}` cannot take the {} `{w}` here", k.label())))
        }
    }
}

fn idents(e: &Expr, out: &mut Vec<String>) {
    match e {
        Expr::Ident(s) => out.push(s.clone()),
        Expr::Num(..) | Expr::Field(_) => {}
        Expr::Neg(a) => idents(a, out),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Caret(a, b) => {
            idents(a, out);
            idents(b, out);
        }
    }
}
