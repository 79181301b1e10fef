use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use super::ast::{Arg, Expr, Located, Script, Stmt, TensorKind};
use super::parser::parse_in;
use super::report::{Entry, Report, Verdict};
use super::scope::Scope;
use crate::bialgebra::{
    coboundary_cobracket, dual_bracket, element_text, gybe_check, gybe_witness, lift_rmatrix, tangent_cobracket,
    validate_bialgebra, BialgebraFailure, Cobracket, Element, LieAlgebraData, RMatrix,
};
use crate::chart::Chart;
use crate::error::{Error, Result};
use crate::poisson::{cyclic_condition, is_poisson_map, jacobi_criteria, PoissonStructure};
use crate::polymap::PolyMap;
use crate::scalar::{Rational, Scalar};
use crate::tangent::{
    complete_lift, tangent_chart, tangent_contraction, tangent_lift_form, tangent_lift_mv, tangent_lift_scalar,
    vertical_lift_field, vertical_lift_form, vertical_lift_mv, vertical_lift_scalar,
};
use crate::tensor::{Form, Multivector};
use crate::verify::{self, Config};

/// A declared value.
#[derive(Clone)]
enum Value {
    Chart(Chart),
    Scalar(Chart, Scalar),
    Form(Form),
    Mv(Multivector),
    Poisson(PoissonStructure),
    LieAlg(LieAlgebraData),
    Cobracket(String, Cobracket),
    RMatrix(String, RMatrix),
    Map(PolyMap),
    Point(Chart, Vec<Scalar>),
}

/// Result of evaluating an expression on a chart.
enum Val {
    S(Scalar),
    F(Form),
    V(Multivector),
}

impl Val {
    fn describe(&self) -> String {
        match self {
            Val::S(_) => "a scalar".into(),
            Val::F(f) => format!("a {}-form", f.degree()),
            Val::V(v) => format!("a {}-vector", v.degree()),
        }
    }
}

/// A run that stopped on an error, with everything reported before it.
#[derive(Clone, Debug)]
pub struct Failure {
    /// 1-based statement index; `None` when the script did not parse.
    pub statement: Option<usize>,
    pub error: Error,
    pub partial: Report,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.statement {
            Some(i) => write!(f, "statement {i}: {}", self.error),
            None => write!(f, "{}", self.error),
        }
    }
}

impl std::error::Error for Failure {}

/// Declarations persist across calls to [`Session::eval`], so a REPL or a
/// foreign caller can build a script up piece by piece.
pub struct Session {
    scope: Scope,
    env: HashMap<String, Value>,
    cfg: Config,
}

/// Parses and runs a whole script in a fresh session.
pub fn run_source(src: &str, cfg: &Config) -> std::result::Result<Report, Failure> {
    Session::new(cfg.clone()).eval(src)
}

fn rational(n: &str, d: Option<&str>) -> Result<Rational> {
    let parse = |s: &str| s.parse::<BigInt>().map_err(|_| Error::Domain(format!("bad number `{s}`")));
    let num = parse(n)?;
    let den = match d {
        Some(d) => parse(d)?,
        None => BigInt::from(1),
    };
    if den.is_zero() {
        return Err(Error::Domain(format!("zero denominator in `{n}/0`")));
    }
    Ok(Rational::new(num, den))
}

fn fields(e: &Expr) -> Expr {
    let b = |x: &Expr| Box::new(fields(x));
    match e {
        Expr::Ident(s) => Expr::Field(s.clone()),
        Expr::Num(..) | Expr::Field(_) => e.clone(),
        Expr::Neg(a) => Expr::Neg(b(a)),
        Expr::Add(x, y) => Expr::Add(b(x), b(y)),
        Expr::Sub(x, y) => Expr::Sub(b(x), b(y)),
        Expr::Mul(x, y) => Expr::Mul(b(x), b(y)),
        Expr::Caret(x, y) => Expr::Caret(b(x), b(y)),
    }
}

fn point_text(p: &[Scalar]) -> String {
    format!("({})", p.iter().map(Scalar::to_text).collect::<Vec<_>>().join(", "))
}

impl Session {
    pub fn new(cfg: Config) -> Self {
        Session { scope: Scope::default(), env: HashMap::new(), cfg }
    }

    pub fn config(&self) -> &Config {
        &self.cfg
    }

    /// Names declared so far, in order.
    pub fn names(&self) -> &[String] {
        self.scope.names()
    }

    /// Parses `src` against the current declarations and runs it.
    pub fn eval(&mut self, src: &str) -> std::result::Result<Report, Failure> {
        let mut scope = self.scope.clone();
        let script = parse_in(src, &mut scope).map_err(|error| Failure {
            statement: None,
            error,
            partial: Report { seed: self.cfg.seed, entries: Vec::new() },
        })?;
        let before = std::mem::replace(&mut self.scope, scope);
        let result = self.run(&script);
        if let Err(f) = &result {
            // keep only the declarations that actually ran
            let ran = f.statement.map_or(0, |i| i - 1);
            let mut kept = before;
            for s in &script.stmts[..ran] {
                kept.declare(s).expect("declared once already");
            }
            self.scope = kept;
        }
        result
    }

    /// Runs an already checked script.
    pub fn run(&mut self, script: &Script) -> std::result::Result<Report, Failure> {
        let mut report = Report { seed: self.cfg.seed, entries: Vec::new() };
        for (i, s) in script.stmts.iter().enumerate() {
            match self.statement(s) {
                Ok(Some(mut e)) => {
                    e.index = i + 1;
                    e.line = s.line;
                    report.entries.push(e);
                }
                Ok(None) => {}
                Err(error) => {
                    return Err(Failure { statement: Some(i + 1), error: error.at(s.line, s.col), partial: report })
                }
            }
        }
        Ok(report)
    }

    fn get(&self, name: &str) -> Result<&Value> {
        self.env.get(name).ok_or_else(|| Error::Name(format!("undeclared name `{name}`")))
    }

    fn chart(&self, name: &str) -> Result<Chart> {
        match self.get(name)? {
            Value::Chart(c) => Ok(c.clone()),
            _ => Err(Error::Type(format!("`{name}` is not a chart"))),
        }
    }

    fn algebra(&self, name: &str) -> Result<&LieAlgebraData> {
        match self.get(name)? {
            Value::LieAlg(g) => Ok(g),
            _ => Err(Error::Type(format!("`{name}` is not a Lie algebra"))),
        }
    }

    fn eval_expr(&self, e: &Expr, c: &Chart) -> Result<Val> {
        Ok(match e {
            Expr::Num(n, d) => Val::S(c.constant(rational(n, d.as_deref())?)),
            Expr::Field(x) => {
                let i = c.coord_index(x).ok_or_else(|| Error::Name(format!("`{x}` is not a coordinate")))?;
                Val::V(Multivector::term(c, &[i], c.one())?)
            }
            Expr::Ident(x) => {
                if c.table().index_of(x).is_some() {
                    return Ok(Val::S(c.var(x)?));
                }
                match self.env.get(x) {
                    Some(Value::Scalar(sc, s)) if sc.same(c) => Val::S(s.clone()),
                    Some(Value::Form(f)) if f.chart().same(c) => match f.as_scalar() {
                        Some(s) if f.degree() == 0 => Val::S(s),
                        _ => Val::F(f.clone()),
                    },
                    Some(Value::Mv(v)) if v.chart().same(c) => match v.as_scalar() {
                        Some(s) if v.degree() == 0 => Val::S(s),
                        _ => Val::V(v.clone()),
                    },
                    Some(_) => return Err(Error::Type(format!("`{x}` cannot be used on chart `{}`", c.name()))),
                    None => {
                        let i = x
                            .strip_prefix('d')
                            .and_then(|r| c.coord_index(r))
                            .ok_or_else(|| Error::Name(format!("undeclared name `{x}`")))?;
                        Val::F(Form::term(c, &[i], c.one())?)
                    }
                }
            }
            Expr::Neg(a) => match self.eval_expr(a, c)? {
                Val::S(s) => Val::S(s.negate()),
                Val::F(f) => Val::F(f.neg()),
                Val::V(v) => Val::V(v.neg()),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sub = matches!(e, Expr::Sub(..));
                let (x, y) = (self.eval_expr(a, c)?, self.eval_expr(b, c)?);
                match (x, y) {
                    (Val::S(p), Val::S(q)) => Val::S(if sub { p.try_sub(&q)? } else { p.try_add(&q)? }),
                    (Val::F(p), Val::F(q)) if p.degree() == q.degree() => {
                        Val::F(if sub { p.try_sub(&q)? } else { p.try_add(&q)? })
                    }
                    (Val::V(p), Val::V(q)) if p.degree() == q.degree() => {
                        Val::V(if sub { p.try_sub(&q)? } else { p.try_add(&q)? })
                    }
                    (x, y) => {
                        return Err(Error::Type(format!("cannot add {} and {}", x.describe(), y.describe())));
                    }
                }
            }
            Expr::Mul(a, b) => {
                let (x, y) = (self.eval_expr(a, c)?, self.eval_expr(b, c)?);
                match (x, y) {
                    (Val::S(p), Val::S(q)) => Val::S(p.try_mul(&q)?),
                    (Val::S(p), Val::F(t)) | (Val::F(t), Val::S(p)) => Val::F(t.scale(&p)),
                    (Val::S(p), Val::V(t)) | (Val::V(t), Val::S(p)) => Val::V(t.scale(&p)),
                    (x, y) => {
                        return Err(Error::Type(format!(
                            "`*` multiplies by scalars only; use `^` to wedge {} and {}",
                            x.describe(),
                            y.describe()
                        )))
                    }
                }
            }
            Expr::Caret(a, b) => {
                let x = self.eval_expr(a, c)?;
                if let Expr::Num(n, None) = b.as_ref() {
                    let k: u32 = n
                        .parse()
                        .ok()
                        .filter(|k| *k <= 64)
                        .ok_or_else(|| Error::Domain(format!("exponent `{n}` out of range")))?;
                    return match x {
                        Val::S(s) => Ok(Val::S(s.pow(k))),
                        other => Err(Error::Type(format!("cannot raise {} to a power", other.describe()))),
                    };
                }
                match (x, self.eval_expr(b, c)?) {
                    (Val::S(p), Val::S(q)) => Val::S(p.try_mul(&q)?),
                    (Val::S(p), Val::F(t)) | (Val::F(t), Val::S(p)) => Val::F(t.scale(&p)),
                    (Val::S(p), Val::V(t)) | (Val::V(t), Val::S(p)) => Val::V(t.scale(&p)),
                    (Val::F(p), Val::F(q)) => Val::F(p.wedge(&q)?),
                    (Val::V(p), Val::V(q)) => Val::V(p.wedge(&q)?),
                    (x, y) => return Err(Error::Type(format!("cannot wedge {} with {}", x.describe(), y.describe()))),
                }
            }
        })
    }

    fn scalar_expr(&self, e: &Expr, c: &Chart) -> Result<Scalar> {
        match self.eval_expr(e, c)? {
            Val::S(s) => Ok(s),
            other => Err(Error::Type(format!("expected a scalar, got {}", other.describe()))),
        }
    }

    fn form_expr(&self, e: &Expr, c: &Chart, degree: usize) -> Result<Form> {
        match self.eval_expr(e, c)? {
            Val::F(f) if f.degree() == degree => Ok(f),
            Val::S(s) if degree == 0 => Ok(Form::from_scalar(c, s)),
            Val::S(s) if s.is_zero() => Ok(Form::zero(c, degree)),
            other => Err(Error::Type(format!("declared a {degree}-form, got {}", other.describe()))),
        }
    }

    fn mv_expr(&self, e: &Expr, c: &Chart, degree: usize) -> Result<Multivector> {
        match self.eval_expr(e, c)? {
            Val::V(v) if v.degree() == degree => Ok(v),
            Val::S(s) if degree == 0 => Ok(Multivector::from_scalar(c, s)),
            Val::S(s) if s.is_zero() => Ok(Multivector::zero(c, degree)),
            other => Err(Error::Type(format!("declared a {degree}-vector, got {}", other.describe()))),
        }
    }

    /// An element of `⋀^degree g`, written with basis names.
    fn element(&self, e: &Expr, g: &LieAlgebraData, degree: usize) -> Result<Element> {
        let c = g.chart("g")?;
        let v = self.mv_expr(&fields(e), &c, degree)?;
        v.components()
            .iter()
            .map(|(k, s)| {
                s.as_constant()
                    .map(|q| (k.clone(), q))
                    .ok_or_else(|| Error::Domain(format!("non-constant coefficient {s}")))
            })
            .collect()
    }

    fn statement(&mut self, s: &Located) -> Result<Option<Entry>> {
        let (name, value) = match &s.stmt {
            Stmt::Chart { name, coords, params } => {
                let c: Vec<&str> = coords.iter().map(String::as_str).collect();
                let p: Vec<&str> = params.iter().map(String::as_str).collect();
                (name, Value::Chart(Chart::new(name, &c, &p)?))
            }
            Stmt::Scalar { name, chart, value } => {
                let c = self.chart(chart)?;
                (name, Value::Scalar(c.clone(), self.scalar_expr(value, &c)?))
            }
            Stmt::Tensor { kind, name, degree, chart, value } => {
                let c = self.chart(chart)?;
                let v = match kind {
                    TensorKind::Form => Value::Form(self.form_expr(value, &c, *degree)?),
                    TensorKind::Mv => Value::Mv(self.mv_expr(value, &c, *degree)?),
                };
                (name, v)
            }
            Stmt::Poisson { name, chart, value } => {
                let c = self.chart(chart)?;
                (name, Value::Poisson(PoissonStructure::new(self.mv_expr(value, &c, 2)?)?))
            }
            Stmt::LieAlg { name, basis, brackets } => {
                let names: Vec<String> = match basis {
                    Some(b) => b.clone(),
                    None => match self.scope.get(name) {
                        Some(super::scope::Kind::LieAlg { basis }) => basis.clone(),
                        _ => return Err(Error::Internal(format!("Lie algebra `{name}` missing from scope"))),
                    },
                };
                let refs: Vec<&str> = names.iter().map(String::as_str).collect();
                let blank = LieAlgebraData::abelian(&refs);
                let mut table = Vec::new();
                for (a, b, e) in brackets {
                    let pos = |x: &String| names.iter().position(|n| n == x).expect("checked by scope");
                    let img = self.element(e, &blank, 1)?;
                    let row: Vec<(usize, Rational)> = img.into_iter().map(|(k, q)| (k[0] as usize, q)).collect();
                    table.push((pos(a), pos(b), row));
                }
                (name, Value::LieAlg(LieAlgebraData::from_brackets(&refs, &table)?))
            }
            Stmt::Cobracket { name, alg, images } => {
                let g = self.algebra(alg)?.clone();
                let mut imgs = vec![Element::new(); g.dim()];
                for (b, e) in images {
                    let k = g.names().iter().position(|n| n == b).expect("checked by scope");
                    imgs[k] = self.element(e, &g, 2)?;
                }
                (name, Value::Cobracket(alg.clone(), Cobracket::new(imgs)?))
            }
            Stmt::RMatrix { name, alg, value } => {
                let g = self.algebra(alg)?.clone();
                (name, Value::RMatrix(alg.clone(), RMatrix::new(g.dim(), self.element(value, &g, 2)?)?))
            }
            Stmt::Map { name, source, target, images } => {
                let (sc, tc) = (self.chart(source)?, self.chart(target)?);
                let imgs = images.iter().map(|e| self.scalar_expr(e, &sc)).collect::<Result<Vec<_>>>()?;
                (name, Value::Map(PolyMap::new(&sc, &tc, imgs)?))
            }
            Stmt::Point { name, chart, values } => {
                let c = self.chart(chart)?;
                let vals = values.iter().map(|e| self.scalar_expr(e, &c)).collect::<Result<Vec<_>>>()?;
                (name, Value::Point(c, vals))
            }
            Stmt::Command { verb, args, options } => {
                return self.command(verb, args, options, &s.stmt.to_string()).map(Some);
            }
        };
        self.env.insert(name.clone(), value);
        Ok(None)
    }

    fn poisson(&self, a: &Arg) -> Result<&PoissonStructure> {
        match self.word(a)? {
            Value::Poisson(p) => Ok(p),
            _ => Err(Error::Type(format!("`{a}` is not a Poisson structure"))),
        }
    }

    fn word(&self, a: &Arg) -> Result<&Value> {
        match a {
            Arg::Word(w) => self.get(w),
            _ => Err(Error::Type(format!("expected a declared name, got `{a}`"))),
        }
    }

    fn field(&self, a: &Arg) -> Result<&Multivector> {
        match self.word(a)? {
            Value::Mv(v) if v.degree() == 1 => Ok(v),
            _ => Err(Error::Type(format!("`{a}` is not a vector field"))),
        }
    }

    /// A scalar or form argument evaluated on `c`.
    fn operand(&self, a: &Arg, c: &Chart) -> Result<Val> {
        match a {
            Arg::Expr(e) => self.eval_expr(e, c),
            Arg::Number(n) => self.eval_expr(&Expr::Num(n.clone(), None), c),
            Arg::Word(w) => self.eval_expr(&Expr::Ident(w.clone()), c),
        }
    }

    fn scalar_arg(&self, a: &Arg, c: &Chart) -> Result<Scalar> {
        match self.operand(a, c)? {
            Val::S(s) => Ok(s),
            other => Err(Error::Type(format!("`{a}` is {}, expected a scalar", other.describe()))),
        }
    }

    fn point(&self, options: &[(String, Arg)], c: &Chart) -> Result<Vec<Scalar>> {
        let (_, a) = options.iter().find(|(k, _)| k == "at").ok_or_else(|| Error::Type("missing `--at`".into()))?;
        match self.word(a)? {
            Value::Point(pc, vals) if pc.same(c) => Ok(vals.clone()),
            _ => Err(Error::Type(format!("`{a}` is not a point on chart `{}`", c.name()))),
        }
    }

    fn run_config(&self, options: &[(String, Arg)]) -> Result<Config> {
        let mut cfg = self.cfg.clone();
        for (k, v) in options {
            let n: u64 = match v {
                Arg::Number(n) => n.parse().map_err(|_| Error::Domain(format!("`--{k} {n}` out of range")))?,
                _ => return Err(Error::Type(format!("`--{k}` takes a number"))),
            };
            match k.as_str() {
                "seed" => cfg.seed = n,
                "trials" => cfg.trials = Some(n as usize),
                "dim" => cfg.dim = n as usize,
                "degree" => cfg.degree = n.min(8) as u32,
                _ => {}
            }
        }
        Ok(cfg)
    }

    fn command(&self, verb: &str, args: &[Arg], options: &[(String, Arg)], text: &str) -> Result<Entry> {
        let cmd = text.trim_end_matches(';').to_string();
        let entry = |v| Entry::new(cmd.clone(), v);
        Ok(match verb {
            "jacobi" => {
                let structure = match self.word(&args[0])? {
                    Value::Poisson(p) => p.bivector().clone(),
                    Value::Mv(v) => v.clone(),
                    _ => return Err(Error::Type(format!("`{}` is not a bivector", args[0]))),
                };
                let (cyclic, square) = jacobi_criteria(&structure)?;
                if cyclic != square {
                    return Err(Error::Internal("Jacobi criteria disagree".into()));
                }
                let sq = crate::cartan::schouten(&structure, &structure)?;
                let mut e = entry(Verdict::of(cyclic)).data("[L,L]", sq.to_text(), sq.to_json());
                if let Some(w) = cyclic_condition(&structure) {
                    let n = structure.chart().coords();
                    let (j, k, l) = w.indices;
                    e = e.witness(format!("cyclic sum at ({}, {}, {}) is {}", n[j], n[k], n[l], w.sum));
                }
                e
            }
            "bracket" => {
                let p = self.poisson(&args[0])?;
                let c = p.chart();
                match (self.operand(&args[1], c)?, self.operand(&args[2], c)?) {
                    (Val::S(f), Val::S(g)) => {
                        let b = p.bracket(&f, &g)?;
                        entry(Verdict::Info).item("bracket", b.to_text())
                    }
                    (Val::F(m), Val::F(n)) if m.degree() == 1 && n.degree() == 1 => {
                        let b = p.one_form_bracket(&m, &n)?;
                        entry(Verdict::Info).data("bracket", b.to_text(), b.to_json())
                    }
                    (x, y) => {
                        return Err(Error::Type(format!(
                            "bracket needs two scalars or two 1-forms, got {} and {}",
                            x.describe(),
                            y.describe()
                        )))
                    }
                }
            }
            "ham" => {
                let p = self.poisson(&args[0])?;
                let h = p.hamiltonian(&self.scalar_arg(&args[1], p.chart())?)?;
                entry(Verdict::Info).data("field", h.to_text(), h.to_json())
            }
            "tangent-poisson" => {
                let tp = self.poisson(&args[0])?.tangent()?;
                let b = tp.bivector();
                entry(Verdict::Pass).item("chart", tp.chart().coords().join(", ")).data(
                    "tangent structure",
                    b.to_text(),
                    b.to_json(),
                )
            }
            "casimir" => {
                let p = self.poisson(&args[0])?;
                let f = self.scalar_arg(&args[1], p.chart())?;
                let is = p.is_casimir(&f)?;
                let (v, d) = p.casimir_lifts(&f)?;
                let tc = tangent_chart(p.chart())?;
                let mut e = entry(Verdict::of(is && v && d))
                    .item("casimir", is.to_string())
                    .item("vertical lift casimir", v.to_string())
                    .item("tangent lift casimir", d.to_string())
                    .item("tangent lift", tangent_lift_scalar(&tc, &f).to_text());
                if !is {
                    e = e.witness(format!("Hamiltonian field is {}", p.hamiltonian(&f)?));
                }
                e
            }
            "rank" => {
                let p = self.poisson(&args[0])?;
                let pt = self.point(options, p.chart())?;
                let vals = pt
                    .iter()
                    .map(|s| {
                        s.as_constant().ok_or_else(|| Error::Domain(format!("rank needs a rational point, got {s}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let r = p.rank_at(&vals)?;
                entry(Verdict::Info).item("point", point_text(&pt)).item("rank", r.rank.to_string())
            }
            "linearize" => {
                let p = self.poisson(&args[0])?;
                let pt = self.point(options, p.chart())?;
                let lin = p.linearize_at(&pt)?;
                entry(Verdict::Info).item("point", point_text(&pt)).item("chart", lin.chart().coords().join(", ")).data(
                    "linearization",
                    lin.to_text(),
                    lin.to_json(),
                )
            }
            "canonical-field" => {
                let p = self.poisson(&args[0])?;
                let ok = p.canonical_field_check(self.field(&args[1])?)?;
                entry(Verdict::of(ok))
            }
            "poisson-map" => {
                let phi = match self.word(&args[0])? {
                    Value::Map(m) => m,
                    _ => return Err(Error::Type(format!("`{}` is not a map", args[0]))),
                };
                let (p, q) = (self.poisson(&args[1])?, self.poisson(&args[2])?);
                entry(Verdict::of(is_poisson_map(phi, p.bivector(), q.bivector())?))
            }
            "dt" | "vt" => {
                let dt = verb == "dt";
                let (text, json) = match self.word(&args[0])? {
                    Value::Scalar(c, s) => {
                        let tc = tangent_chart(c)?;
                        let l = if dt { tangent_lift_scalar(&tc, s) } else { vertical_lift_scalar(&tc, s) };
                        (l.to_text(), l.to_json())
                    }
                    Value::Form(f) => {
                        let l = if dt { tangent_lift_form(f)? } else { vertical_lift_form(f)? };
                        (l.to_text(), l.to_json())
                    }
                    Value::Mv(v) => {
                        let l = if dt { tangent_lift_mv(v)? } else { vertical_lift_mv(v)? };
                        (l.to_text(), l.to_json())
                    }
                    _ => return Err(Error::Type(format!("`{}` is not a scalar, form or multivector", args[0]))),
                };
                entry(Verdict::Info).data("lift", text, json)
            }
            "it" => {
                let f = match self.word(&args[0])? {
                    Value::Form(f) => tangent_contraction(f)?,
                    _ => return Err(Error::Type(format!("`{}` is not a form", args[0]))),
                };
                entry(Verdict::Info).data("contraction", f.to_text(), f.to_json())
            }
            "lift-complete" | "lift-vertical" => {
                let x = self.field(&args[0])?;
                let l = if verb == "lift-complete" { complete_lift(x)? } else { vertical_lift_field(x)? };
                entry(Verdict::Info).data("lift", l.to_text(), l.to_json())
            }
            "bialgebra validate" | "bialgebra dual" | "bialgebra tangent" => {
                let (alg, d) = match self.word(&args[0])? {
                    Value::Cobracket(a, d) => (a, d),
                    _ => return Err(Error::Type(format!("`{}` is not a cobracket", args[0]))),
                };
                let g = self.algebra(alg)?;
                let v = validate_bialgebra(g, d)?;
                let mut e = entry(Verdict::of(v.holds()));
                let stars: Vec<String> = g.names().iter().map(|n| format!("{n}_star")).collect();
                for f in &v.failures {
                    let residue = match f {
                        BialgebraFailure::CoJacobi(w) => element_text(&w.residue, &stars),
                        BialgebraFailure::Cocycle(w) => element_text(&w.residue, g.names()),
                    };
                    e = e.witness(format!("{f}, residue {residue}"));
                }
                if v.holds() {
                    e = match verb {
                        "bialgebra dual" => e.item("dual bracket", dual_bracket(g, d)?.to_text()),
                        "bialgebra tangent" => {
                            let t = tangent_cobracket(g, d)?;
                            e.item("tangent cobracket", t.to_text(g.tangent().names()))
                        }
                        _ => e.item("cobracket", d.to_text(g.names())),
                    };
                }
                e
            }
            "rmatrix gybe" | "rmatrix lift" | "rmatrix cobracket" => {
                let (alg, r) = match self.word(&args[0])? {
                    Value::RMatrix(a, r) => (a, r),
                    _ => return Err(Error::Type(format!("`{}` is not an r-matrix", args[0]))),
                };
                let g = self.algebra(alg)?;
                match verb {
                    "rmatrix gybe" => match gybe_witness(r, g)? {
                        None => entry(Verdict::Pass),
                        Some(w) => {
                            let idx: Vec<&str> = w.indices.iter().map(|&i| g.names()[i].as_str()).collect();
                            entry(Verdict::Fail).witness(format!(
                                "at ({}): {}",
                                idx.join(", "),
                                element_text(&w.residue, g.names())
                            ))
                        }
                    },
                    "rmatrix lift" => {
                        let tg = g.tangent();
                        let lift = lift_rmatrix(r, g)?;
                        entry(Verdict::of(gybe_check(&lift, &tg)?))
                            .item("lift", element_text(lift.components(), tg.names()))
                    }
                    _ => {
                        let d = coboundary_cobracket(r, g)?;
                        entry(Verdict::Info).item("cobracket", d.to_text(g.names()))
                    }
                }
            }
            "check-diagram" => {
                let name = match &args[0] {
                    Arg::Word(w) => w,
                    other => return Err(Error::Type(format!("expected a diagram name, got `{other}`"))),
                };
                let cfg = self.run_config(options)?;
                let res = verify::check_diagram(name, &cfg)?;
                let mut e = entry(Verdict::of(res.passed()))
                    .item(res.name.clone(), format!("{}/{}", res.cases - res.failures.len().min(res.cases), res.cases));
                e.sampling = Some((cfg.seed, res.cases));
                e.witnesses = res.failures;
                e
            }
            "verify" => {
                let name = match &args[0] {
                    Arg::Word(w) => w,
                    other => return Err(Error::Type(format!("expected a suite name, got `{other}`"))),
                };
                let cfg = self.run_config(options)?;
                let reports = verify::run(name, &cfg)?;
                let ok = reports.iter().all(|r| r.passed());
                let mut e = entry(Verdict::of(ok));
                let mut cases = 0;
                for r in &reports {
                    for c in &r.checks {
                        cases += c.cases;
                        let passed = c.cases - c.failures.len().min(c.cases);
                        e = e.item(format!("{}/{}", r.suite, c.name), format!("{passed}/{}", c.cases));
                        for f in &c.failures {
                            e = e.witness(format!("{}/{}: {f}", r.suite, c.name));
                        }
                    }
                }
                e.sampling = Some((cfg.seed, cases));
                e
            }
            "show" => {
                let w = match &args[0] {
                    Arg::Word(w) => w,
                    other => return Err(Error::Type(format!("expected a name, got `{other}`"))),
                };
                let e = entry(Verdict::Info);
                match self.get(w)? {
                    Value::Chart(c) => {
                        let mut s = c.coords().join(", ");
                        if !c.params().is_empty() {
                            s.push_str(&format!("; params {}", c.params().join(", ")));
                        }
                        e.item(w.clone(), s)
                    }
                    Value::Scalar(_, s) => e.item(w.clone(), s.to_text()),
                    Value::Form(f) => e.data(w.clone(), f.to_text(), f.to_json()),
                    Value::Mv(v) => e.data(w.clone(), v.to_text(), v.to_json()),
                    Value::Poisson(p) => e.data(w.clone(), p.bivector().to_text(), p.bivector().to_json()),
                    Value::LieAlg(g) => e.item(w.clone(), g.to_text()),
                    Value::Cobracket(a, d) => e.item(w.clone(), d.to_text(self.algebra(a)?.names())),
                    Value::RMatrix(a, r) => e.item(w.clone(), element_text(r.components(), self.algebra(a)?.names())),
                    Value::Map(m) => e.item(w.clone(), point_text(m.images())),
                    Value::Point(_, p) => e.item(w.clone(), point_text(p)),
                }
            }
            other => return Err(Error::Name(format!("unknown command `{other}`"))),
        })
    }
}
