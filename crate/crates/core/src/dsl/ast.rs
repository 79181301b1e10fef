//! Syntax tree and its printer. Printing then reparsing gives back an
//! identical tree; locations are ignored by equality.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Non-negative literal `n` or `n/d`, kept as written.
    Num(String, Option<String>),
    Ident(String),
    /// `@x`, the coordinate field of `x`.
    Field(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// `a ^ b`: a power when `b` is an integer literal and `a` a scalar, else a wedge.
    Caret(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(..) => 3,
            Expr::Caret(..) => 4,
            _ => 5,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        let paren = self.prec() < min;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Expr::Num(n, None) => f.write_str(n)?,
            Expr::Num(n, Some(d)) => write!(f, "{n}/{d}")?,
            Expr::Ident(s) => f.write_str(s)?,
            Expr::Field(s) => write!(f, "@{s}")?,
            Expr::Neg(e) => {
                // a nested negation is parenthesized so `--` never reaches the lexer
                f.write_str("-")?;
                e.write(f, 3)?;
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(f, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                b.write(f, 2)?;
            }
            Expr::Mul(a, b) => {
                a.write(f, 3)?;
                f.write_str(" * ")?;
                b.write(f, 4)?;
            }
            Expr::Caret(a, b) => {
                a.write(f, 4)?;
                f.write_str("^")?;
                b.write(f, 5)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TensorKind {
    Form,
    Mv,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Arg {
    Word(String),
    Number(String),
    Expr(Expr),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Word(w) | Arg::Number(w) => f.write_str(w),
            Arg::Expr(e) => write!(f, "({e})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stmt {
    Chart { name: String, coords: Vec<String>, params: Vec<String> },
    Scalar { name: String, chart: String, value: Expr },
    Tensor { kind: TensorKind, name: String, degree: usize, chart: String, value: Expr },
    Poisson { name: String, chart: String, value: Expr },
    LieAlg { name: String, basis: Option<Vec<String>>, brackets: Vec<(String, String, Expr)> },
    Cobracket { name: String, alg: String, images: Vec<(String, Expr)> },
    RMatrix { name: String, alg: String, value: Expr },
    Map { name: String, source: String, target: String, images: Vec<Expr> },
    Point { name: String, chart: String, values: Vec<Expr> },
    Command { verb: String, args: Vec<Arg>, options: Vec<(String, Arg)> },
}

fn list<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Stmt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Stmt::Chart { name, coords, params } => {
                write!(f, "chart {name}({})", list(coords))?;
                if !params.is_empty() {
                    write!(f, " params({})", list(params))?;
                }
                f.write_str(";")
            }
            Stmt::Scalar { name, chart, value } => write!(f, "scalar {name} on {chart} = {value};"),
            Stmt::Tensor { kind, name, degree, chart, value } => {
                let kw = if *kind == TensorKind::Form { "form" } else { "mv" };
                write!(f, "{kw} {name} : {degree} on {chart} = {value};")
            }
            Stmt::Poisson { name, chart, value } => write!(f, "poisson {name} on {chart} = {value};"),
            Stmt::LieAlg { name, basis, brackets } => {
                write!(f, "liealg {name}")?;
                if let Some(b) = basis {
                    write!(f, "({})", list(b))?;
                }
                f.write_str(" {")?;
                for (a, b, e) in brackets {
                    write!(f, " [{a}, {b}] = {e};")?;
                }
                f.write_str(" }")
            }
            Stmt::Cobracket { name, alg, images } => {
                write!(f, "cobracket {name} on {alg} {{")?;
                for (b, e) in images {
                    write!(f, " {b} = {e};")?;
                }
                f.write_str(" }")
            }
            Stmt::RMatrix { name, alg, value } => write!(f, "rmatrix {name} on {alg} = {value};"),
            Stmt::Map { name, source, target, images } => {
                write!(f, "map {name} : {source} -> {target} = ({});", list(images))
            }
            Stmt::Point { name, chart, values } => write!(f, "point {name} on {chart} = ({});", list(values)),
            Stmt::Command { verb, args, options } => {
                f.write_str(verb)?;
                for a in args {
                    write!(f, " {a}")?;
                }
                for (k, v) in options {
                    write!(f, " --{k} {v}")?;
                }
                f.write_str(";")
            }
        }
    }
}

/// A statement with the location of its first token.
#[derive(Clone, Debug)]
pub struct Located {
    pub stmt: Stmt,
    pub line: usize,
    pub col: usize,
}

impl PartialEq for Located {
    fn eq(&self, other: &Self) -> bool {
        self.stmt == other.stmt
    }
}

impl Eq for Located {}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Script {
    pub stmts: Vec<Located>,
}

impl fmt::Display for Script {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.stmts {
            writeln!(f, "{}", s.stmt)?;
        }
        Ok(())
    }
}
