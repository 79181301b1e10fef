use super::ast::{Arg, Expr, Located, Script, Stmt, TensorKind};
use super::lexer::{lex, Tok, Token};
use super::scope::Scope;
use crate::error::{Error, Result};

/// Parses and checks a script against an empty scope.
pub fn parse(src: &str) -> Result<Script> {
    parse_in(src, &mut Scope::default())
}

/// Parses and checks a script against declarations already in `scope`,
/// which gains the script's declarations on success.
pub fn parse_in(src: &str, scope: &mut Scope) -> Result<Script> {
    let script = parse_syntax(src)?;
    let mut next = scope.clone();
    for s in &script.stmts {
        next.declare(s)?;
    }
    *scope = next;
    Ok(script)
}

/// Syntax only; no name resolution.
pub fn parse_syntax(src: &str) -> Result<Script> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let mut stmts = Vec::new();
    while p.peek() != &Tok::Eof {
        let t = p.cur().clone();
        let stmt = p.statement()?;
        stmts.push(Located { stmt, line: t.line, col: t.col });
    }
    Ok(Script { stmts })
}

/// Parses one expression, e.g. from a CLI argument.
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(src)?, pos: 0 };
    let e = p.expr()?;
    p.expect_eof()?;
    Ok(e)
}

const RMATRIX_VERBS: [&str; 3] = ["gybe", "lift", "cobracket"];
const BIALGEBRA_VERBS: [&str; 3] = ["validate", "dual", "tangent"];

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn cur(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn peek(&self) -> &Tok {
        &self.cur().tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = self.cur();
        Err(Error::Syntax { line: t.line, col: t.col, msg: msg.into() })
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("number {s}"),
            Tok::Flag(s) => format!("`--{s}`"),
            Tok::Punct(c) => format!("`{c}`"),
            Tok::Arrow => "`->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.peek() == &Tok::Punct(c) {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected `{c}`, found {}", self.describe()))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Punct(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect_eof(&self) -> Result<()> {
        if self.peek() == &Tok::Eof {
            Ok(())
        } else {
            self.error(format!("unexpected {}", self.describe()))
        }
    }

    fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(format!("expected a name, found {}", self.describe())),
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == kw => {
                self.bump();
                Ok(())
            }
            _ => self.error(format!("expected `{kw}`, found {}", self.describe())),
        }
    }

    /// A name that may contain hyphens written without spaces.
    fn word(&mut self) -> Result<String> {
        let first = self.cur().clone();
        let mut w = self.ident()?;
        let mut end = first.end;
        loop {
            let dash = self.cur();
            let next = &self.toks[(self.pos + 1).min(self.toks.len() - 1)];
            let glued = dash.tok == Tok::Punct('-')
                && dash.start == end
                && matches!(next.tok, Tok::Ident(_))
                && next.start == dash.end;
            if !glued {
                return Ok(w);
            }
            self.bump();
            let t = self.bump();
            if let Tok::Ident(s) = t.tok {
                w.push('-');
                w.push_str(&s);
            }
            end = t.end;
        }
    }

    fn number(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Number(s) => {
                self.bump();
                Ok(s)
            }
            _ => self.error(format!("expected a number, found {}", self.describe())),
        }
    }

    fn names(&mut self) -> Result<Vec<String>> {
        self.expect('(')?;
        let mut out = vec![self.ident()?];
        while self.eat(',') {
            out.push(self.ident()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn exprs(&mut self) -> Result<Vec<Expr>> {
        self.expect('(')?;
        let mut out = vec![self.expr()?];
        while self.eat(',') {
            out.push(self.expr()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn statement(&mut self) -> Result<Stmt> {
        let head = self.word()?;
        match head.as_str() {
            "chart" => {
                let name = self.ident()?;
                let coords = self.names()?;
                let params = if matches!(self.peek(), Tok::Ident(s) if s == "params") {
                    self.bump();
                    self.names()?
                } else {
                    Vec::new()
                };
                self.expect(';')?;
                Ok(Stmt::Chart { name, coords, params })
            }
            "scalar" | "poisson" => {
                let name = self.ident()?;
                self.keyword("on")?;
                let chart = self.ident()?;
                self.expect('=')?;
                let value = self.expr()?;
                self.expect(';')?;
                Ok(if head == "scalar" {
                    Stmt::Scalar { name, chart, value }
                } else {
                    Stmt::Poisson { name, chart, value }
                })
            }
            "form" | "mv" => {
                let kind = if head == "form" { TensorKind::Form } else { TensorKind::Mv };
                let name = self.ident()?;
                self.expect(':')?;
                let degree = self.number()?;
                let degree = match degree.parse::<usize>() {
                    Ok(d) if d <= 64 => d,
                    _ => return self.error(format!("degree {degree} out of range")),
                };
                self.keyword("on")?;
                let chart = self.ident()?;
                self.expect('=')?;
                let value = self.expr()?;
                self.expect(';')?;
                Ok(Stmt::Tensor { kind, name, degree, chart, value })
            }
            "liealg" => {
                let name = self.ident()?;
                let basis = if self.peek() == &Tok::Punct('(') { Some(self.names()?) } else { None };
                self.expect('{')?;
                let mut brackets = Vec::new();
                while self.eat('[') {
                    let a = self.ident()?;
                    self.expect(',')?;
                    let b = self.ident()?;
                    self.expect(']')?;
                    self.expect('=')?;
                    let e = self.expr()?;
                    self.expect(';')?;
                    brackets.push((a, b, e));
                }
                self.expect('}')?;
                self.eat(';');
                Ok(Stmt::LieAlg { name, basis, brackets })
            }
            "cobracket" => {
                let name = self.ident()?;
                self.keyword("on")?;
                let alg = self.ident()?;
                self.expect('{')?;
                let mut images = Vec::new();
                while matches!(self.peek(), Tok::Ident(_)) {
                    let b = self.ident()?;
                    self.expect('=')?;
                    let e = self.expr()?;
                    self.expect(';')?;
                    images.push((b, e));
                }
                self.expect('}')?;
                self.eat(';');
                Ok(Stmt::Cobracket { name, alg, images })
            }
            "rmatrix" if !matches!(self.peek(), Tok::Ident(s) if RMATRIX_VERBS.contains(&s.as_str())) => {
                let name = self.ident()?;
                self.keyword("on")?;
                let alg = self.ident()?;
                self.expect('=')?;
                let value = self.expr()?;
                self.expect(';')?;
                Ok(Stmt::RMatrix { name, alg, value })
            }
            "map" => {
                let name = self.ident()?;
                self.expect(':')?;
                let source = self.ident()?;
                if self.peek() != &Tok::Arrow {
                    return self.error(format!("expected `->`, found {}", self.describe()));
                }
                self.bump();
                let target = self.ident()?;
                self.expect('=')?;
                let images = self.exprs()?;
                self.expect(';')?;
                Ok(Stmt::Map { name, source, target, images })
            }
            "point" => {
                let name = self.ident()?;
                self.keyword("on")?;
                let chart = self.ident()?;
                self.expect('=')?;
                let values = self.exprs()?;
                self.expect(';')?;
                Ok(Stmt::Point { name, chart, values })
            }
            _ => {
                let verb = match head.as_str() {
                    "rmatrix" | "bialgebra" => {
                        let allowed: &[&str] = if head == "rmatrix" { &RMATRIX_VERBS } else { &BIALGEBRA_VERBS };
                        let sub = self.ident()?;
                        if !allowed.contains(&sub.as_str()) {
                            return Err(Error::Name(format!("unknown `{head}` action `{sub}`")));
                        }
                        format!("{head} {sub}")
                    }
                    _ => head,
                };
                let mut args = Vec::new();
                let mut options = Vec::new();
                loop {
                    match self.peek().clone() {
                        Tok::Punct(';') => {
                            self.bump();
                            break;
                        }
                        Tok::Flag(f) => {
                            self.bump();
                            options.push((f, self.arg()?));
                        }
                        _ => args.push(self.arg()?),
                    }
                }
                Ok(Stmt::Command { verb, args, options })
            }
        }
    }

    fn arg(&mut self) -> Result<Arg> {
        match self.peek() {
            Tok::Ident(_) => Ok(Arg::Word(self.word()?)),
            Tok::Number(_) => Ok(Arg::Number(self.number()?)),
            Tok::Punct('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(Arg::Expr(e))
            }
            _ => self.error(format!("expected an argument, found {}", self.describe())),
        }
    }

    // expr  := unary (('+' | '-') unary)*
    // unary := '-' unary | product
    // product := power ('*' power)*
    // power := atom ('^' atom)*
    // atom  := number ['/' number] | name | '@' name | '(' expr ')'
    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else {
            self.product()
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut lhs = self.power()?;
        while self.eat('*') {
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
        }
        Ok(lhs)
    }

    fn power(&mut self) -> Result<Expr> {
        let mut lhs = self.atom()?;
        while self.eat('^') {
            lhs = Expr::Caret(Box::new(lhs), Box::new(self.atom()?));
        }
        Ok(lhs)
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Number(n) => {
                self.bump();
                // `n/d` only when a number follows; keeps the grammar LL(1)
                if self.peek() == &Tok::Punct('/') && matches!(self.peek_at(1), Tok::Number(_)) {
                    self.bump();
                    let d = self.number()?;
                    Ok(Expr::Num(n, Some(d)))
                } else {
                    Ok(Expr::Num(n, None))
                }
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Expr::Ident(s))
            }
            Tok::Punct('@') => {
                self.bump();
                Ok(Expr::Field(self.ident()?))
            }
            Tok::Punct('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect(')')?;
                Ok(e)
            }
            _ => self.error(format!("expected an expression, found {}", self.describe())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precedence() {
        let e = parse_expr("-a*b^2 + c - d").unwrap();
        assert_eq!(e.to_string(), "-a * b^2 + c - d");
        let e = parse_expr("a - (b - c) * (-d)").unwrap();
        assert_eq!(e.to_string(), "a - (b - c) * (-d)");
        assert_eq!(parse_expr("- -x").unwrap().to_string(), "-(-x)");
        assert_eq!(
            parse_expr("1/2*x").unwrap(),
            Expr::Mul(Box::new(Expr::Num("1".into(), Some("2".into()))), Box::new(Expr::Ident("x".into())))
        );
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let e = parse_syntax("chart M(x,\n  y;").unwrap_err();
        assert_eq!(e, Error::Syntax { line: 2, col: 4, msg: "expected `)`, found `;`".into() });
        assert!(matches!(parse_syntax("jacobi L"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn hyphenated_words_need_no_spaces() {
        let s = parse_syntax("check-diagram wedge-diagrams --trials 3;").unwrap();
        assert_eq!(
            s.stmts[0].stmt,
            Stmt::Command {
                verb: "check-diagram".into(),
                args: vec![Arg::Word("wedge-diagrams".into())],
                options: vec![("trials".into(), Arg::Number("3".into()))],
            }
        );
        // spaced hyphens are not part of a word, and are not arguments either
        assert!(parse_syntax("show a - b;").is_err());
    }
}
