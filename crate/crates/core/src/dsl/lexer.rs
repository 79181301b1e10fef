use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Number(String),
    /// `--name`
    Flag(String),
    Punct(char),
    Arrow,
    Eof,
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    /// Byte offsets, used to glue hyphenated words such as `check-diagram`.
    pub start: usize,
    pub end: usize,
}

const PUNCT: &str = "(){}[],;:=+-*/^@";

pub fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    let at = |i: usize| chars.get(i).map(|&(_, c)| c);
    let offset = |i: usize| chars.get(i).map_or(src.len(), |&(o, _)| o);
    while i < chars.len() {
        let c = chars[i].1;
        let (l0, c0, s0) = (line, col, offset(i));
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i].1 != '\n' {
                i += 1;
            }
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            while at(i).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                i += 1;
            }
            Tok::Ident(src[s0..offset(i)].to_string())
        } else if c.is_ascii_digit() {
            while at(i).is_some_and(|c| c.is_ascii_digit()) {
                i += 1;
            }
            Tok::Number(src[s0..offset(i)].to_string())
        } else if c == '-' && at(i + 1) == Some('-') && at(i + 2).is_some_and(|c| c.is_ascii_alphabetic()) {
            i += 2;
            let s = offset(i);
            while at(i).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-') {
                i += 1;
            }
            Tok::Flag(src[s..offset(i)].to_string())
        } else if c == '-' && at(i + 1) == Some('>') {
            i += 2;
            Tok::Arrow
        } else if PUNCT.contains(c) {
            i += 1;
            Tok::Punct(c)
        } else {
            return Err(Error::Syntax { line: l0, col: c0, msg: format!("unexpected character `{c}`") });
        };
        col += i - start;
        out.push(Token { tok, line: l0, col: c0, start: s0, end: offset(i) });
    }
    let end = src.len();
    out.push(Token { tok: Tok::Eof, line, col, start: end, end });
    Ok(out)
}
