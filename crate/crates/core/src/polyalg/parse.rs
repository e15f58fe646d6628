//! Recursive-descent parser for the polynomial input grammar:
//! integer or `int/int` coefficients, `+ - * ^`, parentheses, named
//! variables, and implicit multiplication as in `3x^2*y` or `2(x+y)`.

use super::{MultiPoly, Rat};
use num_bigint::BigInt;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.position, self.message)
    }
}

impl std::error::Error for ParseError {}

fn err<T>(position: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { position, message: message.into() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => { out.push((Tok::Plus, i)); i += 1; }
            b'-' => { out.push((Tok::Minus, i)); i += 1; }
            b'*' => { out.push((Tok::Star, i)); i += 1; }
            b'/' => { out.push((Tok::Slash, i)); i += 1; }
            b'^' => { out.push((Tok::Caret, i)); i += 1; }
            b'(' => { out.push((Tok::LParen, i)); i += 1; }
            b')' => { out.push((Tok::RParen, i)); i += 1; }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                let start = i;
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(text[start..i].to_string()), start));
            }
            _ => return err(i, format!("unexpected character {:?}", text[i..].chars().next().unwrap())),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a [&'a str],
    end: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|&(_, p)| p).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), ParseError> {
        let at = self.here();
        match self.bump() {
            Some(t) if t == want => Ok(()),
            _ => err(at, format!("expected {what}")),
        }
    }

    // expr := ('+'|'-')? term (('+'|'-') term)*
    fn expr(&mut self) -> Result<MultiPoly, ParseError> {
        let mut negate = false;
        while let Some(tok) = self.peek() {
            match tok {
                Tok::Plus => { self.bump(); }
                Tok::Minus => { self.bump(); negate = !negate; }
                _ => break,
            }
        }
        let mut acc = self.term()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := factor (('*' factor) | factor)*   -- juxtaposition multiplies
    fn term(&mut self) -> Result<MultiPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) | Some(Tok::Int(_)) => {
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                _ => return Ok(acc),
            }
        }
    }

    // factor := atom ('^' nat)*
    fn factor(&mut self) -> Result<MultiPoly, ParseError> {
        let mut base = self.atom()?;
        while matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let at = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| ParseError {
                            position: at,
                            message: "exponent out of range".into(),
                        })?;
                    base = base.pow(e);
                }
                _ => return err(at, "expected integer exponent after '^'"),
            }
        }
        Ok(base)
    }

    // atom := int ('/' int)? | var | '(' expr ')' | ('+'|'-') atom
    fn atom(&mut self) -> Result<MultiPoly, ParseError> {
        let at = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => {
                // A slash directly after an integer forms a rational coefficient.
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let dat = self.here();
                    match self.bump() {
                        Some(Tok::Int(d)) => {
                            if d == BigInt::from(0) {
                                return err(dat, "zero denominator");
                            }
                            Ok(MultiPoly::constant(self.vars.len(), Rat::new(n, d)))
                        }
                        _ => err(dat, "expected integer denominator after '/'"),
                    }
                } else {
                    Ok(MultiPoly::constant(self.vars.len(), Rat::from_integer(n)))
                }
            }
            Some(Tok::Ident(name)) => match self.vars.iter().position(|v| *v == name) {
                Some(i) => Ok(MultiPoly::var(self.vars.len(), i)),
                None => err(at, format!("unknown variable name `{name}`")),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, "closing parenthesis")?;
                Ok(inner)
            }
            Some(Tok::Plus) => self.atom(),
            Some(Tok::Minus) => Ok(self.atom()?.neg()),
            _ => err(at, "expected a coefficient, variable, or parenthesized expression"),
        }
    }
}

/// Parse `text` as a polynomial in the ordered variables `vars`.
pub fn parse_poly(text: &str, vars: &[&str]) -> Result<MultiPoly, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, vars, end: text.len() };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return err(p.here(), "unexpected trailing input");
    }
    Ok(poly)
}
