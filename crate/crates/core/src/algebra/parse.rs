//! Minimal infix grammar for polynomials and rational functions.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | '+' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | variable | '(' expr ')'
//! ```
//!
//! Multiplication is always explicit: `2x` is rejected, `2*x` is accepted.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Polynomial, RationalFunction};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Var,
    Op(char),
    LParen,
    RParen,
}

fn lex(src: &str, vars: &[&str]) -> Result<Vec<(usize, Tok)>> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Num(n)));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let word = &src[start..i];
            if !vars.contains(&word) {
                return Err(Error::Parse {
                    position: start,
                    message: format!("unknown identifier '{word}' (expected one of {vars:?})"),
                });
            }
            out.push((start, Tok::Var));
            continue;
        }
        let tok = match c {
            '+' | '-' | '*' | '/' | '^' => Tok::Op(c),
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '\u{2212}' => Tok::Op('-'),
            _ => return Err(Error::Parse { position: i, message: format!("unexpected character '{c}'") }),
        };
        out.push((i, tok));
        i += c.len_utf8();
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { position: self.here(), message: message.into() })
    }

    fn expr(&mut self) -> Result<RationalFunction> {
        let mut acc = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<RationalFunction> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op(op @ ('*' | '/'))) = self.peek().cloned() {
            self.pos += 1;
            let at = self.here();
            let rhs = self.unary()?;
            acc = if op == '*' {
                &acc * &rhs
            } else {
                acc.checked_div(&rhs).map_err(|_| Error::Parse { position: at, message: "division by zero".into() })?
            };
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<RationalFunction> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<RationalFunction> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let Some(Tok::Num(e)) = self.peek().cloned() else {
                return self.err("expected a nonnegative integer exponent");
            };
            let e: u32 = match e.try_into() {
                Ok(e) => e,
                Err(_) => return self.err("exponent too large"),
            };
            self.pos += 1;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                self.reject_juxtaposition()?;
                Ok(RationalFunction::constant(BigRational::from_integer(n)))
            }
            Some(Tok::Var) => {
                self.pos += 1;
                self.reject_juxtaposition()?;
                Ok(RationalFunction::from(Polynomial::x()))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                self.reject_juxtaposition()?;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }

    fn reject_juxtaposition(&self) -> Result<()> {
        match self.peek() {
            Some(Tok::Num(_) | Tok::Var | Tok::LParen) => self.err("implicit multiplication is not supported; use '*'"),
            _ => Ok(()),
        }
    }
}

/// Parses a rational function in one variable; any name in `vars` denotes it.
pub fn parse_rational_function(src: &str, vars: &[&str]) -> Result<RationalFunction> {
    let toks = lex(src, vars)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(out)
}

/// Parses a polynomial; division is allowed only by constants.
pub fn parse_polynomial(src: &str, vars: &[&str]) -> Result<Polynomial> {
    let f = parse_rational_function(src, vars)?;
    match f.as_polynomial() {
        Some(_) => {
            let scale = f.denom().coeff(0).recip();
            Ok(f.numer().scale(&scale))
        }
        None => Err(Error::Parse { position: 0, message: "expected a polynomial".into() }),
    }
}

/// Parses a rational number such as `-3`, `1/2` or `-(1/3)`.
pub fn parse_rational(src: &str) -> Result<BigRational> {
    let f = parse_rational_function(src, &[])?;
    f.as_constant().ok_or_else(|| Error::Parse { position: 0, message: "expected a rational number".into() })
}
