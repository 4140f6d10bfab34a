//! Recursive-descent parser for operator expressions such as
//! `(x2*d1)*(x1*d2)`, `d2 x2^-1` or `3/2*x1^2*d1 - s`.
//!
//! Tokens: `x1 x2 d1 d2 s`, integers, `/` between integers, `+ - * ^ ( )`.
//! Juxtaposition multiplies. Only `x2` accepts a negative exponent.

use super::{WeylError, WeylOp};
use crate::scalar::{ratio, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(i64),
    Var(&'static str),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn err(pos: usize, msg: impl Into<String>) -> WeylError {
    WeylError::Parse {
        pos,
        msg: msg.into(),
    }
}

fn tokenize(src: &str) -> Result<Vec<(usize, Tok)>, WeylError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v = src[start..i]
                    .parse()
                    .map_err(|_| err(start, "integer too large"))?;
                out.push((start, Tok::Int(v)));
                continue;
            }
            _ => {
                let var = ["x1", "x2", "d1", "d2"]
                    .into_iter()
                    .find(|v| src[i..].starts_with(v))
                    .or_else(|| (c == b's').then_some("s"))
                    .ok_or_else(|| err(i, format!("unexpected character {:?}", c as char)))?;
                out.push((i, Tok::Var(var)));
                i += var.len();
                continue;
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    order: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn at(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<WeylOp, WeylError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.checked_add(&self.term()?)?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.checked_sub(&self.term()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<WeylOp, WeylError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                Some(Tok::Int(_) | Tok::Var(_) | Tok::LParen) => {
                    acc = acc.checked_mul(&self.unary()?)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<WeylOp, WeylError> {
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            return Ok(self.unary()?.scale(&ratio(-1, 1)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<WeylOp, WeylError> {
        let start = self.at();
        let (base, is_x2) = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let negative = if self.peek() == Some(&Tok::Minus) {
            self.bump();
            true
        } else {
            false
        };
        let at = self.at();
        let e = match self.bump() {
            Some(Tok::Int(e)) => u32::try_from(e).map_err(|_| err(at, "exponent too large"))?,
            _ => return Err(err(at, "expected integer exponent")),
        };
        if negative {
            if !is_x2 {
                return Err(err(start, "negative exponents are only allowed on x2"));
            }
            return WeylOp::x2_inv(self.order).checked_pow(e);
        }
        base.checked_pow(e)
    }

    fn atom(&mut self) -> Result<(WeylOp, bool), WeylError> {
        let at = self.at();
        let n = self.order;
        match self.bump() {
            Some(Tok::Int(v)) => {
                let mut c = Rational::from_integer(v.into());
                if self.peek() == Some(&Tok::Slash) {
                    self.bump();
                    let at = self.at();
                    match self.bump() {
                        Some(Tok::Int(0)) => return Err(err(at, "division by zero")),
                        Some(Tok::Int(d)) => c /= Rational::from_integer(d.into()),
                        _ => return Err(err(at, "expected integer denominator")),
                    }
                }
                Ok((WeylOp::constant(n, c), false))
            }
            Some(Tok::Var(v)) => Ok(match v {
                "x1" => (WeylOp::x1(n), false),
                "x2" => (WeylOp::x2(n), true),
                "d1" => (WeylOp::d1(n), false),
                "d2" => (WeylOp::d2(n), false),
                _ => (WeylOp::s(n), false),
            }),
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                let at = self.at();
                match self.bump() {
                    Some(Tok::RParen) => Ok((inner, false)),
                    _ => Err(err(at, "expected ')'")),
                }
            }
            Some(t) => Err(err(at, format!("unexpected token {t:?}"))),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

/// Parses and normal-orders an operator expression with `Q[s]/s^order`
/// coefficients.
pub fn parse_operator(src: &str, order: usize) -> Result<WeylOp, WeylError> {
    let toks = tokenize(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
        order,
    };
    let op = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.at(), "trailing input"));
    }
    Ok(op)
}
