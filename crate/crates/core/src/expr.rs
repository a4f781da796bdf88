//! Polynomial expression grammar shared by the commutative and free rings.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := ('+' | '-') unary | power
//! power  := atom ('^' digits)?
//! atom   := digits ('/' digits)? | variable | '(' expr ')'
//! ```
//!
//! Implicit multiplication is rejected. Inside a matrix row, two operands
//! separated only by whitespace (or a comma) start a new entry, so
//! `z1  z2` is a row of two entries while `z^2 - z - 1` is one.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::freealg::{FreePoly, FreeRing};
use crate::polyring::{Poly, Ring};
use crate::scalar::Scalar;

/// Exponents above this are rejected to keep hostile input bounded.
pub const MAX_EXPONENT: u32 = 256;
/// Upper bound on the degree any subexpression may reach.
pub const MAX_DEGREE: u32 = 4096;
const MAX_NESTING: usize = 128;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{message} (at byte {offset})")]
pub struct ExprError {
    /// Byte offset into the parsed text.
    pub offset: usize,
    pub message: String,
}

fn err<T>(offset: usize, message: impl Into<String>) -> Result<T, ExprError> {
    Err(ExprError { offset, message: message.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, ExprError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Tok::Plus)),
            b'-' => out.push((start, Tok::Minus)),
            b'*' => out.push((start, Tok::Star)),
            b'^' => out.push((start, Tok::Caret)),
            b'(' => out.push((start, Tok::LParen)),
            b')' => out.push((start, Tok::RParen)),
            b',' => out.push((start, Tok::Comma)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'/' {
                    i += 1;
                    let den_start = i;
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                    if i == den_start {
                        return err(den_start, "expected denominator digits after `/`");
                    }
                }
                out.push((start, Tok::Num(text[start..i].to_string())));
                continue;
            }
            b'a'..=b'z' | b'A'..=b'Z' | b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Tok::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return err(start, format!("unexpected character {:?}", ch));
            }
        }
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug)]
enum Expr {
    Num(usize, String),
    Var(usize),
    /// Signed summands; `true` marks subtraction.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    names: &'a [String],
    depth: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<(usize, Tok)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Expr, ExprError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return err(self.offset(), "expression nested too deeply");
        }
        let mut terms = alloc::vec![(false, self.term()?)];
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.bump();
            terms.push((neg, self.term()?));
        }
        self.depth -= 1;
        Ok(if terms.len() == 1 && !terms[0].0 { terms.pop().unwrap().1 } else { Expr::Sum(terms) })
    }

    fn term(&mut self) -> Result<Expr, ExprError> {
        let mut factors = alloc::vec![self.unary()?];
        while let Some(Tok::Star) = self.peek() {
            self.bump();
            factors.push(self.unary()?);
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn unary(&mut self) -> Result<Expr, ExprError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                self.nest(|p| p.unary()).map(|e| Expr::Neg(Box::new(e)))
            }
            Some(Tok::Plus) => {
                self.bump();
                self.nest(|p| p.unary())
            }
            _ => self.power(),
        }
    }

    fn nest(&mut self, f: impl FnOnce(&mut Self) -> Result<Expr, ExprError>) -> Result<Expr, ExprError> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            return err(self.offset(), "expression nested too deeply");
        }
        let r = f(self);
        self.depth -= 1;
        r
    }

    fn power(&mut self) -> Result<Expr, ExprError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            let off = self.offset();
            match self.bump() {
                Some((_, Tok::Num(s))) if !s.contains('/') => {
                    let e: u32 = match s.parse() {
                        Ok(e) if e <= MAX_EXPONENT => e,
                        _ => return err(off, format!("exponent exceeds {}", MAX_EXPONENT)),
                    };
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => err(off, "expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr, ExprError> {
        let off = self.offset();
        match self.bump() {
            Some((o, Tok::Num(s))) => Ok(Expr::Num(o, s)),
            Some((o, Tok::Ident(name))) => match self.names.iter().position(|n| *n == name) {
                Some(i) => Ok(Expr::Var(i)),
                None => err(o, format!("unknown variable `{}`", name)),
            },
            Some((_, Tok::LParen)) => {
                let e = self.expr()?;
                match self.bump() {
                    Some((_, Tok::RParen)) => Ok(e),
                    _ => err(self.toks.get(self.pos - 1).map_or(self.end, |t| t.0), "expected `)`"),
                }
            }
            Some((o, t)) => err(o, format!("unexpected token {:?}", t)),
            None => err(off, "unexpected end of expression"),
        }
    }

    fn starts_operand(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen))
    }
}

/// A target algebra for evaluating parsed expressions.
pub trait ExprAlgebra {
    type Elem;
    fn scalar_from_text(&self, text: &str) -> Result<Self::Elem, String>;
    fn var(&self, i: usize) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn degree(&self, a: &Self::Elem) -> u32;
}

impl ExprAlgebra for Ring {
    type Elem = Poly;
    fn scalar_from_text(&self, text: &str) -> Result<Poly, String> {
        let c: Scalar = self.field.parse_scalar(text).map_err(|e| e.to_string())?;
        Ok(Poly::constant(*self, c))
    }
    fn var(&self, i: usize) -> Poly {
        Ring::var(self, i)
    }
    fn add(&self, a: &Poly, b: &Poly) -> Poly {
        a + b
    }
    fn sub(&self, a: &Poly, b: &Poly) -> Poly {
        a - b
    }
    fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        a * b
    }
    fn neg(&self, a: &Poly) -> Poly {
        -a
    }
    fn one(&self) -> Poly {
        Ring::one(self)
    }
    fn degree(&self, a: &Poly) -> u32 {
        a.degree().finite().unwrap_or(0)
    }
}

impl ExprAlgebra for FreeRing {
    type Elem = FreePoly;
    fn scalar_from_text(&self, text: &str) -> Result<FreePoly, String> {
        let c = self.field.parse_scalar(text).map_err(|e| e.to_string())?;
        Ok(FreePoly::constant(*self, c))
    }
    fn var(&self, i: usize) -> FreePoly {
        FreeRing::var(self, i)
    }
    fn add(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        a.add(b)
    }
    fn sub(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        a.sub(b)
    }
    fn mul(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        a.mul(b)
    }
    fn neg(&self, a: &FreePoly) -> FreePoly {
        a.neg()
    }
    fn one(&self) -> FreePoly {
        FreeRing::one(self)
    }
    fn degree(&self, a: &FreePoly) -> u32 {
        a.degree().map_or(0, |d| d as u32)
    }
}

fn eval<A: ExprAlgebra>(alg: &A, e: &Expr) -> Result<A::Elem, ExprError> {
    Ok(match e {
        Expr::Num(o, s) => alg
            .scalar_from_text(s)
            .or_else(|m| err(*o, m))?,
        Expr::Var(i) => alg.var(*i),
        Expr::Sum(terms) => {
            let mut acc: Option<A::Elem> = None;
            for (neg, t) in terms {
                let v = eval(alg, t)?;
                acc = Some(match (acc, neg) {
                    (None, false) => v,
                    (None, true) => alg.neg(&v),
                    (Some(a), false) => alg.add(&a, &v),
                    (Some(a), true) => alg.sub(&a, &v),
                });
            }
            acc.expect("nonempty sum")
        }
        Expr::Product(factors) => {
            let mut acc = alg.one();
            for f in factors {
                let v = eval(alg, f)?;
                if alg.degree(&acc) + alg.degree(&v) > MAX_DEGREE {
                    return err(0, format!("degree exceeds {}", MAX_DEGREE));
                }
                acc = alg.mul(&acc, &v);
            }
            acc
        }
        Expr::Neg(a) => alg.neg(&eval(alg, a)?),
        Expr::Pow(a, k) => {
            let base = eval(alg, a)?;
            if alg.degree(&base).saturating_mul(*k) > MAX_DEGREE {
                return err(0, format!("degree exceeds {}", MAX_DEGREE));
            }
            let mut acc = alg.one();
            for _ in 0..*k {
                acc = alg.mul(&acc, &base);
            }
            acc
        }
    })
}

fn parser<'a>(text: &str, names: &'a [String]) -> Result<Parser<'a>, ExprError> {
    Ok(Parser { toks: tokenize(text)?, pos: 0, end: text.len(), names, depth: 0 })
}

/// Parses a single expression; trailing tokens are an error.
pub fn parse_expr<A: ExprAlgebra>(alg: &A, names: &[String], text: &str) -> Result<A::Elem, ExprError> {
    let mut p = parser(text, names)?;
    let e = p.expr()?;
    if p.pos < p.toks.len() {
        let msg = if p.starts_operand() {
            "implicit multiplication is not allowed; use `*`"
        } else {
            "unexpected trailing input"
        };
        return err(p.offset(), msg);
    }
    eval(alg, &e)
}

/// Parses a whitespace- or comma-separated row of expressions.
pub fn parse_row<A: ExprAlgebra>(alg: &A, names: &[String], text: &str) -> Result<Vec<A::Elem>, ExprError> {
    let mut p = parser(text, names)?;
    let mut out = Vec::new();
    while p.pos < p.toks.len() {
        let e = p.expr()?;
        out.push(eval(alg, &e)?);
        match p.peek() {
            None => break,
            Some(Tok::Comma) => {
                p.bump();
                if p.pos == p.toks.len() {
                    return err(p.end, "trailing comma");
                }
            }
            Some(_) if p.starts_operand() => {}
            Some(_) => return err(p.offset(), "unexpected token in row"),
        }
    }
    Ok(out)
}

pub fn parse_poly(ring: Ring, names: &[String], text: &str) -> Result<Poly, ExprError> {
    parse_expr(&ring, names, text)
}

pub fn parse_free_poly(ring: FreeRing, names: &[String], text: &str) -> Result<FreePoly, ExprError> {
    parse_expr(&ring, names, text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::qring;

    fn names(ring: Ring) -> Vec<String> {
        ring.default_names()
    }

    #[test]
    fn parses_and_prints_canonically() {
        let r = qring(2);
        let p = parse_poly(r, &names(r), "(z1 + 1)*(z1 - 1) + 1/2*z2^2").unwrap();
        assert_eq!(p.to_string(), "z1^2 + 1/2*z2^2 - 1");
    }

    #[test]
    fn rejects_implicit_multiplication() {
        let r = qring(2);
        let e = parse_poly(r, &names(r), "2 z1").unwrap_err();
        assert_eq!(e.offset, 2);
        assert!(e.message.contains("implicit"));
        assert!(parse_poly(r, &names(r), "z1z2").is_err());
    }

    #[test]
    fn errors_carry_offsets() {
        let r = qring(1);
        let n = names(r);
        assert_eq!(parse_poly(r, &n, "z + y").unwrap_err().offset, 4);
        assert_eq!(parse_poly(r, &n, "(z + 1").unwrap_err().offset, 6);
        assert_eq!(parse_poly(r, &n, "z ^ x").unwrap_err().offset, 4);
        assert_eq!(parse_poly(r, &n, "z $").unwrap_err().offset, 2);
        assert!(parse_poly(r, &n, "z^100000").is_err());
        assert!(parse_poly(r, &n, "").is_err());
    }

    #[test]
    fn deep_nesting_is_an_error_not_a_crash() {
        let r = qring(1);
        let text: String = "(".repeat(10_000) + "z" + &")".repeat(10_000);
        assert!(parse_poly(r, &names(r), &text).is_err());
        let text: String = "-".repeat(10_000) + "z";
        assert!(parse_poly(r, &names(r), &text).is_err());
    }

    #[test]
    fn rows_split_on_juxtaposition() {
        let r = qring(2);
        let n = names(r);
        let row = parse_row(&r, &n, "z1  z2").unwrap();
        assert_eq!(row.len(), 2);
        let row = parse_row(&r, &n, "z1^2 - z2 - 1").unwrap();
        assert_eq!(row.len(), 1);
        let row = parse_row(&r, &n, "z1, -z2, 3").unwrap();
        assert_eq!(row.len(), 3);
        assert!(parse_row(&r, &n, "z1,").is_err());
        assert!(parse_row(&r, &n, "z1 )").is_err());
    }
}
