//! Expression trees over one variable `x`, evaluated exactly.
//!
//! Grammar (usual precedence, left-associative):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | atom
//! atom  := number | 'x' | '(' expr ')'
//!        | abs(expr) | sign(expr) | floor(expr) | recip(expr)
//!        | min(expr, expr) | max(expr, expr)
//! ```
//!
//! `a / b` is sugar for `a * recip(b)`. `recip` and `sign` are undefined at 0;
//! evaluation there yields `None` and the point is outside the domain.
//! Numbers are integers, decimals, or `p/q` written without spaces.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{fmt_rational, parse_rational, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Expr {
    Const(Scalar),
    X,
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Abs(Box<Expr>),
    Sign(Box<Expr>),
    Floor(Box<Expr>),
    Recip(Box<Expr>),
    Min(Box<Expr>, Box<Expr>),
    Max(Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn constant(v: Scalar) -> Expr {
        Expr::Const(v)
    }

    pub fn plus(a: Expr, b: Expr) -> Expr {
        Expr::Add(Box::new(a), Box::new(b))
    }

    pub fn minus(a: Expr, b: Expr) -> Expr {
        Expr::Sub(Box::new(a), Box::new(b))
    }

    pub fn times(a: Expr, b: Expr) -> Expr {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn max(a: Expr, b: Expr) -> Expr {
        Expr::Max(Box::new(a), Box::new(b))
    }

    pub fn eval(&self, x: &Scalar) -> Option<Scalar> {
        Some(match self {
            Expr::Const(c) => c.clone(),
            Expr::X => x.clone(),
            Expr::Neg(e) => -e.eval(x)?,
            Expr::Add(a, b) => a.eval(x)? + b.eval(x)?,
            Expr::Sub(a, b) => a.eval(x)? - b.eval(x)?,
            Expr::Mul(a, b) => a.eval(x)? * b.eval(x)?,
            Expr::Abs(e) => e.eval(x)?.abs(),
            Expr::Sign(e) => {
                let v = e.eval(x)?;
                if v.is_zero() {
                    return None;
                }
                v.signum()
            }
            Expr::Floor(e) => e.eval(x)?.floor(),
            Expr::Recip(e) => {
                let v = e.eval(x)?;
                if v.is_zero() {
                    return None;
                }
                v.recip()
            }
            Expr::Min(a, b) => a.eval(x)?.min(b.eval(x)?),
            Expr::Max(a, b) => a.eval(x)?.max(b.eval(x)?),
        })
    }

    /// Replaces every `x` with `inner`, giving `self ∘ inner`.
    pub fn substitute(&self, inner: &Expr) -> Expr {
        let s = |e: &Expr| Box::new(e.substitute(inner));
        match self {
            Expr::Const(c) => Expr::Const(c.clone()),
            Expr::X => inner.clone(),
            Expr::Neg(e) => Expr::Neg(s(e)),
            Expr::Add(a, b) => Expr::Add(s(a), s(b)),
            Expr::Sub(a, b) => Expr::Sub(s(a), s(b)),
            Expr::Mul(a, b) => Expr::Mul(s(a), s(b)),
            Expr::Abs(e) => Expr::Abs(s(e)),
            Expr::Sign(e) => Expr::Sign(s(e)),
            Expr::Floor(e) => Expr::Floor(s(e)),
            Expr::Recip(e) => Expr::Recip(s(e)),
            Expr::Min(a, b) => Expr::Min(s(a), s(b)),
            Expr::Max(a, b) => Expr::Max(s(a), s(b)),
        }
    }

    pub fn parse(src: &str) -> Result<Expr> {
        let mut p = Parser { src: src.as_bytes(), pos: 0 };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != p.src.len() {
            return Err(p.error("trailing input"));
        }
        Ok(e)
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) => 2,
            Expr::Neg(_) => 3,
            Expr::Const(c) if c.is_negative() => 3,
            _ => 4,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Parenthesize a child whose precedence is below `min`.
        fn child(f: &mut fmt::Formatter<'_>, e: &Expr, min: u8) -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        }
        match self {
            Expr::Const(c) if c.is_integer() => write!(f, "{}", c.numer()),
            Expr::Const(c) => f.write_str(&fmt_rational(c)),
            Expr::X => f.write_str("x"),
            Expr::Neg(e) => {
                f.write_str("-")?;
                child(f, e, 4)
            }
            Expr::Add(a, b) => {
                child(f, a, 1)?;
                f.write_str(" + ")?;
                child(f, b, 2)
            }
            Expr::Sub(a, b) => {
                child(f, a, 1)?;
                f.write_str(" - ")?;
                child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                child(f, a, 2)?;
                f.write_str(" * ")?;
                child(f, b, 3)
            }
            Expr::Abs(e) => write!(f, "abs({e})"),
            Expr::Sign(e) => write!(f, "sign({e})"),
            Expr::Floor(e) => write!(f, "floor({e})"),
            Expr::Recip(e) => write!(f, "recip({e})"),
            Expr::Min(a, b) => write!(f, "min({a}, {b})"),
            Expr::Max(a, b) => write!(f, "max({a}, {b})"),
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, reason: &str) -> Error {
        Error::invalid(format!("expression: {reason} at column {}", self.pos + 1))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", c as char)))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(b'+') {
                lhs = Expr::plus(lhs, self.term()?);
            } else if self.eat(b'-') {
                lhs = Expr::minus(lhs, self.term()?);
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(b'*') {
                lhs = Expr::times(lhs, self.unary()?);
            } else if self.eat(b'/') {
                lhs = Expr::times(lhs, Expr::Recip(Box::new(self.unary()?)));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            return Ok(match self.unary()? {
                Expr::Const(c) => Expr::Const(-c),
                e => Expr::Neg(Box::new(e)),
            });
        }
        self.atom()
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(b')')?;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() || c == b'.' => self.number(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                if name == "x" {
                    return Ok(Expr::X);
                }
                self.expect(b'(')?;
                let a = Box::new(self.expr()?);
                let e = match name {
                    "abs" => Expr::Abs(a),
                    "sign" => Expr::Sign(a),
                    "floor" => Expr::Floor(a),
                    "recip" => Expr::Recip(a),
                    "min" | "max" => {
                        self.expect(b',')?;
                        let b = Box::new(self.expr()?);
                        if name == "min" {
                            Expr::Min(a, b)
                        } else {
                            Expr::Max(a, b)
                        }
                    }
                    _ => {
                        self.pos = start;
                        return Err(self.error(&format!("unknown function `{name}`")));
                    }
                };
                self.expect(b')')?;
                Ok(e)
            }
            Some(_) => Err(self.error("unexpected character")),
            None => Err(self.error("unexpected end of expression")),
        }
    }

    /// Digits with optional `.digits`, or `digits/digits` with no spaces.
    fn number(&mut self) -> Result<Expr> {
        let start = self.pos;
        let digits = |p: &mut Self| {
            while p.pos < p.src.len() && p.src[p.pos].is_ascii_digit() {
                p.pos += 1;
            }
        };
        digits(self);
        let fraction = match self.src.get(self.pos) {
            Some(b'.') => true,
            Some(b'/') => self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit),
            _ => false,
        };
        if fraction {
            self.pos += 1;
            digits(self);
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        parse_rational(text).map(Expr::Const).map_err(|_| self.error(&format!("bad number `{text}`")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    fn ev(src: &str, x: Scalar) -> Option<Scalar> {
        Expr::parse(src).unwrap().eval(&x)
    }

    #[test]
    fn evaluates_grammar() {
        assert_eq!(ev("x / abs(x)", int(-3)), Some(int(-1)));
        assert_eq!(ev("x / abs(x)", int(0)), None);
        assert_eq!(ev("sign(x)", int(0)), None);
        assert_eq!(ev("sign(x)", rat(1, 100)), Some(int(1)));
        assert_eq!(ev("floor(x)", rat(-1, 10)), Some(int(-1)));
        assert_eq!(ev("floor(x + 5)", int(-2)), Some(int(3)));
        assert_eq!(ev("2 - 3 - 4", int(0)), Some(int(-5)));
        assert_eq!(ev("1/2 * x", int(3)), Some(rat(3, 2)));
        assert_eq!(ev("-x*-2", int(3)), Some(int(6)));
        assert_eq!(ev("min(x, 0.5) + max(x, -1)", int(2)), Some(rat(5, 2)));
        assert_eq!(ev("x - abs(x - 3)", int(2)), Some(int(1)));
        assert_eq!(ev("recip(x - 1)", int(1)), None);
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "x +", "foo(x)", "min(x)", "(x", "x x", "2..3", "sign x"] {
            assert!(Expr::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn render_reparses_identically() {
        for src in ["x / abs(x)", "2 - (3 - x)", "-(x + 1) * 2", "x - -3", "1/2 * floor(x) - max(x, 2)", "-x"] {
            let e = Expr::parse(src).unwrap();
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e, "{src} -> {e}");
        }
    }

    #[test]
    fn substitution_composes() {
        let f = Expr::parse("floor(x)").unwrap();
        let g = Expr::parse("x + 5").unwrap();
        let h = f.substitute(&g);
        assert_eq!(h.eval(&int(-2)), Some(int(3)));
        assert_eq!(h.to_string(), "floor(x + 5)");
    }
}
