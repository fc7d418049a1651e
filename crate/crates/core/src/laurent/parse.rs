//! Recursive-descent parser for polynomial expressions such as
//! `(q^2*t-1)^2*(q^3*t+q)` or `-q^5*t^2 - q*t`.
//!
//! Grammar:
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := unary (('*'|'/') unary)*
//! unary  := '-' unary | power
//! power  := atom ['^' ['-'] integer]
//! atom   := integer | symbol | '(' expr ')'
//! ```
//! Division is exact Laurent division and fails if no quotient exists.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::terms::Terms;
use super::LaurentError;

pub(crate) struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    /// Symbols accepted, in slot order (slot 0 = first exponent).
    symbols: &'a [char],
}

type P = Terms<(i32, i32)>;

impl<'a> Parser<'a> {
    pub fn new(src: &'a str, symbols: &'a [char]) -> Self {
        Self {
            src: src.as_bytes(),
            pos: 0,
            symbols,
        }
    }

    pub fn parse(mut self) -> Result<P, LaurentError> {
        let p = self.expr()?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("unexpected trailing input"));
        }
        Ok(p)
    }

    fn err(&self, msg: &str) -> LaurentError {
        LaurentError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
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

    fn eat(&mut self, ch: u8) -> bool {
        if self.peek() == Some(ch) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<P, LaurentError> {
        let mut acc = if self.eat(b'-') {
            self.term()?.neg()
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                acc = acc.add(&self.term()?);
            } else if self.eat(b'-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<P, LaurentError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat(b'*') {
                acc = acc.mul(&self.unary()?);
            } else if self.eat(b'/') {
                let d = self.unary()?;
                acc = acc.exact_div(&d)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<P, LaurentError> {
        if self.eat(b'-') {
            Ok(self.unary()?.neg())
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<P, LaurentError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let neg = self.eat(b'-');
            let n = self.integer()?;
            let n: i32 = n
                .try_into()
                .map_err(|_| self.err("exponent out of range"))?;
            base.pow(if neg { -n } else { n })
        } else {
            Ok(base)
        }
    }

    fn integer(&mut self) -> Result<BigInt, LaurentError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<P, LaurentError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(Terms::monomial((0, 0), BigRational::from_integer(n)))
            }
            Some(c) => {
                let slot = self
                    .symbols
                    .iter()
                    .position(|s| *s as u32 == c as u32)
                    .ok_or_else(|| self.err(&format!("unknown symbol '{}'", c as char)))?;
                self.pos += 1;
                let exp = if slot == 0 { (1, 0) } else { (0, 1) };
                Ok(Terms::monomial(exp, BigRational::one()))
            }
            None => Err(self.err("unexpected end of input")),
        }
    }
}
