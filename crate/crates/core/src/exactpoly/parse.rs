//! Text grammar:
//!
//! ```text
//! poly   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := INT ['/' INT] | VAR ['^' INT]
//! ```
//!
//! Whitespace is insignificant. `0` parses to the zero polynomial.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Monomial, Poly, PolyError, Rational, RingRef};

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ring: &'a RingRef,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err(&self, msg: impl Into<String>) -> PolyError {
        PolyError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("digits parse"))
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).expect("ascii ident")
    }

    fn factor(&mut self, coef: &mut Rational, mono: &mut Monomial) -> Result<(), PolyError> {
        match self.peek() {
            Some(b'0'..=b'9') => {
                let num = self.integer()?;
                let den = if self.peek() == Some(b'/') {
                    self.pos += 1;
                    let at = {
                        self.skip_ws();
                        self.pos
                    };
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(PolyError::DivisionByZero { pos: at });
                    }
                    den
                } else {
                    BigInt::one()
                };
                *coef *= Rational::new(num, den);
                Ok(())
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let name = self.ident();
                let index = self.ring.require_index(name)?;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let e = self.integer()?;
                    u32::try_from(e).map_err(|_| PolyError::ExponentOverflow)?
                } else {
                    1
                };
                let total = mono.exp(index) + exp;
                if total > u16::MAX as u32 {
                    return Err(PolyError::ExponentOverflow);
                }
                *mono = mono.with_exp(index, total);
                Ok(())
            }
            Some(_) => Err(self.err("expected number or variable")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn term(&mut self) -> Result<(Monomial, Rational), PolyError> {
        let mut coef = Rational::one();
        let mut mono = Monomial::ONE;
        self.factor(&mut coef, &mut mono)?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            self.factor(&mut coef, &mut mono)?;
        }
        Ok((mono, coef))
    }

    fn poly(&mut self) -> Result<Poly, PolyError> {
        let mut terms = Vec::new();
        let mut negate = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        loop {
            let (m, c) = self.term()?;
            terms.push((m, if negate { -c } else { c }));
            match self.peek() {
                Some(b'+') => negate = false,
                Some(b'-') => negate = true,
                None => break,
                Some(_) => return Err(self.err("expected `+`, `-`, `*` or end of input")),
            }
            self.pos += 1;
        }
        Ok(Poly::from_terms(self.ring, terms))
    }
}

/// Parses `text` as a polynomial of `ring`.
pub fn parse_poly(text: &str, ring: &RingRef) -> Result<Poly, PolyError> {
    let mut p = Parser {
        src: text.as_bytes(),
        pos: 0,
        ring,
    };
    if p.peek().is_none() {
        return Err(p.err("empty input"));
    }
    p.poly()
}
