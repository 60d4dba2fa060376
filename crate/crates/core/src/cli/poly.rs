//! Recursive-descent parser for one-variable polynomials with rational
//! coefficients such as `x^2`, `2x^3-x^2` or `1/2*x + 3`. No parentheses.
//!
//! ```text
//! poly  := sign? term (('+' | '-') term)*
//! term  := coeff ('*'? power)? | power
//! power := 'x' ('^' int)?
//! coeff := int ('/' int)?
//! ```

use crate::exactq::{int, Rational};
use crate::{Error, Result};

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<u8> {
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at position {} in polynomial", self.pos))
    }

    fn integer(&mut self) -> Result<u64> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number too large"))
    }

    fn coeff(&mut self) -> Result<Rational> {
        let n = self.integer()?;
        if self.eat(b'/') {
            let d = self.integer()?;
            if d == 0 {
                return Err(self.err("zero denominator"));
            }
            Ok(Rational::new(n.into(), d.into()))
        } else {
            Ok(Rational::from_integer(n.into()))
        }
    }

    fn power(&mut self) -> Result<usize> {
        if !self.eat(b'x') {
            return Err(self.err("expected 'x'"));
        }
        if self.eat(b'^') {
            let e = self.integer()?;
            if e > 64 {
                return Err(self.err("exponent above 64"));
            }
            Ok(e as usize)
        } else {
            Ok(1)
        }
    }

    fn term(&mut self) -> Result<(Rational, usize)> {
        match self.peek() {
            Some(b'x') => Ok((int(1), self.power()?)),
            Some(b'0'..=b'9') => {
                let c = self.coeff()?;
                let star = self.eat(b'*');
                if star || self.peek() == Some(b'x') {
                    Ok((c, self.power()?))
                } else {
                    Ok((c, 0))
                }
            }
            _ => Err(self.err("expected a term")),
        }
    }
}

/// Coefficients `[c₀, c₁, …]` of the polynomial written in `src`.
pub fn parse_poly(src: &str) -> Result<Vec<Rational>> {
    let cleaned: String = src.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser { s: cleaned.as_bytes(), pos: 0 };
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut negative = p.eat(b'-');
    if !negative {
        p.eat(b'+');
    }
    loop {
        let (c, e) = p.term()?;
        if coeffs.len() <= e {
            coeffs.resize(e + 1, int(0));
        }
        coeffs[e] += if negative { -c } else { c };
        match p.peek() {
            None => break,
            Some(b'+') => negative = false,
            Some(b'-') => negative = true,
            Some(_) => return Err(p.err("unexpected character")),
        }
        p.pos += 1;
    }
    Ok(coeffs)
}
