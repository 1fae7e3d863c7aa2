//! Canonical text form of polynomials and a small parser for it.
//!
//! Vertices 0..=5 are written with the letters `x y z u v t`, followed by the
//! slot number (`x1`, `y2`). Other vertices use `v{vertex}_{slot}`. Terms are
//! printed leading term first with explicit rational coefficients, e.g.
//! `x1^2 - 2*x1*y1 + 1/2*y1^2`.

use num::{BigInt, One, Signed, Zero};
use thiserror::Error;

use super::{Monomial, Poly, Rational, VarId};

const LETTERS: [char; 6] = ['x', 'y', 'z', 'u', 'v', 't'];

pub fn variable_name(v: VarId) -> String {
    match LETTERS.get(v.vertex) {
        Some(c) => format!("{c}{}", v.slot),
        None => format!("v{}_{}", v.vertex, v.slot),
    }
}

fn render_monomial(m: &Monomial) -> String {
    m.iter()
        .map(|(v, e)| {
            if e == 1 {
                variable_name(v)
            } else {
                format!("{}^{e}", variable_name(v))
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

pub(super) fn render(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let negative = c.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let a = c.abs();
        if m.is_one() {
            out.push_str(&a.to_string());
        } else if a.is_one() {
            out.push_str(&render_monomial(m));
        } else {
            out.push_str(&format!("{a}*{}", render_monomial(m)));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("cannot parse polynomial at byte {position}: {message}")]
pub struct ParsePolyError {
    pub position: usize,
    pub message: String,
}

/// Parses the canonical text form. Also accepts parentheses, implicit
/// multiplication (`2x1y1`) and a bare letter for slot 1 (`x` = `x1`).
pub fn parse_poly(input: &str) -> Result<Poly, ParsePolyError> {
    let mut p = Parser {
        src: input.as_bytes(),
        pos: 0,
    };
    let out = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(out)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> ParsePolyError {
        ParsePolyError {
            position: self.pos,
            message: message.to_string(),
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

    fn expr(&mut self) -> Result<Poly, ParsePolyError> {
        let mut negate = false;
        match self.peek() {
            Some(b'-') => {
                negate = true;
                self.pos += 1;
            }
            Some(b'+') => self.pos += 1,
            _ => {}
        }
        let mut acc = self.term()?.signed(negate);
        while let Some(op @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let t = self.term()?;
            if op == b'+' {
                acc += &t;
            } else {
                acc -= &t;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly, ParsePolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = &acc * &self.factor()?;
                }
                Some(c) if c == b'(' || c.is_ascii_alphanumeric() => {
                    acc = &acc * &self.factor()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly, ParsePolyError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let e: u32 = e
                .try_into()
                .map_err(|_| self.error("exponent out of range"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<BigInt, ParsePolyError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        s.parse().map_err(|_| self.error("bad integer"))
    }

    fn small(&mut self) -> Result<Option<usize>, ParsePolyError> {
        if self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            let n = self.integer()?;
            let n: usize = n.try_into().map_err(|_| self.error("index out of range"))?;
            Ok(Some(n))
        } else {
            Ok(None)
        }
    }

    fn atom(&mut self) -> Result<Poly, ParsePolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.integer()?;
                let save = self.pos;
                if self.peek() == Some(b'/') {
                    self.pos += 1;
                    self.skip_ws();
                    let den = self.integer()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    return Ok(Poly::constant(Rational::new(num, den)));
                }
                self.pos = save;
                Ok(Poly::constant(Rational::from_integer(num)))
            }
            Some(b'v') if self.src.get(self.pos + 1).is_some_and(u8::is_ascii_digit) => {
                self.pos += 1;
                let vertex = self.small()?.expect("digit checked");
                if self.src.get(self.pos) != Some(&b'_') {
                    return Err(self.error("expected '_' in v<vertex>_<slot>"));
                }
                self.pos += 1;
                let slot = self.small()?.ok_or_else(|| self.error("expected slot"))?;
                self.var(vertex, slot)
            }
            Some(c) => {
                let Some(vertex) = LETTERS.iter().position(|&l| l as u8 == c) else {
                    return Err(self.error("unexpected character"));
                };
                self.pos += 1;
                let slot = self.small()?.unwrap_or(1);
                self.var(vertex, slot)
            }
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn var(&self, vertex: usize, slot: usize) -> Result<Poly, ParsePolyError> {
        if slot == 0 {
            return Err(self.error("slots start at 1"));
        }
        Ok(Poly::var(VarId::new(vertex, slot)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactpoly::{rat, ratio};

    #[test]
    fn renders_leading_term_first() {
        let p = parse_poly("(y1 - x1)^2").unwrap();
        assert_eq!(p.to_string(), "x1^2 - 2*x1*y1 + y1^2");
        assert_eq!(Poly::zero().to_string(), "0");
        assert_eq!(Poly::constant(ratio(-3, 2)).to_string(), "-3/2");
        assert_eq!(Poly::x(7, 2).to_string(), "v7_2");
    }

    #[test]
    fn parses_powers_and_rationals() {
        assert_eq!(parse_poly("x^0").unwrap(), Poly::one());
        assert_eq!(parse_poly("x^1").unwrap(), Poly::x(0, 1));
        let p = parse_poly("1/2*x1^2 - 3 y2 + v7_1").unwrap();
        let expect = Poly::x(0, 1).pow(2).scale(&ratio(1, 2)) - Poly::x(1, 2).scale(&rat(3))
            + Poly::x(7, 1);
        assert_eq!(p, expect);
    }

    #[test]
    fn parse_roundtrips_rendering() {
        let p = parse_poly("-2/3*x1^3*y2 + 5*x2 - 7").unwrap();
        assert_eq!(parse_poly(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn reports_error_position() {
        let err = parse_poly("x1 + * y1").unwrap_err();
        assert_eq!(err.position, 5);
        assert!(parse_poly("x0").is_err());
        assert!(parse_poly("(x1").is_err());
        assert!(parse_poly("1/0").is_err());
    }
}
