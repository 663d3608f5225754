//! Text syntax for integer polynomials: `3*z0^2*z1 - z2^3`, `z2^2*z0 - z1^2*(z1+z0)`.
//!
//! Variables are `z0, z1, ...`; coefficients are integers. Parentheses and
//! non-negative integer powers of any factor are accepted.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::{Field, Rationals};
use super::poly::MultiPoly;
use crate::error::{Error, Result};

enum Tok {
    Num(BigInt),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
            }
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                out.push((i, Tok::Star));
                i += 1;
            }
            b'^' => {
                out.push((i, Tok::Caret));
                i += 1;
            }
            b'(' => {
                out.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                out.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Num(n)));
            }
            b'z' => {
                let start = i;
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(Error::Parse { pos: start, msg: "expected variable index after 'z'".into() });
                }
                let idx = s[ds..i]
                    .parse()
                    .map_err(|_| Error::Parse { pos: start, msg: "variable index too large".into() })?;
                out.push((start, Tok::Var(idx)));
            }
            _ => {
                return Err(Error::Parse { pos: i, msg: format!("unexpected character {:?}", c as char) });
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    pos: usize,
    nvars: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.here(), msg: msg.to_string() })
    }

    fn expr(&mut self) -> Result<MultiPoly<Rationals>> {
        let q = Rationals;
        let mut acc = MultiPoly::zero(&q, self.nvars);
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<MultiPoly<Rationals>> {
        let mut acc = self.power()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            acc = acc.mul(&self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<MultiPoly<Rationals>> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.toks.get(self.pos) {
                Some((_, Tok::Num(n))) => {
                    let e: u32 = n.try_into().map_err(|_| Error::Parse { pos: self.here(), msg: "exponent too large".into() })?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return self.err("expected integer exponent"),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly<Rationals>> {
        let q = Rationals;
        match self.toks.get(self.pos) {
            Some((_, Tok::Num(n))) => {
                self.pos += 1;
                Ok(MultiPoly::constant(&q, self.nvars, BigRational::from_integer(n.clone())))
            }
            Some((p, Tok::Var(i))) => {
                if *i >= self.nvars {
                    return Err(Error::Parse { pos: *p, msg: format!("variable z{i} out of range (0..{})", self.nvars) });
                }
                self.pos += 1;
                Ok(MultiPoly::var(&q, self.nvars, *i))
            }
            Some((_, Tok::LParen)) => {
                self.pos += 1;
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some((_, Tok::Minus)) => {
                self.pos += 1;
                Ok(self.atom()?.neg())
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

/// Largest variable index mentioned in `s`, plus one.
pub fn variables_used(s: &str) -> Result<usize> {
    Ok(tokenize(s)?
        .iter()
        .filter_map(|(_, t)| if let Tok::Var(i) = t { Some(i + 1) } else { None })
        .max()
        .unwrap_or(0))
}

/// Parses an integer polynomial over `Q`. With `nvars = None` the variable
/// count is inferred from the largest index used.
pub fn parse_poly(s: &str, nvars: Option<usize>) -> Result<MultiPoly<Rationals>> {
    let toks = tokenize(s)?;
    if toks.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty polynomial".into() });
    }
    let nvars = match nvars {
        Some(n) => n,
        None => variables_used(s)?,
    };
    let mut p = Parser { toks: &toks, pos: 0, nvars, end: s.len() };
    let out = p.expr()?;
    if p.pos != toks.len() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses and reduces into `field` in one step.
pub fn parse_poly_in<F: Field>(field: &F, s: &str, nvars: usize) -> Result<MultiPoly<F>> {
    parse_poly(s, Some(nvars))?.reduce(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_terms_and_signs() {
        let f = parse_poly("3*z0^2*z1 - z2^3", None).unwrap();
        assert_eq!(f.nvars(), 3);
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&[2, 1, 0]), BigRational::from_integer(3.into()));
        assert_eq!(f.coefficient(&[0, 0, 3]), BigRational::from_integer((-1).into()));
    }

    #[test]
    fn parses_parentheses_and_powers() {
        let a = parse_poly("z2^2*z0 - z1^2*(z1+z0)", Some(3)).unwrap();
        let b = parse_poly("z0*z2^2 - z1^3 - z0*z1^2", Some(3)).unwrap();
        assert_eq!(a, b);
        let c = parse_poly("(z0 - z1)^2", Some(2)).unwrap();
        let d = parse_poly("z0^2 - 2*z0*z1 + z1^2", Some(2)).unwrap();
        assert_eq!(c, d);
        assert!(parse_poly("-z0 + -z1 - -z2", Some(3)).is_ok());
    }

    #[test]
    fn reports_errors() {
        assert!(matches!(parse_poly("z0 +", Some(2)), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("z5", Some(2)), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(parse_poly("x0", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("(z0", None), Err(Error::Parse { .. })));
        assert!(matches!(parse_poly("", None), Err(Error::Parse { .. })));
    }
}
