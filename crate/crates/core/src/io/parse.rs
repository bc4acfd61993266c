//! Recursive-descent parser for the plain polynomial syntax.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := atom ['^' integer]
//! atom   := integer | 'sqrt2' | 't_' odd | "t'_" odd | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

use crate::polycore::{MPoly, Scalar, VarId};

/// Bounds that keep hostile input from blowing up time or memory.
pub const MAX_EXPONENT: u32 = 64;
pub const MAX_TOTAL_DEGREE: u32 = 64;
pub const MAX_TIME_INDEX: u32 = 999;
const MAX_PRODUCT_PAIRS: usize = 1 << 16;
const MAX_DEPTH: usize = 64;
const MAX_COEFF_BITS: u64 = 4096;
// a literal of this many digits can hold any coefficient below MAX_COEFF_BITS, so rendered output always reparses
const MAX_DIGITS: usize = 1240;

fn total_degree(p: &MPoly) -> u32 {
    p.terms().map(|(m, _)| m.total_degree()).max().unwrap_or(0)
}

fn coeff_bits(p: &MPoly) -> u64 {
    let bits = |q: &BigRational| q.numer().bits() + q.denom().bits();
    p.terms().map(|(_, c)| bits(c.rational_part()) + bits(c.radical_part())).max().unwrap_or(0)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{message} at byte {pos}")]
pub struct ParseError {
    pub pos: usize,
    pub message: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos, message: message.into() })
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

    fn starts_with(&mut self, s: &str) -> bool {
        self.skip_ws();
        self.src[self.pos..].starts_with(s.as_bytes())
    }

    fn digits(&mut self) -> Result<&'a str, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return self.err("expected a number");
        }
        if self.pos - start > MAX_DIGITS {
            return self.err("number too long");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits"))
    }

    fn small_int(&mut self) -> Result<u32, ParseError> {
        let d = self.digits()?;
        match d.parse::<u32>() {
            Ok(v) => Ok(v),
            Err(_) => self.err("integer out of range"),
        }
    }

    fn expr(&mut self) -> Result<MPoly, ParseError> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return self.err("expression nested too deeply");
        }
        let mut acc = if self.eat(b'-') {
            -self.term()?
        } else {
            self.eat(b'+');
            self.term()?
        };
        loop {
            if self.eat(b'+') {
                let rhs = self.term()?;
                acc = self.bounded(acc + rhs)?;
            } else if self.eat(b'-') {
                let rhs = self.term()?;
                acc = self.bounded(acc - rhs)?;
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> Result<MPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat(b'*') {
                let rhs = self.factor()?;
                acc = self.checked_mul(&acc, &rhs)?;
            } else if self.eat(b'/') {
                let at = self.pos;
                let d = self.factor()?;
                let inv = d.as_constant().and_then(|c| c.inverse());
                match inv {
                    Some(inv) => acc = self.bounded(acc.scale(&inv))?,
                    None => return Err(ParseError { pos: at, message: "division by a non-constant or zero".into() }),
                }
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MPoly, ParseError> {
        let base = self.atom()?;
        if self.eat(b'^') {
            let e = self.small_int()?;
            if e > MAX_EXPONENT {
                return self.err(format!("exponent above {MAX_EXPONENT}"));
            }
            let mut acc = MPoly::one();
            for _ in 0..e {
                acc = self.checked_mul(&acc, &base)?;
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn checked_mul(&self, a: &MPoly, b: &MPoly) -> Result<MPoly, ParseError> {
        if total_degree(a) + total_degree(b) > MAX_TOTAL_DEGREE {
            return self.err(format!("total degree above {MAX_TOTAL_DEGREE}"));
        }
        if coeff_bits(a) + coeff_bits(b) > MAX_COEFF_BITS {
            return self.err("coefficients too large");
        }
        if a.len().saturating_mul(b.len()) > MAX_PRODUCT_PAIRS {
            return self.err("product too large");
        }
        self.bounded(a * b)
    }

    fn bounded(&self, p: MPoly) -> Result<MPoly, ParseError> {
        if coeff_bits(&p) > MAX_COEFF_BITS {
            return self.err("coefficients too large");
        }
        Ok(p)
    }

    fn atom(&mut self) -> Result<MPoly, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return self.err("expected ')'");
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits()?;
                let n: BigInt = d.parse().expect("digits");
                self.bounded(MPoly::constant(Scalar::from_rational(BigRational::from_integer(n))))
            }
            _ if self.starts_with("sqrt2") => {
                self.pos += 5;
                Ok(MPoly::constant(Scalar::sqrt2()))
            }
            _ if self.starts_with("t'_") => {
                self.pos += 3;
                self.variable(true)
            }
            _ if self.starts_with("t_") => {
                self.pos += 2;
                self.variable(false)
            }
            Some(_) => self.err("unexpected character"),
            None => self.err("unexpected end of input"),
        }
    }

    fn variable(&mut self, primed: bool) -> Result<MPoly, ParseError> {
        let j = self.small_int()?;
        if j % 2 == 0 || j > MAX_TIME_INDEX {
            return self.err(format!("time index {j} must be odd and at most {MAX_TIME_INDEX}"));
        }
        let v = if primed { VarId::primed(j) } else { VarId::time(j) };
        Ok(MPoly::var(v))
    }
}

/// Parses a polynomial in `t_j`, `t'_j` with rational and `sqrt2` coefficients.
pub fn parse_poly(input: &str) -> Result<MPoly, ParseError> {
    let mut p = Parser { src: input.as_bytes(), pos: 0, depth: 0 };
    let out = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(out)
}

/// Parses a constant such as `-3/4`, `sqrt2/2` or `1/2 - 3*sqrt2`.
pub fn parse_scalar(input: &str) -> Result<Scalar, ParseError> {
    let p = parse_poly(input)?;
    p.as_constant().ok_or(ParseError { pos: 0, message: "expected a constant".into() })
}

impl FromStr for Scalar {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_scalar(s)
    }
}

impl FromStr for MPoly {
    type Err = ParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_poly(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(j: u32) -> MPoly {
        MPoly::var(VarId::time(j))
    }

    #[test]
    fn parses_examples() {
        let p = parse_poly("t_1^3/12 - t_3").unwrap();
        assert_eq!(p, t(1).pow(3).scale(&Scalar::ratio(1, 12)) - t(3));
        assert_eq!(parse_poly("1+t_1^3").unwrap(), MPoly::one() + t(1).pow(3));
        assert_eq!(parse_scalar("-3/4").unwrap(), Scalar::ratio(-3, 4));
        assert_eq!(parse_scalar("sqrt2/2").unwrap(), Scalar::inv_sqrt2());
        let q = parse_poly("(1/2 - 3*sqrt2)*t'_5").unwrap();
        assert_eq!(q, MPoly::var(VarId::primed(5)).scale(&(Scalar::ratio(1, 2) - Scalar::sqrt2().scale_int(3))));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("t_2").is_err());
        assert!(parse_poly("1/t_1").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("(t_1").is_err());
        assert!(parse_poly("t_1^1000").is_err());
        assert!(parse_poly("((t_1^64)^64)^64").is_err());
        assert!(parse_poly("((12345678901234567890^64)^64)^64").is_err());
        assert!(parse_poly("(1+t_1+t_3+t_5+t_7+t_9)^40").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("t_1 t_3").is_err());
        assert!(parse_scalar("t_1").is_err());
        let deep = "(".repeat(500) + "1" + &")".repeat(500);
        assert!(parse_poly(&deep).is_err());
    }

    #[test]
    fn large_coefficients_reparse() {
        // sums of distinct reciprocals grow the denominator without any product
        let sum: Vec<String> = (0..2000).map(|k| format!("1/{}", 2 * k + 1)).collect();
        assert!(parse_poly(&sum.join(" + ")).unwrap_err().message.contains("too large"));

        let big = format!("{}*t_1", "9".repeat(600));
        let p = parse_poly(&format!("({big})*({big})")).unwrap();
        assert_eq!(parse_poly(&crate::io::plain(&p)).unwrap(), p);
    }
}
