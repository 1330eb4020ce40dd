//! Recursive-descent parser for scalar literals.
//!
//! Grammar: integers, fractions `p/q`, the imaginary unit `i`, parameter
//! names, and `+ - * / ( ) ^` with `^` taking a nonnegative integer power.
//! Example inputs: `-(a)/((1-a)^2)`, `1/2*i`, `2*t^3 - 1`.

use super::gaussian::GaussianRational;
use super::poly::MultiPoly;
use super::scalar::Scalar;
use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::Zero;
use thiserror::Error;

#[derive(Debug, Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    allowed: Option<&'a [String]>,
}

/// Parses a scalar literal. When `allowed_params` is given, any identifier
/// outside the list (other than `i`) is rejected.
pub fn parse_scalar(text: &str, allowed_params: Option<&[String]>) -> Result<Scalar, ParseError> {
    let normalized = text.replace('\u{2212}', "-");
    let mut p = Parser {
        src: normalized.as_bytes(),
        pos: 0,
        allowed: allowed_params,
    };
    let value = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input"));
    }
    Ok(value)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> ParseError {
        ParseError {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && (self.src[self.pos] as char).is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                self.term()?.neg()
            }
            Some(b'+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(b'-') => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    acc = acc.mul(&self.factor()?);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let d = self.factor()?;
                    acc = acc
                        .div(&d)
                        .map_err(|_| self.err("division by zero in literal"))?;
                }
                // Juxtaposition such as `2 e3` is not part of this grammar;
                // multiplication must be explicit.
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, ParseError> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let n = self.uint()?;
            if n > 64 {
                return Err(self.err("exponent too large"));
            }
            return Ok(base.pow(n as u32));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(b'-') => {
                self.pos += 1;
                Ok(self.factor()?.neg())
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.bigint()?;
                Ok(Scalar::from_gaussian(GaussianRational::new(
                    BigRational::from_integer(n),
                    BigRational::zero(),
                )))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let name = self.ident();
                if name == "i" {
                    return Ok(Scalar::i());
                }
                if let Some(allowed) = self.allowed {
                    if !allowed.iter().any(|p| p == &name) {
                        return Err(self.err(&format!("undeclared parameter {name}")));
                    }
                }
                Ok(Scalar::from_poly(MultiPoly::var(&name)))
            }
            _ => Err(self.err("expected a number, parameter, 'i', or '('")),
        }
    }

    fn ident(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn bigint(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let txt = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        txt.parse::<BigInt>().map_err(|e| self.err(&e.to_string()))
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a nonnegative integer exponent"));
        }
        let txt = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        txt.parse::<u64>().map_err(|e| self.err(&e.to_string()))
    }
}
