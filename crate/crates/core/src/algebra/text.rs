//! Parser for the canonical text form of [`PhasePoly`] and [`ParamField`].
//!
//! Accepts integer literals, parameter symbols, the phase-space generators
//! `x1 x2 p1 p2 u`, `+ - * / ^` and parentheses. Division and negative
//! powers are only allowed on parameter-valued subexpressions.

use super::mpoly::symbol_index;
use super::phase::PhasePoly;
use super::ratfun::ParamField;
use crate::error::{Error, Result};
use num_bigint::BigInt;

pub fn parse_phase_poly(text: &str) -> Result<PhasePoly> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let v = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

pub fn parse_param_field(text: &str) -> Result<ParamField> {
    parse_phase_poly(text)?
        .as_constant()
        .ok_or_else(|| Error::Parse {
            pos: 0,
            message: "expression depends on phase-space variables".into(),
        })
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Parse {
            pos: self.pos,
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

    fn expr(&mut self) -> Result<PhasePoly> {
        let mut acc = self.term()?;
        while let Some(c) = self.peek() {
            match c {
                b'+' => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                b'-' => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<PhasePoly> {
        let mut acc = self.unary()?;
        while let Some(c) = self.peek() {
            match c {
                b'*' => {
                    self.pos += 1;
                    acc = acc.mul(&self.unary()?);
                }
                b'/' => {
                    self.pos += 1;
                    let at = self.pos;
                    let rhs = self.unary()?;
                    let k = rhs.as_constant().ok_or_else(|| Error::Parse {
                        pos: at,
                        message: "division by a phase-space expression".into(),
                    })?;
                    let inv = k.inv().map_err(|_| Error::Parse {
                        pos: at,
                        message: "division by zero".into(),
                    })?;
                    acc = acc.scale(&inv);
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<PhasePoly> {
        if self.peek() == Some(b'-') {
            self.pos += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<PhasePoly> {
        let base = self.atom()?;
        if self.peek() != Some(b'^') {
            return Ok(base);
        }
        self.pos += 1;
        let negative = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let at = self.pos;
        let n: u32 = self
            .digits()
            .parse()
            .map_err(|_| Error::Parse { pos: at, message: "expected exponent".into() })?;
        if negative {
            let k = base.as_constant().ok_or_else(|| Error::Parse {
                pos: at,
                message: "negative power of a phase-space expression".into(),
            })?;
            let v = k.pow(-(n as i32)).map_err(|_| Error::Parse {
                pos: at,
                message: "negative power of zero".into(),
            })?;
            Ok(PhasePoly::constant(v))
        } else {
            Ok(base.pow(n))
        }
    }

    fn digits(&mut self) -> &str {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.src[start..self.pos]).unwrap()
    }

    fn atom(&mut self) -> Result<PhasePoly> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected `)`"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let s = self.digits();
                let n: BigInt = s.parse().expect("digits");
                Ok(PhasePoly::constant(ParamField::from(n)))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                if let Some(g) = PhasePoly::generator(name) {
                    Ok(g)
                } else if symbol_index(name).is_some() {
                    Ok(PhasePoly::constant(ParamField::sym(name)))
                } else {
                    Err(Error::Parse {
                        pos: start,
                        message: format!("unknown symbol `{name}`"),
                    })
                }
            }
            _ => Err(self.error("expected a number, symbol or `(`")),
        }
    }
}
