//! Exact literal grammar shared by every file format and the command line.
//!
//! ```text
//! rational := digits [ '/' digits ]
//! term     := rational [ '*i' ] [ '*t' ] | 'i' [ '*t' ] | 't' | '(' gaussian ')' '*t'
//! scalar   := [sign] term { sign term }
//! ```
//!
//! No whitespace is allowed. Canonical output writes the four rational
//! coordinates as `re`, `im*i`, `tre*t`, `tim*i*t`, dropping zero terms.

use alloc::borrow::ToOwned;
use alloc::string::String;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{ForgeError, Result};
use crate::gaussian::GaussianRational;
use crate::rational::Rational;
use crate::scalar::Scalar;

pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(&Rational, &str)]) -> fmt::Result {
    let mut first = true;
    for (q, suffix) in terms {
        if q.is_zero() {
            continue;
        }
        if !first && !q.is_negative() {
            f.write_str("+")?;
        }
        write!(f, "{q}{suffix}")?;
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        Self { src, bytes: src.as_bytes(), pos: 0 }
    }

    fn fail<T>(&self, reason: &str) -> Result<T> {
        Err(ForgeError::Parse { literal: self.src.to_owned(), reason: alloc::format!("{reason} at byte {}", self.pos) })
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.fail("expected digits");
        }
        let text = &self.src[start..self.pos];
        match BigInt::parse_bytes(text.as_bytes(), 10) {
            Some(v) => Ok(v),
            None => self.fail("bad integer"),
        }
    }

    fn rational(&mut self) -> Result<Rational> {
        let num = self.digits()?;
        if self.eat(b'/') {
            let den = self.digits()?;
            if den.is_zero() {
                return self.fail("zero denominator");
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn star(&mut self, unit: u8) -> bool {
        if self.bytes.get(self.pos) == Some(&b'*') && self.bytes.get(self.pos + 1) == Some(&unit) {
            self.pos += 2;
            true
        } else {
            false
        }
    }

    fn term(&mut self, allow_tau: bool) -> Result<Scalar> {
        let value = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.sum(false, Some(b')'))?;
                if !self.eat(b')') {
                    return self.fail("expected `)`");
                }
                if !self.star(b't') {
                    return self.fail("parenthesised group must be followed by `*t`");
                }
                return self.tau_allowed(allow_tau, Scalar::new(GaussianRational::zero(), inner.base));
            }
            Some(b'0'..=b'9') => {
                let q = self.rational()?;
                let mut g = GaussianRational::from_rational(q);
                if self.star(b'i') {
                    g = &g * &GaussianRational::i();
                }
                if self.star(b't') {
                    return self.tau_allowed(allow_tau, Scalar::new(GaussianRational::zero(), g));
                }
                Scalar::from(g)
            }
            Some(b'i') => {
                self.pos += 1;
                if self.star(b't') {
                    return self.tau_allowed(allow_tau, Scalar::new(GaussianRational::zero(), GaussianRational::i()));
                }
                Scalar::from(GaussianRational::i())
            }
            Some(b't') => {
                self.pos += 1;
                return self.tau_allowed(allow_tau, Scalar::tau_unit());
            }
            _ => return self.fail("expected a term"),
        };
        Ok(value)
    }

    fn tau_allowed(&self, allow_tau: bool, v: Scalar) -> Result<Scalar> {
        if allow_tau {
            Ok(v)
        } else {
            self.fail("`t` term not allowed here")
        }
    }

    fn sum(&mut self, allow_tau: bool, stop: Option<u8>) -> Result<Scalar> {
        let mut total = Scalar::zero();
        let mut first = true;
        loop {
            let negative = if self.eat(b'-') {
                true
            } else if self.eat(b'+') || first {
                false
            } else {
                return self.fail("expected `+` or `-`");
            };
            let t = self.term(allow_tau)?;
            total = if negative { total - t } else { total + t };
            first = false;
            match self.peek() {
                None => break,
                Some(c) if Some(c) == stop => break,
                _ => {}
            }
        }
        Ok(total)
    }
}

pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let mut p = Parser::new(s);
    if s.is_empty() {
        return p.fail("empty literal");
    }
    let v = p.sum(true, None)?;
    if p.pos != s.len() {
        return p.fail("trailing input");
    }
    Ok(v)
}

pub fn parse_gaussian(s: &str) -> Result<GaussianRational> {
    let mut p = Parser::new(s);
    if s.is_empty() {
        return p.fail("empty literal");
    }
    let v = p.sum(false, None)?;
    if p.pos != s.len() {
        return p.fail("trailing input");
    }
    Ok(v.base)
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let g = parse_gaussian(s)?;
    if !g.im.is_zero() {
        return Err(ForgeError::Parse { literal: s.to_owned(), reason: String::from("expected a real rational") });
    }
    Ok(g.re)
}
