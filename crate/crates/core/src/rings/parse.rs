//! Parser for the canonical ASCII ring format, e.g. `1 - A + A^3` or `(2 + A^-6)/15`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::cyclotomic::reduce;
use super::fraction::CycloFraction;
use super::laurent::LaurentPoly;
use crate::error::{Error, Result};

struct Cursor<'a> {
    s: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Self { s: s.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
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

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {}", self.pos))
    }

    fn digits(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| {
            std::str::from_utf8(&self.s[start..self.pos])
                .unwrap()
                .parse()
                .unwrap()
        })
    }

    fn signed_int(&mut self) -> Result<i64> {
        let neg = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let d = self.digits().ok_or_else(|| self.err("expected integer"))?;
        let v: i64 = i64::try_from(d).map_err(|_| self.err("exponent too large"))?;
        Ok(if neg { -v } else { v })
    }

    fn exponent(&mut self) -> Result<i64> {
        if self.eat(b'(') {
            let v = self.signed_int()?;
            self.expect(b')')?;
            Ok(v)
        } else if self.eat(b'{') {
            let v = self.signed_int()?;
            self.expect(b'}')?;
            Ok(v)
        } else {
            self.signed_int()
        }
    }

    fn term(&mut self) -> Result<(BigInt, i64)> {
        let coeff = self.digits();
        let has_star = coeff.is_some() && self.eat(b'*');
        if self.eat(b'A') || self.eat(b'a') {
            let exp = if self.eat(b'^') { self.exponent()? } else { 1 };
            Ok((coeff.unwrap_or_else(BigInt::one), exp))
        } else if has_star {
            Err(self.err("expected 'A' after '*'"))
        } else {
            coeff.map(|c| (c, 0)).ok_or_else(|| self.err("expected term"))
        }
    }

    fn poly(&mut self) -> Result<LaurentPoly> {
        let mut out = LaurentPoly::zero();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let (c, e) = self.term()?;
            out.add_term(e, c * sign);
            sign = if self.eat(b'+') {
                1
            } else if self.eat(b'-') {
                -1
            } else {
                break;
            };
        }
        Ok(out)
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(&format!("unexpected '{}'", c as char))),
        }
    }
}

/// Parses `poly` or `(poly)/den` into a Laurent polynomial and a positive denominator.
pub fn parse_ring_element(s: &str) -> Result<(LaurentPoly, BigInt)> {
    let mut cur = Cursor::new(s);
    if cur.peek() == Some(b'(') {
        let save = cur.pos;
        cur.pos += 1;
        if let Ok(p) = cur.poly() {
            if cur.eat(b')') {
                if cur.eat(b'/') {
                    let d = cur.digits().ok_or_else(|| cur.err("expected denominator"))?;
                    cur.finish()?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    return Ok((p, d));
                }
                if cur.finish().is_ok() {
                    return Ok((p, BigInt::one()));
                }
            }
        }
        cur.pos = save;
    }
    let p = cur.poly()?;
    cur.finish()?;
    Ok((p, BigInt::one()))
}

/// Parses a ring string and reduces it into `Λ_k` (with its denominator).
pub fn parse_fraction(s: &str, k: u64) -> Result<CycloFraction> {
    let (p, d) = parse_ring_element(s)?;
    CycloFraction::new(reduce(&p, k), d)
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (p, d) = parse_ring_element(s)?;
        if !d.is_one() {
            return Err(Error::Parse(format!("'{s}' has a denominator")));
        }
        Ok(p)
    }
}
