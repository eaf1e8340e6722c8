//! Text form of Laurent polynomials, e.g. `3/2*t1^-2*t2 + t1`.
//!
//! ```text
//! poly   := sign? term (("+" | "-") term)*
//! term   := (coeff "*"?)? factor ("*"? factor)*  |  coeff
//! factor := "t" index ("^" signed-int)?
//! coeff  := signed-int ("/" posint)?
//! ```
//! Whitespace is insignificant; error offsets are byte offsets into the input.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{Exponent, LaurentPoly};
use crate::rational::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("parse error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Parsed terms before the ambient variable count is fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedPoly {
    pub terms: Vec<(Q, BTreeMap<usize, i64>)>,
    /// Largest 1-based `t` index seen (0 for constants).
    pub max_var: usize,
}

impl ParsedPoly {
    /// Materializes with `n` variables; `n` must be at least `max_var`.
    pub fn into_poly(&self, n: usize) -> LaurentPoly {
        assert!(n >= self.max_var, "variable count below the highest index");
        let terms = self.terms.iter().map(|(c, powers)| {
            let mut e = vec![0i64; n];
            for (&var, &p) in powers {
                e[var - 1] += p;
            }
            (Exponent(e), c.clone())
        });
        LaurentPoly::from_terms(n, terms).expect("exponents sized to n")
    }
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { offset: self.pos, message: message.into() })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt, ParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii digits");
        Ok(text.parse().expect("ascii digits parse"))
    }

    fn signed_int(&mut self) -> Result<BigInt, ParseError> {
        let negative = if self.eat(b'-') {
            true
        } else {
            self.eat(b'+');
            false
        };
        let v = self.digits()?;
        Ok(if negative { -v } else { v })
    }

    fn small_int(&mut self) -> Result<i64, ParseError> {
        let at = {
            self.skip_ws();
            self.pos
        };
        let v = self.signed_int()?;
        i64::try_from(v).map_err(|_| ParseError { offset: at, message: "integer out of range".into() })
    }

    fn coeff(&mut self) -> Result<Q, ParseError> {
        let numer = self.digits()?;
        if self.eat(b'/') {
            let at = self.pos;
            let denom = self.digits()?;
            if denom.is_zero() {
                return Err(ParseError { offset: at, message: "zero denominator".into() });
            }
            Ok(Q::new(numer, denom))
        } else {
            Ok(Q::from_integer(numer))
        }
    }

    fn factor(&mut self, powers: &mut BTreeMap<usize, i64>, max_var: &mut usize) -> Result<(), ParseError> {
        if !self.eat(b't') {
            return self.err("expected variable t<index>");
        }
        let at = self.pos;
        let index = self.digits()?;
        let index: usize = usize::try_from(index).ok().filter(|&i| i >= 1).ok_or(ParseError {
            offset: at,
            message: "variable index must be a positive integer".into(),
        })?;
        let power = if self.eat(b'^') { self.small_int()? } else { 1 };
        *powers.entry(index).or_insert(0) += power;
        *max_var = (*max_var).max(index);
        Ok(())
    }

    fn term(&mut self, sign: i64, max_var: &mut usize) -> Result<(Q, BTreeMap<usize, i64>), ParseError> {
        let mut coeff = Q::one();
        let mut powers = BTreeMap::new();
        let mut seen = false;
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            coeff = self.coeff()?;
            seen = true;
            if self.eat(b'*') && self.peek() != Some(b't') {
                return self.err("expected variable after '*'");
            }
        }
        while self.peek() == Some(b't') {
            self.factor(&mut powers, max_var)?;
            seen = true;
            if self.eat(b'*') && self.peek() != Some(b't') {
                return self.err("expected variable after '*'");
            }
        }
        if !seen {
            return self.err("expected a term");
        }
        Ok((coeff * Q::from_integer(sign.into()), powers))
    }
}

/// Parses one polynomial.
pub fn parse_poly(text: &str) -> Result<ParsedPoly, ParseError> {
    let mut cur = Cursor { bytes: text.as_bytes(), pos: 0 };
    let mut terms = Vec::new();
    let mut max_var = 0;
    let mut sign = if cur.eat(b'-') {
        -1
    } else {
        cur.eat(b'+');
        1
    };
    loop {
        terms.push(cur.term(sign, &mut max_var)?);
        match cur.peek() {
            None => break,
            Some(b'+') => {
                cur.pos += 1;
                sign = 1;
            }
            Some(b'-') => {
                cur.pos += 1;
                sign = -1;
            }
            Some(_) => return cur.err("unexpected character"),
        }
    }
    Ok(ParsedPoly { terms, max_var })
}
