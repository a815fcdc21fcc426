//! Polynomial text format.
//!
//! ```text
//! poly  := term (('+' | '-') term)*
//! term  := coeff | coeff? 'x' ('^' nat)?
//! coeff := nat
//! ```
//!
//! Whitespace is ignored, a leading `-` and a `*` between coefficient and `x`
//! are accepted, and coefficients are reduced mod `n` as they are read. The
//! alternative form is a comma-separated ascending coefficient list, so
//! `"5,1,3"` is `3x^2+x+5`.

use alloc::vec::Vec;
use core::fmt;

use crate::arith::Modulus;
use crate::poly::PolyZn;

/// Largest exponent accepted on input.
pub const MAX_EXPONENT: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// Byte offset into the input.
    pub position: usize,
    pub message: &'static str,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at offset {}: {}", self.position, self.message)
    }
}

impl core::error::Error for ParseError {}

pub(crate) fn parse(text: &str, modulus: &Modulus) -> Result<PolyZn, ParseError> {
    let coeffs = if text.contains(',') {
        parse_list(text, modulus)?
    } else {
        Parser::new(text, modulus).poly()?
    };
    Ok(PolyZn::from_reduced(modulus.clone(), coeffs))
}

fn err(position: usize, message: &'static str) -> ParseError {
    ParseError { position, message }
}

fn parse_list(text: &str, modulus: &Modulus) -> Result<Vec<u64>, ParseError> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for field in text.split(',') {
        let mut p = Parser::new(field, modulus);
        p.skip_ws();
        let negative = p.eat(b'-');
        p.skip_ws();
        let c = p
            .nat_mod()
            .map_err(|e| err(offset + e.position, e.message))?
            .ok_or_else(|| err(offset + p.pos, "expected a coefficient"))?;
        p.skip_ws();
        if p.pos != field.len() {
            return Err(err(offset + p.pos, "unexpected character in coefficient list"));
        }
        coeffs.push(if negative { modulus.neg(c) } else { c });
        offset += field.len() + 1;
    }
    Ok(coeffs)
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
    modulus: &'a Modulus,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, modulus: &'a Modulus) -> Self {
        Parser {
            bytes: text.as_bytes(),
            pos: 0,
            modulus,
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    /// A run of digits reduced mod `n`, or `None` if there are no digits here.
    fn nat_mod(&mut self) -> Result<Option<u64>, ParseError> {
        let n = self.modulus.n() as u128;
        let start = self.pos;
        let mut acc: u128 = 0;
        while let Some(d @ b'0'..=b'9') = self.peek() {
            acc = (acc * 10 + (d - b'0') as u128) % n;
            self.pos += 1;
        }
        Ok((self.pos > start).then_some(acc as u64))
    }

    fn exponent(&mut self) -> Result<usize, ParseError> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            return Err(err(start, "negative exponent"));
        }
        let mut acc: usize = 0;
        while let Some(d @ b'0'..=b'9') = self.peek() {
            acc = acc
                .checked_mul(10)
                .and_then(|a| a.checked_add((d - b'0') as usize))
                .filter(|&a| a <= MAX_EXPONENT)
                .ok_or_else(|| err(start, "exponent too large"))?;
            self.pos += 1;
        }
        if self.pos == start {
            return Err(err(start, "expected an exponent after '^'"));
        }
        Ok(acc)
    }

    /// One term as `(coefficient, exponent)`.
    fn term(&mut self) -> Result<(u64, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let coeff = self.nat_mod()?;
        self.skip_ws();
        if coeff.is_some() && self.eat(b'*') {
            self.skip_ws();
            if self.peek() != Some(b'x') {
                return Err(err(self.pos, "expected 'x' after '*'"));
            }
        }
        if !self.eat(b'x') {
            return match coeff {
                Some(c) => Ok((c, 0)),
                None => Err(err(start, "expected a term")),
            };
        }
        self.skip_ws();
        let exponent = if self.eat(b'^') { self.exponent()? } else { 1 };
        Ok((coeff.unwrap_or(1), exponent))
    }

    fn poly(&mut self) -> Result<Vec<u64>, ParseError> {
        let m = self.modulus;
        let mut coeffs: Vec<u64> = Vec::new();
        let mut add_term = |(c, e): (u64, usize), negative: bool| {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, 0);
            }
            let c = if negative { m.neg(c) } else { c };
            coeffs[e] = m.add(coeffs[e], c);
        };
        self.skip_ws();
        let mut negative = self.eat(b'-');
        loop {
            let term = self.term()?;
            add_term(term, negative);
            self.skip_ws();
            match self.peek() {
                None => break,
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return Err(err(self.pos, "expected '+' or '-'")),
            }
            self.pos += 1;
        }
        Ok(coeffs)
    }
}

/// Writes ascending `coeffs` in the grammar above, highest degree first.
pub(crate) fn format(coeffs: &[u64], f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs.is_empty() {
        return f.write_str("0");
    }
    let mut first = true;
    for (e, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        if !first {
            f.write_str("+")?;
        }
        first = false;
        match (c, e) {
            (c, 0) => write!(f, "{c}")?,
            (1, 1) => f.write_str("x")?,
            (c, 1) => write!(f, "{c}x")?,
            (1, e) => write!(f, "x^{e}")?,
            (c, e) => write!(f, "{c}x^{e}")?,
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn zn(n: u64) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn coeffs(text: &str, n: u64) -> Vec<u64> {
        PolyZn::parse(text, &zn(n)).unwrap().coeffs().to_vec()
    }

    fn parse_err(text: &str, n: u64) -> ParseError {
        parse(text, &zn(n)).unwrap_err()
    }

    #[test]
    fn grammar_examples() {
        assert_eq!(coeffs("3x^2+x+5", 6), [5, 1, 3]);
        assert_eq!(coeffs("x^2+1", 4), [1, 0, 1]);
        assert_eq!(coeffs("7x+6", 6), [0, 1]);
        assert_eq!(coeffs(" 3 x ^ 2 + x + 5 ", 6), [5, 1, 3]);
        assert_eq!(coeffs("x^3+2x^2+x^3", 5), [0, 0, 2, 2]);
        assert_eq!(coeffs("x-1", 7), [6, 1]);
        assert_eq!(coeffs("-x", 7), [0, 6]);
        assert_eq!(coeffs("2*x^2", 7), [0, 0, 2]);
        assert_eq!(coeffs("0", 7), Vec::<u64>::new());
        assert_eq!(coeffs("x^0", 7), [1]);
        // Coefficients larger than u64 reduce as they are read.
        assert_eq!(coeffs("100000000000000000000000000001", 7), [(100000000000000000000000000001u128 % 7) as u64]);
    }

    #[test]
    fn list_form() {
        assert_eq!(coeffs("5,1,3", 6), [5, 1, 3]);
        assert_eq!(coeffs(" 5 , 1 , 3 ", 6), [5, 1, 3]);
        assert_eq!(coeffs("1,0,0", 6), [1]);
        assert_eq!(coeffs("-1,1", 6), [5, 1]);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert_eq!(parse_err("x^-2", 5), err(2, "negative exponent"));
        assert_eq!(parse_err("x^", 5).position, 2);
        assert_eq!(parse_err("", 5), err(0, "expected a term"));
        assert_eq!(parse_err("x+", 5), err(2, "expected a term"));
        assert_eq!(parse_err("3y", 5), err(1, "expected '+' or '-'"));
        assert_eq!(parse_err("x^99999999", 5).message, "exponent too large");
        assert_eq!(parse_err("1,,2", 5).position, 2);
        assert_eq!(parse_err("1,x", 5).position, 2);
    }

    #[test]
    fn display() {
        let m = zn(6);
        assert_eq!(PolyZn::new(&m, [5, 1, 3]).to_string(), "3x^2+x+5");
        assert_eq!(PolyZn::zero(&m).to_string(), "0");
        assert_eq!(PolyZn::new(&m, [0, 2]).to_string(), "2x");
        assert_eq!(PolyZn::new(&m, [1, 0, 0, 1]).to_string(), "x^3+1");
    }

    proptest::proptest! {
        #[test]
        fn parse_inverts_display(
            n in 2u64..1000,
            raw in proptest::collection::vec(proptest::num::u64::ANY, 0..8),
        ) {
            let m = zn(n);
            let f = PolyZn::new(&m, raw);
            let printed = f.to_string();
            proptest::prop_assert_eq!(PolyZn::parse(&printed, &m).unwrap(), f);
        }
    }
}
