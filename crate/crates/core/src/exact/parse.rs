//! Reader for the text forms printed by `QPoly` and `QRat`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{QPoly, QRat, Rational};
use crate::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Option<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.src[start..self.pos].parse().expect("digits"))
    }

    fn error(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at offset {} in `{}`", self.pos, self.src))
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }
}

fn term(cur: &mut Cursor<'_>) -> Result<(Rational, usize)> {
    let mut coeff = None;
    if let Some(n) = cur.integer() {
        let mut c = Rational::from_integer(n);
        if cur.eat('/') {
            let d = cur.integer().ok_or_else(|| cur.error("expected denominator"))?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            c = Rational::new(c.to_integer(), d);
        }
        coeff = Some(c);
        if !cur.eat('*') {
            return Ok((coeff.unwrap(), 0));
        }
    }
    if !cur.eat('q') {
        return match coeff {
            Some(_) => Err(cur.error("expected `q` after `*`")),
            None => Err(cur.error("expected a term")),
        };
    }
    let mut degree = 1usize;
    if cur.eat('^') {
        let d = cur.integer().ok_or_else(|| cur.error("expected exponent"))?;
        degree = d.try_into().map_err(|_| cur.error("exponent too large"))?;
    }
    Ok((coeff.unwrap_or_else(Rational::one), degree))
}

fn poly(cur: &mut Cursor<'_>) -> Result<QPoly> {
    let mut coeffs: Vec<Rational> = Vec::new();
    let mut negate = cur.eat('-');
    loop {
        let (c, d) = term(cur)?;
        if coeffs.len() <= d {
            coeffs.resize(d + 1, Rational::zero());
        }
        coeffs[d] += if negate { -c } else { c };
        if cur.eat('+') {
            negate = cur.eat('-');
        } else if cur.eat('-') {
            negate = true;
        } else {
            break;
        }
    }
    Ok(QPoly::from_coeffs(coeffs))
}

fn parenthesized(cur: &mut Cursor<'_>) -> Result<QPoly> {
    if !cur.eat('(') {
        return Err(cur.error("expected `(`"));
    }
    let p = poly(cur)?;
    if !cur.eat(')') {
        return Err(cur.error("expected `)`"));
    }
    Ok(p)
}

pub(super) fn parse_qpoly(s: &str) -> Result<QPoly> {
    let mut cur = Cursor::new(s);
    let p = poly(&mut cur)?;
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(p)
}

/// Accepts `poly`, `(poly)` and `(poly)/(poly)`.
pub(super) fn parse_qrat(s: &str) -> Result<QRat> {
    let mut cur = Cursor::new(s);
    cur.skip_ws();
    let value = if cur.peek() == Some('(') {
        let num = parenthesized(&mut cur)?;
        if cur.eat('/') {
            let den = parenthesized(&mut cur)?;
            QRat::new(num, den)?
        } else {
            num.into()
        }
    } else {
        poly(&mut cur)?.into()
    };
    if !cur.at_end() {
        return Err(cur.error("trailing input"));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    #[test]
    fn reads_printed_forms() {
        assert_eq!(parse_qpoly("1 - 2*q + q^2").unwrap(), QPoly::from_ints(&[1, -2, 1]));
        assert_eq!(parse_qpoly("-q").unwrap(), QPoly::from_ints(&[0, -1]));
        assert_eq!(parse_qpoly("0").unwrap(), QPoly::zero());
        assert_eq!(parse_qpoly("1/2 + -3/4*q").unwrap(), QPoly::from_coeffs(vec![rational(1, 2), rational(-3, 4)]));
        assert_eq!(parse_qpoly("c0 + 1*q").ok(), None);
    }

    #[test]
    fn reads_quotients() {
        let r = parse_qrat("(q)/(1 + q + q^2)").unwrap();
        assert_eq!(r.numer(), &QPoly::q());
        assert_eq!(parse_qrat("(1 - q^2)/(1 - q)").unwrap(), QRat::from(QPoly::from_ints(&[1, 1])));
        assert_eq!(parse_qrat("(1)/(0)"), Err(Error::DivisionByZero));
        assert!(parse_qrat("(1 + q").is_err());
        assert!(parse_qrat("1 + q)").is_err());
    }
}
