//! Polynomial parser.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+' | '-'] term (('+' | '-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' uint)?
//! atom   := number | ident | '(' expr ')'
//! number := uint ('/' uint)?
//! ident  := [A-Za-z_][A-Za-z0-9_]*
//! ```
//!
//! Identifiers must be variables of the target ring. A rational `a/b` is
//! reduced into the ring's field, so `1/2` is `(p+1)/2` over `F_p`. Juxtaposition
//! (`2x`) is not accepted; write `2*x`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::exactalg::poly::{MultiPoly, Ring};

pub fn parse_poly(src: &str, ring: &Ring) -> Result<MultiPoly> {
    let mut p = Parser { chars: src.chars().collect(), pos: 0, ring, src };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(e)
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    ring: &'a Ring,
    src: &'a str,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at column {} in `{}`", self.pos + 1, self.src))
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let negate = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let e = self.uint()?;
            let e: u32 = e.try_into().map_err(|_| self.err("exponent too large"))?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn uint(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a number"));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        Ok(s.parse().expect("digits parse"))
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.uint()?;
                let d = if self.eat('/') {
                    self.skip_ws();
                    let d = self.uint()?;
                    if d == BigInt::from(0) {
                        return Err(self.err("zero denominator"));
                    }
                    d
                } else {
                    BigInt::from(1)
                };
                let c = self.ring.field().from_rational(&BigRational::new(n, d)).map_err(|_| self.err("denominator vanishes in the field"))?;
                Ok(MultiPoly::constant(self.ring, c))
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                while self.pos < self.chars.len() && (self.chars[self.pos].is_ascii_alphanumeric() || self.chars[self.pos] == '_') {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                match self.ring.var_index(&name) {
                    Some(i) => Ok(MultiPoly::var(self.ring, i)),
                    None => {
                        self.pos = start;
                        Err(self.err(&format!("unknown variable `{name}`")))
                    }
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::poly::PolyRing;
    use crate::exactalg::scalar::Field;

    fn ring() -> Ring {
        PolyRing::with_indexed_vars(Field::Rational, "y", 3)
    }

    #[test]
    fn parses_and_prints_round_trip() {
        let r = ring();
        for s in ["y1*y3 - y2^2", "-y1 + 3/2", "y1^2*y2 - 2*y3 + 1", "0"] {
            let p = parse_poly(s, &r).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(parse_poly(&p.to_string(), &r).unwrap(), p);
        }
    }

    #[test]
    fn nested_and_signed() {
        let r = ring();
        let p = parse_poly("-(y1 - y2)^2 + (1/2)*(4*y1*y2)", &r).unwrap();
        assert_eq!(p.to_string(), "-y1^2 + 4*y1*y2 - y2^2");
    }

    #[test]
    fn reduces_into_prime_field() {
        let r = PolyRing::with_indexed_vars(Field::Prime(5), "y", 1);
        assert_eq!(parse_poly("1/2*y1 - 1", &r).unwrap().to_string(), "3*y1 + 4");
        assert!(parse_poly("1/5", &r).is_err());
    }

    #[test]
    fn reports_errors() {
        let r = ring();
        assert!(matches!(parse_poly("y4", &r), Err(Error::Parse(m)) if m.contains("unknown variable `y4`")));
        assert!(parse_poly("y1 +", &r).is_err());
        assert!(parse_poly("(y1", &r).is_err());
        assert!(parse_poly("2 y1", &r).is_err());
        assert!(parse_poly("1/0", &r).is_err());
    }
}
