//! The polynomial and partition grammars of the model format.
//!
//! ```text
//! expr  := term (('+'|'-') term)*
//! term  := coeff ('*' gen ('^' int)?)*
//! coeff := int | int '/' int
//! ```
//!
//! Generator names are identifiers declared in the owning space. Every term
//! carries an explicit leading coefficient, so `x^2` is written `1*x^2`.
//! Partitions are written `[3,1,1]`, the empty partition `[]`.

use crate::algebra::{AlgebraRef, Element};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::Scalar;

struct Lexer<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn new(input: &'a str) -> Self {
        Lexer { input: input.as_bytes(), pos: 0 }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.pos += 1;
        Some(c)
    }

    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at position {}", self.pos))
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        let digits_start = self.pos;
        while self.pos < self.input.len() && self.input[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(self.error("expected an integer"));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.error("integer out of range"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.input.len() {
            let c = self.input[self.pos];
            if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start || self.input[start].is_ascii_digit() {
            return Err(self.error("expected a generator name"));
        }
        Ok(std::str::from_utf8(&self.input[start..self.pos]).unwrap().to_string())
    }
}

fn coeff_from_fraction<K: Scalar>(num: i64, den: i64) -> Result<K> {
    if den == 0 {
        return Err(Error::Parse("zero denominator".into()));
    }
    K::from_fraction(num, den).ok_or_else(|| {
        Error::Parse(format!("denominator {den} is not invertible over {}", K::FIELD))
    })
}

/// Parses an element of `algebra` from the polynomial grammar.
pub fn parse_element<K: Scalar>(input: &str, algebra: &AlgebraRef<K>) -> Result<Element<K>> {
    let mut lex = Lexer::new(input);
    let mut acc = Element::zero(algebra);
    let mut negate = false;
    loop {
        // term
        let num = lex.int()?;
        let den = if lex.peek() == Some(b'/') {
            lex.bump();
            lex.int()?
        } else {
            1
        };
        let coeff: K = coeff_from_fraction(num, den)?;
        let mut term = Element::one(algebra).scale(&coeff);
        while lex.peek() == Some(b'*') {
            lex.bump();
            let name = lex.ident()?;
            let gen = algebra
                .generator(&name)
                .ok_or_else(|| lex.error(&format!("unknown generator `{name}`")))?;
            let exp = if lex.peek() == Some(b'^') {
                lex.bump();
                let e = lex.int()?;
                if e < 0 {
                    return Err(lex.error("negative exponent"));
                }
                e as u32
            } else {
                1
            };
            term = term.mul(&gen.pow(exp));
        }
        if negate {
            term = term.neg();
        }
        acc = acc.add(&term);
        match lex.peek() {
            None => break,
            Some(b'+') => {
                lex.bump();
                negate = false;
            }
            Some(b'-') => {
                lex.bump();
                negate = true;
            }
            Some(c) => {
                return Err(lex.error(&format!("unexpected character `{}`", c as char)));
            }
        }
    }
    Ok(acc)
}

/// Parses a partition literal like `[3,1,1]` or `[]`.
pub fn parse_partition(input: &str) -> Result<Partition> {
    let s = input.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected a partition like [3,1], got {s:?}")))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for piece in inner.split(',') {
        let v: u32 = piece
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad partition part {piece:?}")))?;
        if v == 0 {
            return Err(Error::Parse("partition parts must be positive".into()));
        }
        parts.push(v);
    }
    Ok(Partition::new(parts))
}

/// Parses a scalar in the report syntax: `p`, `p/q`, or a bit over F2.
pub fn parse_scalar<K: Scalar>(input: &str) -> Result<K> {
    let s = input.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (
            a.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?,
            b.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?,
        ),
        None => (
            s.parse::<i64>().map_err(|_| Error::Parse(format!("bad scalar {s:?}")))?,
            1,
        ),
    };
    coeff_from_fraction(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedAlgebra;
    use crate::scalar::{rat, Mod2, Rat};

    fn cp2() -> AlgebraRef<Rat> {
        GradedAlgebra::truncated_polynomial(&[("x", 2, 3)], 4).unwrap()
    }

    #[test]
    fn parses_signed_fractions() {
        let a = cp2();
        let e = parse_element("-3*x^2+1/2*x", &a).unwrap();
        let x = a.generator("x").unwrap();
        assert_eq!(e, x.pow(2).scale(&rat(-3, 1)).add(&x.scale(&rat(1, 2))));
        assert_eq!(e.render(), "1/2*x-3*x^2");
        assert_eq!(parse_element(&e.render(), &a).unwrap(), e);
    }

    #[test]
    fn constant_and_truncation() {
        let a = cp2();
        assert_eq!(parse_element("7", &a).unwrap().pair(), rat(0, 1));
        assert!(parse_element("1*x^3", &a).unwrap().is_zero());
        assert_eq!(parse_element("0", &a).unwrap(), Element::zero(&a));
    }

    #[test]
    fn reports_positions() {
        let a = cp2();
        let err = parse_element("1*y", &a).unwrap_err();
        assert!(err.to_string().contains("unknown generator"));
        assert!(err.to_string().contains("position"));
        assert!(parse_element("x", &a).is_err(), "terms need explicit coefficients");
    }

    #[test]
    fn f2_coefficients() {
        let a = GradedAlgebra::<Mod2>::truncated_polynomial(&[("a", 1, 3)], 2).unwrap();
        let e = parse_element("1*a+1*a^2", &a).unwrap();
        assert_eq!(e.render(), "1*a+1*a^2");
        assert!(parse_element("2*a", &a).unwrap().is_zero());
        assert!(parse_element("1/2*a", &a).is_err());
        assert!(parse_element("1/3*a", &a).is_ok());
    }

    #[test]
    fn partitions_round_trip() {
        assert_eq!(parse_partition("[3,1,1]").unwrap().to_string(), "[3,1,1]");
        assert_eq!(parse_partition("[]").unwrap(), Partition::empty());
        assert!(parse_partition("[0]").is_err());
        assert!(parse_partition("3,1").is_err());
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar::<Rat>("-4/6").unwrap(), rat(-2, 3));
        assert_eq!(parse_scalar::<Mod2>("1").unwrap(), Mod2(true));
        assert!(parse_scalar::<Rat>("x").is_err());
    }
}
