//! Recursive-descent parser for scalar expressions.
//!
//! ```text
//! expr   := term (("+" | "-") term)*
//! term   := factor (("*" | "/") factor)*
//! factor := base ("^" nonneg-integer)?
//! base   := integer | identifier | "(" expr ")" | "-" base
//! ```

use num_bigint::BigInt;

use crate::algfun::AlgebraicFunctionField;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::finite::FiniteField;
use crate::numfield::NumberField;
use crate::ratfun::RationalFunctionField;
use crate::rational::Rationals;

/// Fields whose elements can be written with named generators.
pub trait Identifiers: Field {
    fn ident(&self, name: &str) -> Option<Self::Elem>;
}

impl Identifiers for Rationals {
    fn ident(&self, _name: &str) -> Option<Self::Elem> {
        None
    }
}

impl Identifiers for NumberField {
    fn ident(&self, name: &str) -> Option<Self::Elem> {
        (name == self.var()).then(|| self.alpha())
    }
}

impl Identifiers for FiniteField {
    fn ident(&self, name: &str) -> Option<Self::Elem> {
        (self.degree() > 1 && name == self.var()).then(|| self.generator())
    }
}

impl<B: Identifiers> Identifiers for RationalFunctionField<B> {
    fn ident(&self, name: &str) -> Option<Self::Elem> {
        if let Some(i) = self.vars().iter().position(|v| v == name) {
            return Some(self.var(i));
        }
        self.base().ident(name).map(|c| self.from_base(c))
    }
}

impl<B: Identifiers> Identifiers for AlgebraicFunctionField<B> {
    fn ident(&self, name: &str) -> Option<Self::Elem> {
        if name == "a" {
            return Some(self.generator());
        }
        self.rf().ident(name).map(|c| self.from_base(c))
    }
}

struct Parser<'a, F: Identifiers> {
    field: &'a F,
    src: &'a [u8],
    pos: usize,
}

impl<F: Identifiers> Parser<'_, F> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<F::Elem> {
        let k = self.field;
        let mut acc = self.term()?;
        while let Some(c @ (b'+' | b'-')) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if c == b'+' { k.add(&acc, &rhs) } else { k.sub(&acc, &rhs) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<F::Elem> {
        let k = self.field;
        let mut acc = self.factor()?;
        while let Some(c @ (b'*' | b'/')) = self.peek() {
            let at = self.pos;
            self.pos += 1;
            let rhs = self.factor()?;
            acc = if c == b'*' {
                k.mul(&acc, &rhs)
            } else {
                if k.is_zero(&rhs) {
                    return Err(Error::parse(at, "division by zero"));
                }
                k.div(&acc, &rhs).map_err(|e| match e {
                    Error::DivisionByZero => Error::parse(at, "division by zero"),
                    other => other,
                })?
            };
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<F::Elem> {
        let b = self.base()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            let digits = self.digits();
            if digits.is_empty() {
                return Err(Error::parse(start, "expected a nonnegative integer exponent"));
            }
            let e: u64 = digits
                .parse()
                .map_err(|_| Error::parse(start, "exponent too large"))?;
            return Ok(self.field.pow(&b, e));
        }
        Ok(b)
    }

    fn digits(&mut self) -> String {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        String::from_utf8_lossy(&self.src[start..self.pos]).into_owned()
    }

    fn base(&mut self) -> Result<F::Elem> {
        let k = self.field;
        match self.peek() {
            None => Err(Error::parse(self.pos, "unexpected end of input")),
            Some(b'-') => {
                self.pos += 1;
                let b = self.base()?;
                Ok(k.neg(&b))
            }
            Some(b'(') => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(Error::parse(self.pos, "expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let d = self.digits();
                let n: BigInt = d.parse().expect("digit string");
                Ok(k.from_int(&n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                k.ident(name)
                    .ok_or_else(|| Error::parse(start, format!("unknown identifier '{name}'")))
            }
            Some(c) => Err(Error::parse(
                self.pos,
                format!("unexpected character '{}'", c as char),
            )),
        }
    }
}

/// Parses `text` into a canonical element of `field`.
pub fn parse_scalar<F: Identifiers>(text: &str, field: &F) -> Result<F::Elem> {
    let mut p = Parser {
        field,
        src: text.as_bytes(),
        pos: 0,
    };
    let v = p.expr()?;
    if let Some(c) = p.peek() {
        return Err(Error::parse(
            p.pos,
            format!("unexpected character '{}'", c as char),
        ));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn rational_examples() {
        assert_eq!(parse_scalar("0", &Rationals).unwrap(), int(0));
        assert_eq!(parse_scalar("3/6", &Rationals).unwrap(), rat(1, 2));
        assert_eq!(parse_scalar(" -2^2 ", &Rationals).unwrap(), int(4));
        assert_eq!(parse_scalar("1-2*3", &Rationals).unwrap(), int(-5));
    }

    #[test]
    fn number_field_square() {
        let k = NumberField::from_ints(&[1, 0, 1]).unwrap();
        assert_eq!(parse_scalar("(a+1)^2", &k).unwrap(), vec![int(0), int(2)]);
    }

    #[test]
    fn function_field_cancellation() {
        let k = RationalFunctionField::new(Rationals, vec!["x".into()]);
        let v = parse_scalar("(x^2-1)/(x-1)", &k).unwrap();
        assert_eq!(k.format(&v), "x+1");
    }

    #[test]
    fn errors_report_offsets() {
        let k = RationalFunctionField::new(Rationals, vec!["x".into()]);
        assert_eq!(
            parse_scalar("x+", &k).unwrap_err(),
            Error::parse(2, "unexpected end of input")
        );
        assert!(matches!(parse_scalar("y", &k), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(parse_scalar("1/0", &Rationals), Err(Error::Parse { offset: 1, .. })));
        assert!(matches!(parse_scalar("(1", &Rationals), Err(Error::Parse { offset: 2, .. })));
    }
}
