//! The field abstraction shared by every coefficient domain.
//!
//! Field values are context objects: an element on its own does not know
//! its minimal polynomial or modulus, so every operation goes through the
//! field it belongs to.

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;

use crate::error::{Error, Result};

/// Size of a canonical representation, used by the entry blow-up guard.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ElemSize {
    /// Largest bit length of any integer in the representation.
    pub bits: u64,
    /// Number of polynomial terms (1 for a plain number).
    pub terms: usize,
}

impl ElemSize {
    pub fn scalar(bits: u64) -> Self {
        ElemSize { bits, terms: 1 }
    }

    /// Combines two parts of one representation: widest integer, summed terms.
    pub fn join(self, other: ElemSize) -> Self {
        ElemSize {
            bits: self.bits.max(other.bits),
            terms: self.terms + other.terms,
        }
    }

    /// Componentwise maximum, for comparing separate values.
    pub fn max(self, other: ElemSize) -> Self {
        ElemSize {
            bits: self.bits.max(other.bits),
            terms: self.terms.max(other.terms),
        }
    }
}

/// Limits enforced on every scalar produced by group-level computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_bits: u64,
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_bits: 1 << 20,
            max_terms: 1 << 14,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_bits: u64::MAX,
            max_terms: usize::MAX,
        }
    }

    pub fn check(&self, size: ElemSize) -> Result<()> {
        if size.bits > self.max_bits {
            return Err(Error::Resource(format!(
                "entry blow-up: {} bit integer exceeds budget of {} bits",
                size.bits, self.max_bits
            )));
        }
        if size.terms > self.max_terms {
            return Err(Error::Resource(format!(
                "entry blow-up: {} terms exceed budget of {}",
                size.terms, self.max_terms
            )));
        }
        Ok(())
    }
}

pub trait Field: Clone + fmt::Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + fmt::Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// 0 for characteristic zero, otherwise the prime.
    fn characteristic(&self) -> u64;
    fn size(&self, a: &Self::Elem) -> ElemSize;
    /// Text accepted back by the scalar parser for this field.
    fn format(&self, a: &Self::Elem) -> String;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Integer exponent, negative powers through the inverse.
    fn pow_signed(&self, a: &Self::Elem, e: i64) -> Result<Self::Elem> {
        if e >= 0 {
            Ok(self.pow(a, e as u64))
        } else {
            Ok(self.pow(&self.inv(a)?, e.unsigned_abs()))
        }
    }
}

/// True when `s` must be parenthesized to be used as a factor in a product.
pub(crate) fn needs_parens(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => return true,
            '-' if depth == 0 && i > 0 => return true,
            _ => {}
        }
    }
    false
}

/// Wraps `s` in parentheses when it is not usable as a product factor.
pub(crate) fn as_factor(s: String) -> String {
    if needs_parens(&s) {
        format!("({s})")
    } else {
        s
    }
}

/// Joins signed terms `c*m` into a sum that the parser reads back exactly.
///
/// Each term is `(coefficient text, monomial text)`; an empty monomial means
/// a constant term. A leading negative coefficient is written as `-c*m` with
/// an explicit numeric factor so that a following `^` never binds to the sign.
pub(crate) fn join_terms(terms: Vec<(String, String)>) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (coef, mono)) in terms.into_iter().enumerate() {
        let (negative, body) = match coef.strip_prefix('-') {
            Some(rest) if !needs_parens(&coef) => (true, rest.to_string()),
            _ => (false, coef),
        };
        let piece = if mono.is_empty() {
            body
        } else if body == "1" {
            if i == 0 && negative {
                format!("1*{mono}")
            } else {
                mono
            }
        } else {
            format!("{}*{mono}", as_factor(body))
        };
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { "-" } else { "+" });
        }
        out.push_str(&piece);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parens_detection() {
        assert!(!needs_parens("-3"));
        assert!(!needs_parens("x^2"));
        assert!(needs_parens("x+1"));
        assert!(needs_parens("x-1"));
        assert!(!needs_parens("(x-1)/(x+1)"));
    }

    #[test]
    fn joined_terms() {
        let t = vec![
            ("-1".to_string(), "x^2".to_string()),
            ("3".to_string(), String::new()),
        ];
        assert_eq!(join_terms(t), "-1*x^2+3");
        let t = vec![
            ("2".to_string(), "a".to_string()),
            ("-1/2".to_string(), String::new()),
        ];
        assert_eq!(join_terms(t), "2*a-1/2");
    }

    #[test]
    fn budget_rejects_large() {
        let b = Budget::default();
        assert!(b.check(ElemSize::scalar(10)).is_ok());
        assert!(b.check(ElemSize::scalar(1 << 21)).unwrap_err().is_resource());
    }
}
