//! Number fields ℚ(α) stored in the basis of the algebraic integer `β = d·α`.
//!
//! Users write elements in terms of the original `α` (identifier `a`); the
//! parser and printer translate between the two bases so that canonical
//! coordinates always live in `(1/μ)ℤ[β]`.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::Result;
use crate::extension::SimpleExtension;
use crate::field::{ElemSize, Field};
use crate::intpoly::{self, NormalizedMinpoly, ZPoly};
use crate::rational::Rationals;
use crate::upoly;

#[derive(Clone, Debug)]
pub struct NumberField {
    ext: SimpleExtension<Rationals>,
    normalized: NormalizedMinpoly,
    disc: BigInt,
    var: String,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.normalized == other.normalized
    }
}

impl NumberField {
    /// Builds ℚ(α) from the rational coefficients of α's minimal polynomial,
    /// constant term first. Rejects reducible polynomials.
    pub fn new(minpoly: &[BigRational]) -> Result<Self> {
        let normalized = intpoly::normalize_minpoly(minpoly)?;
        let disc = intpoly::discriminant(&normalized.poly)?;
        let ext = SimpleExtension::new(Rationals, intpoly::to_rational(&normalized.poly), "a")?;
        Ok(NumberField {
            ext,
            normalized,
            disc,
            var: "a".into(),
        })
    }

    /// Renames the generator used by the parser and printer.
    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn from_ints(minpoly: &[i64]) -> Result<Self> {
        let q: Vec<BigRational> = minpoly
            .iter()
            .map(|&c| BigRational::from_integer(BigInt::from(c)))
            .collect();
        Self::new(&q)
    }

    pub fn degree(&self) -> usize {
        self.ext.degree()
    }

    /// The monic integer polynomial of `β`.
    pub fn integral_minpoly(&self) -> &ZPoly {
        &self.normalized.poly
    }

    pub fn scale(&self) -> &BigInt {
        &self.normalized.scale
    }

    pub fn discriminant(&self) -> &BigInt {
        &self.disc
    }

    pub fn extension(&self) -> &SimpleExtension<Rationals> {
        &self.ext
    }

    /// The integral generator `β`.
    pub fn beta(&self) -> Vec<BigRational> {
        self.ext.generator()
    }

    /// The user-facing generator `α = β/d`.
    pub fn alpha(&self) -> Vec<BigRational> {
        let d = BigRational::from_integer(self.normalized.scale.clone());
        self.beta().into_iter().map(|c| c / &d).collect()
    }

    pub fn from_coords(&self, coords: Vec<BigRational>) -> Vec<BigRational> {
        self.ext.pad(coords)
    }
}

impl Field for NumberField {
    type Elem = Vec<BigRational>;

    fn zero(&self) -> Self::Elem {
        self.ext.zero()
    }
    fn one(&self) -> Self::Elem {
        self.ext.one()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.ext.is_zero(a)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ext.add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ext.sub(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.ext.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.ext.mul(a, b)
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.ext.inv(a)
    }
    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.ext.from_int(n)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn size(&self, a: &Self::Elem) -> ElemSize {
        self.ext.size(a)
    }

    /// Printed in powers of the user's `α`.
    fn format(&self, a: &Self::Elem) -> String {
        let d = BigRational::from_integer(self.normalized.scale.clone());
        let mut pow = BigRational::from_integer(BigInt::from(1));
        let mut coeffs = Vec::with_capacity(a.len());
        for c in a {
            coeffs.push(c * &pow);
            pow *= &d;
        }
        let coeffs = upoly::trim(&Rationals, coeffs);
        upoly::format(&Rationals, &coeffs, &self.var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn inverse_of_i() {
        let k = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let a = k.alpha();
        assert_eq!(k.inv(&a).unwrap(), vec![int(0), int(-1)]);
    }

    #[test]
    fn scaled_generator_satisfies_original() {
        // t^2 - t/2 + 1 with α = β/2.
        let k = NumberField::new(&[int(1), rat(-1, 2), int(1)]).unwrap();
        let a = k.alpha();
        let val = k.add(&k.sub(&k.mul(&a, &a), &k.mul(&k.ext.from_base(rat(1, 2)), &a)), &k.one());
        assert!(k.is_zero(&val));
        assert_eq!(k.format(&a), "a");
    }

    #[test]
    fn reducible_rejected() {
        assert!(NumberField::new(&[rat(-1, 4), int(0), int(1)]).is_err());
    }
}
