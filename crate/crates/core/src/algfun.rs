//! Algebraic function fields `L(α)` over a rational function field `L`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::extension::SimpleExtension;
use crate::field::{ElemSize, Field};
use crate::mpoly::MPoly;
use crate::ratfun::{RatFun, RationalFunctionField};
use crate::upoly;

#[derive(Clone, Debug)]
pub struct AlgebraicFunctionField<B: Field> {
    ext: SimpleExtension<RationalFunctionField<B>>,
}

impl<B: Field + PartialEq> PartialEq for AlgebraicFunctionField<B> {
    fn eq(&self, other: &Self) -> bool {
        self.ext == other.ext
    }
}

impl<B: Field> AlgebraicFunctionField<B> {
    /// `minpoly` lists coefficients constant term first. Coefficients must be
    /// polynomials; a constant leading coefficient is divided out. The
    /// polynomial must be squarefree over `L`.
    pub fn new(rf: RationalFunctionField<B>, minpoly: Vec<RatFun<B::Elem>>) -> Result<Self> {
        let f = upoly::trim(&rf, minpoly);
        if f.len() < 3 {
            return Err(Error::InvalidField(
                "minimal polynomial must have degree >= 2; use a rational function field instead".into(),
            ));
        }
        if f.iter().any(|c| !rf.is_polynomial(c)) {
            return Err(Error::InvalidField(
                "minimal polynomial coefficients must be polynomials".into(),
            ));
        }
        let lc = f.last().unwrap();
        if rf.as_constant(lc).is_none() {
            return Err(Error::InvalidField(
                "minimal polynomial must have a constant leading coefficient".into(),
            ));
        }
        let f = upoly::monic(&rf, &f)?;
        let df = upoly::derivative(&rf, &f);
        let g = upoly::gcd(&rf, &f, &df)?;
        if g.len() != 1 {
            return Err(Error::InvalidField(format!(
                "minimal polynomial is not squarefree: common factor {} with its derivative",
                upoly::format(&rf, &g, "t")
            )));
        }
        Ok(AlgebraicFunctionField {
            ext: SimpleExtension::new(rf, f, "a")?,
        })
    }

    pub fn rf(&self) -> &RationalFunctionField<B> {
        self.ext.base()
    }

    pub fn base(&self) -> &B {
        self.ext.base().base()
    }

    pub fn degree(&self) -> usize {
        self.ext.degree()
    }

    /// Monic minimal polynomial with polynomial coefficients.
    pub fn minpoly(&self) -> Vec<MPoly<B::Elem>> {
        self.ext.minpoly().iter().map(|c| c.num.clone()).collect()
    }

    pub fn minpoly_elems(&self) -> &[RatFun<B::Elem>] {
        self.ext.minpoly()
    }

    pub fn generator(&self) -> Vec<RatFun<B::Elem>> {
        self.ext.generator()
    }

    pub fn from_base(&self, c: RatFun<B::Elem>) -> Vec<RatFun<B::Elem>> {
        self.ext.from_base(c)
    }

    pub fn from_coords(&self, coords: Vec<RatFun<B::Elem>>) -> Vec<RatFun<B::Elem>> {
        self.ext.pad(coords)
    }
}

impl<B: Field> Field for AlgebraicFunctionField<B> {
    type Elem = Vec<RatFun<B::Elem>>;

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
        self.ext.characteristic()
    }
    fn size(&self, a: &Self::Elem) -> ElemSize {
        self.ext.size(a)
    }
    fn format(&self, a: &Self::Elem) -> String {
        self.ext.format(a)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rationals;

    fn qx() -> RationalFunctionField<Rationals> {
        RationalFunctionField::new(Rationals, vec!["x".into()])
    }

    #[test]
    fn sqrt_x() {
        let rf = qx();
        let x = rf.var(0);
        let f = vec![rf.neg(&x), rf.zero(), rf.one()];
        let k = AlgebraicFunctionField::new(rf.clone(), f).unwrap();
        let a = k.generator();
        assert_eq!(k.mul(&a, &a), k.from_base(x.clone()));
        let ai = k.inv(&a).unwrap();
        assert!(k.is_one(&k.mul(&a, &ai)));
        assert_eq!(k.format(&ai), "1/x*a");
    }

    #[test]
    fn rejects_square() {
        let rf = qx();
        let x = rf.var(0);
        // (t - x)^2
        let f = vec![rf.mul(&x, &x), rf.mul(&rf.from_i64(-2), &x), rf.one()];
        assert!(AlgebraicFunctionField::new(rf, f).is_err());
    }
}
