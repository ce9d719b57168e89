//! Simple algebraic extensions `K(α) = K[t]/(f)` of an arbitrary field.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{ElemSize, Field};
use crate::upoly::{self, Poly};

#[derive(Clone, Debug)]
pub struct SimpleExtension<F: Field> {
    base: F,
    /// Monic defining polynomial, constant term first.
    minpoly: Poly<F>,
    var: String,
}

impl<F: Field + PartialEq> PartialEq for SimpleExtension<F> {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base && self.minpoly == other.minpoly
    }
}

impl<F: Field> SimpleExtension<F> {
    /// `minpoly` must be monic of degree >= 1; irreducibility is the
    /// caller's responsibility (inversion fails on zero divisors otherwise).
    pub fn new(base: F, minpoly: Poly<F>, var: &str) -> Result<Self> {
        let minpoly = upoly::trim(&base, minpoly);
        match minpoly.last() {
            None => return Err(Error::InvalidField("zero minimal polynomial".into())),
            Some(lc) if !base.is_one(lc) => {
                return Err(Error::InvalidField("minimal polynomial must be monic".into()))
            }
            _ => {}
        }
        if minpoly.len() < 2 {
            return Err(Error::InvalidField("minimal polynomial must have degree >= 1".into()));
        }
        Ok(SimpleExtension {
            base,
            minpoly,
            var: var.to_string(),
        })
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn minpoly(&self) -> &[F::Elem] {
        &self.minpoly
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    /// The class of `t`.
    pub fn generator(&self) -> Vec<F::Elem> {
        self.from_poly(&upoly::x(&self.base))
            .expect("reduction modulo a monic polynomial cannot fail")
    }

    pub fn from_base(&self, c: F::Elem) -> Vec<F::Elem> {
        let mut v = vec![self.base.zero(); self.degree()];
        v[0] = c;
        v
    }

    /// Reduces an arbitrary polynomial in `t` to canonical coordinates.
    pub fn from_poly(&self, p: &[F::Elem]) -> Result<Vec<F::Elem>> {
        let r = upoly::rem(&self.base, p, &self.minpoly)?;
        Ok(self.pad(r))
    }

    pub fn pad(&self, mut r: Vec<F::Elem>) -> Vec<F::Elem> {
        r.resize(self.degree(), self.base.zero());
        r
    }

    pub fn to_poly(&self, a: &[F::Elem]) -> Poly<F> {
        upoly::trim(&self.base, a.to_vec())
    }
}

impl<F: Field> Field for SimpleExtension<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.degree()]
    }

    fn one(&self) -> Self::Elem {
        self.from_base(self.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        let e = self.degree();
        let mut prod = vec![k.zero(); 2 * e - 1];
        for (i, x) in a.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if k.is_zero(y) {
                    continue;
                }
                prod[i + j] = k.add(&prod[i + j], &k.mul(x, y));
            }
        }
        // The minimal polynomial is monic, so reduction is subtraction only.
        for top in (e..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[top], k.zero());
            if k.is_zero(&c) {
                continue;
            }
            let shift = top - e;
            for (j, m) in self.minpoly[..e].iter().enumerate() {
                prod[shift + j] = k.sub(&prod[shift + j], &k.mul(&c, m));
            }
        }
        prod.truncate(e);
        prod
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let pa = self.to_poly(a);
        let (g, s, _) = upoly::xgcd(&self.base, &pa, &self.minpoly)?;
        if g.len() != 1 {
            return Err(Error::InvalidField(
                "defining polynomial is reducible: element is a zero divisor".into(),
            ));
        }
        self.from_poly(&s)
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.from_base(self.base.from_int(n))
    }

    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }

    fn size(&self, a: &Self::Elem) -> ElemSize {
        a.iter()
            .map(|c| self.base.size(c))
            .fold(ElemSize::default(), ElemSize::join)
    }

    fn format(&self, a: &Self::Elem) -> String {
        upoly::format(&self.base, &self.to_poly(a), &self.var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, Rationals};

    #[test]
    fn gaussian_rationals() {
        let k = SimpleExtension::new(Rationals, vec![int(1), int(0), int(1)], "a").unwrap();
        let i = k.generator();
        assert_eq!(k.mul(&i, &i), k.from_i64(-1));
        let inv = k.inv(&i).unwrap();
        assert_eq!(inv, vec![int(0), int(-1)]);
    }
}
