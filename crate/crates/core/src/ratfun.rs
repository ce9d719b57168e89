//! Rational function fields `P(x_1, ..., x_m)`.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{as_factor, ElemSize, Field};
use crate::mpoly::{MPoly, PolyRing};

/// A reduced fraction with a denominator of leading coefficient one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFun<E> {
    pub num: MPoly<E>,
    pub den: MPoly<E>,
}

#[derive(Clone, Debug)]
pub struct RationalFunctionField<B: Field> {
    ring: PolyRing<B>,
    vars: Vec<String>,
}

impl<B: Field + PartialEq> PartialEq for RationalFunctionField<B> {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.vars == other.vars
    }
}

impl<B: Field> RationalFunctionField<B> {
    pub fn new(base: B, vars: Vec<String>) -> Self {
        RationalFunctionField {
            ring: PolyRing::new(base, vars.len()),
            vars,
        }
    }

    pub fn base(&self) -> &B {
        &self.ring.base
    }

    pub fn ring(&self) -> &PolyRing<B> {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var(&self, i: usize) -> RatFun<B::Elem> {
        self.from_poly(self.ring.var(i))
    }

    pub fn from_base(&self, c: B::Elem) -> RatFun<B::Elem> {
        self.from_poly(self.ring.constant(c))
    }

    pub fn from_poly(&self, num: MPoly<B::Elem>) -> RatFun<B::Elem> {
        RatFun {
            num,
            den: self.ring.one(),
        }
    }

    /// Reduces `num/den` to canonical form.
    pub fn fraction(&self, num: MPoly<B::Elem>, den: MPoly<B::Elem>) -> Result<RatFun<B::Elem>> {
        let r = &self.ring;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(self.zero());
        }
        let g = r.gcd(&num, &den)?;
        let (mut num, mut den) = if r.is_one(&g) {
            (num, den)
        } else {
            (
                r.exact_div(&num, &g)?.expect("gcd divides numerator"),
                r.exact_div(&den, &g)?.expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().unwrap().1.clone();
        if !r.base.is_one(&lc) {
            let inv = r.base.inv(&lc)?;
            num = r.scale(&num, &inv);
            den = r.scale(&den, &inv);
        }
        Ok(RatFun { num, den })
    }

    /// Scales a coprime pair so the denominator has leading coefficient one.
    fn normalized(&self, mut num: MPoly<B::Elem>, mut den: MPoly<B::Elem>) -> RatFun<B::Elem> {
        let r = &self.ring;
        let lc = den.leading().expect("nonzero denominator").1.clone();
        if !r.base.is_one(&lc) {
            let inv = r.base.inv(&lc).expect("nonzero leading coefficient");
            num = r.scale(&num, &inv);
            den = r.scale(&den, &inv);
        }
        RatFun { num, den }
    }

    /// True when the element is a polynomial.
    pub fn is_polynomial(&self, a: &RatFun<B::Elem>) -> bool {
        self.ring.is_one(&a.den)
    }

    /// The base-field value when the element is constant.
    pub fn as_constant(&self, a: &RatFun<B::Elem>) -> Option<B::Elem> {
        if self.is_polynomial(a) && a.num.is_constant() {
            Some(self.ring.constant_term(&a.num))
        } else {
            None
        }
    }
}

impl<B: Field> Field for RationalFunctionField<B> {
    type Elem = RatFun<B::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_poly(self.ring.zero())
    }

    fn one(&self) -> Self::Elem {
        self.from_poly(self.ring.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.ring.is_one(&a.num) && self.ring.is_one(&a.den)
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.ring;
        if a.num.is_zero() {
            return b.clone();
        }
        if b.num.is_zero() {
            return a.clone();
        }
        if r.is_one(&a.den) && r.is_one(&b.den) {
            return self.from_poly(r.add(&a.num, &b.num));
        }
        let d = r.gcd(&a.den, &b.den).expect("nonzero denominators");
        if r.is_one(&d) {
            let num = r.add(&r.mul(&a.num, &b.den), &r.mul(&b.num, &a.den));
            return self.normalized(num, r.mul(&a.den, &b.den));
        }
        let ad = r.exact_div(&a.den, &d).unwrap().expect("gcd divides");
        let bd = r.exact_div(&b.den, &d).unwrap().expect("gcd divides");
        let num = r.add(&r.mul(&a.num, &bd), &r.mul(&b.num, &ad));
        if num.is_zero() {
            return self.zero();
        }
        let g = r.gcd(&num, &d).expect("nonzero denominator");
        let (num, d) = if r.is_one(&g) {
            (num, d)
        } else {
            (
                r.exact_div(&num, &g).unwrap().expect("gcd divides"),
                r.exact_div(&d, &g).unwrap().expect("gcd divides"),
            )
        };
        self.normalized(num, r.mul(&r.mul(&ad, &bd), &d))
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFun {
            num: self.ring.neg(&a.num),
            den: a.den.clone(),
        }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let r = &self.ring;
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        if r.is_one(&a.den) && r.is_one(&b.den) {
            return self.from_poly(r.mul(&a.num, &b.num));
        }
        let cancel = |n: &MPoly<B::Elem>, d: &MPoly<B::Elem>| {
            if r.is_one(d) {
                return (n.clone(), d.clone());
            }
            let g = r.gcd(n, d).expect("nonzero denominator");
            if r.is_one(&g) {
                (n.clone(), d.clone())
            } else {
                (
                    r.exact_div(n, &g).unwrap().expect("gcd divides"),
                    r.exact_div(d, &g).unwrap().expect("gcd divides"),
                )
            }
        };
        let (an, bd) = cancel(&a.num, &b.den);
        let (bn, ad) = cancel(&b.num, &a.den);
        self.normalized(r.mul(&an, &bn), r.mul(&ad, &bd))
    }

    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem> {
        if a.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        self.fraction(a.den.clone(), a.num.clone())
    }

    fn from_int(&self, n: &BigInt) -> Self::Elem {
        self.from_poly(self.ring.from_int(n))
    }

    fn characteristic(&self) -> u64 {
        self.ring.base.characteristic()
    }

    fn size(&self, a: &Self::Elem) -> ElemSize {
        self.ring.size(&a.num).join(self.ring.size(&a.den))
    }

    fn format(&self, a: &Self::Elem) -> String {
        let num = self.ring.format(&a.num, &self.vars);
        if self.ring.is_one(&a.den) {
            return num;
        }
        let den = self.ring.format(&a.den, &self.vars);
        let den = if den.contains('*') || den.contains('/') || den.contains('^') {
            format!("({den})")
        } else {
            as_factor(den)
        };
        format!("{}/{}", as_factor(num), den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteField;
    use crate::rational::Rationals;

    #[test]
    fn cancellation() {
        let k = RationalFunctionField::new(Rationals, vec!["x".into()]);
        let x = k.var(0);
        let num = k.sub(&k.mul(&x, &x), &k.one());
        let den = k.sub(&x, &k.one());
        let q = k.div(&num, &den).unwrap();
        assert_eq!(q, k.add(&x, &k.one()));
        assert_eq!(k.format(&q), "x+1");
    }

    #[test]
    fn inverse_over_gf5() {
        let k = RationalFunctionField::new(FiniteField::prime(5).unwrap(), vec!["x".into()]);
        let x = k.var(0);
        let xi = k.inv(&x).unwrap();
        assert!(k.is_one(&k.mul(&x, &xi)));
        assert_eq!(k.format(&xi), "1/x");
    }

    #[test]
    fn monic_denominator() {
        let k = RationalFunctionField::new(Rationals, vec!["x".into()]);
        let two_x = k.mul(&k.from_i64(2), &k.var(0));
        let f = k.inv(&two_x).unwrap();
        assert_eq!(k.format(&f), "1/2/x");
    }
}
