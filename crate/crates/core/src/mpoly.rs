//! Sparse multivariate polynomials over a field, graded-lexicographic order.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::{join_terms, ElemSize, Field};
use crate::upoly;

/// Exponent vector ordered graded-lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(m: usize) -> Self {
        Mono(vec![0; m])
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Mono)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Nonzero terms keyed by monomial; the leading term is the last entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly<E> {
    pub terms: BTreeMap<Mono, E>,
}

impl<E> MPoly<E> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Mono, &E)> {
        self.terms.iter().next_back()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.total() == 0)
    }
}

/// The polynomial ring `B[x_1, ..., x_m]`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyRing<B: Field> {
    pub base: B,
    pub nvars: usize,
}

impl<B: Field> PolyRing<B> {
    pub fn new(base: B, nvars: usize) -> Self {
        PolyRing { base, nvars }
    }

    pub fn zero(&self) -> MPoly<B::Elem> {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: B::Elem) -> MPoly<B::Elem> {
        let mut p = self.zero();
        if !self.base.is_zero(&c) {
            p.terms.insert(Mono::one(self.nvars), c);
        }
        p
    }

    pub fn one(&self) -> MPoly<B::Elem> {
        self.constant(self.base.one())
    }

    pub fn from_int(&self, n: &BigInt) -> MPoly<B::Elem> {
        self.constant(self.base.from_int(n))
    }

    pub fn var(&self, i: usize) -> MPoly<B::Elem> {
        let mut e = vec![0; self.nvars];
        e[i] = 1;
        self.monomial(Mono(e), self.base.one())
    }

    pub fn monomial(&self, m: Mono, c: B::Elem) -> MPoly<B::Elem> {
        let mut p = self.zero();
        if !self.base.is_zero(&c) {
            p.terms.insert(m, c);
        }
        p
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self, a: &MPoly<B::Elem>) -> B::Elem {
        a.terms
            .get(&Mono::one(self.nvars))
            .cloned()
            .unwrap_or_else(|| self.base.zero())
    }

    pub fn is_one(&self, a: &MPoly<B::Elem>) -> bool {
        a.len() == 1 && a.is_constant() && self.base.is_one(a.leading().unwrap().1)
    }

    fn add_term(&self, p: &mut MPoly<B::Elem>, m: Mono, c: B::Elem) {
        use std::collections::btree_map::Entry;
        match p.terms.entry(m) {
            Entry::Vacant(v) => {
                if !self.base.is_zero(&c) {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = self.base.add(o.get(), &c);
                if self.base.is_zero(&s) {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, a: &MPoly<B::Elem>, b: &MPoly<B::Elem>) -> MPoly<B::Elem> {
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            self.add_term(&mut out, m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self, a: &MPoly<B::Elem>) -> MPoly<B::Elem> {
        MPoly {
            terms: a
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), self.base.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, a: &MPoly<B::Elem>, b: &MPoly<B::Elem>) -> MPoly<B::Elem> {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut out, m.clone(), self.base.neg(c));
        }
        out
    }

    pub fn scale(&self, a: &MPoly<B::Elem>, c: &B::Elem) -> MPoly<B::Elem> {
        if self.base.is_zero(c) {
            return self.zero();
        }
        MPoly {
            terms: a
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), self.base.mul(x, c)))
                .collect(),
        }
    }

    pub fn mul(&self, a: &MPoly<B::Elem>, b: &MPoly<B::Elem>) -> MPoly<B::Elem> {
        let mut out = self.zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                self.add_term(&mut out, ma.mul(mb), self.base.mul(ca, cb));
            }
        }
        out
    }

    fn mul_term(&self, a: &MPoly<B::Elem>, m: &Mono, c: &B::Elem) -> MPoly<B::Elem> {
        MPoly {
            terms: a
                .terms
                .iter()
                .map(|(ma, ca)| (ma.mul(m), self.base.mul(ca, c)))
                .collect(),
        }
    }

    pub fn pow(&self, a: &MPoly<B::Elem>, mut e: u64) -> MPoly<B::Elem> {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            e >>= 1;
            if e > 0 {
                b = self.mul(&b, &b);
            }
        }
        acc
    }

    /// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
    pub fn exact_div(&self, a: &MPoly<B::Elem>, b: &MPoly<B::Elem>) -> Result<Option<MPoly<B::Elem>>> {
        let (mb, cb) = b.leading().ok_or(Error::DivisionByZero)?;
        let inv = self.base.inv(cb)?;
        let mut q = self.zero();
        let mut r = a.clone();
        while let Some((mr, cr)) = r.leading() {
            let Some(m) = mr.div(mb) else {
                return Ok(None);
            };
            let c = self.base.mul(cr, &inv);
            r = self.sub(&r, &self.mul_term(b, &m, &c));
            q.terms.insert(m, c);
        }
        Ok(Some(q))
    }

    fn exact_div_known(&self, a: &MPoly<B::Elem>, b: &MPoly<B::Elem>) -> Result<MPoly<B::Elem>> {
        self.exact_div(a, b)?
            .ok_or_else(|| Error::Internal("inexact polynomial division".into()))
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self, a: &MPoly<B::Elem>) -> Result<MPoly<B::Elem>> {
        match a.leading() {
            None => Ok(a.clone()),
            Some((_, c)) if self.base.is_one(c) => Ok(a.clone()),
            Some((_, c)) => Ok(self.scale(a, &self.base.inv(c)?)),
        }
    }

    pub fn degree_in(&self, a: &MPoly<B::Elem>, v: usize) -> u32 {
        a.terms.keys().map(|m| m.0[v]).max().unwrap_or(0)
    }

    pub fn total_degree(&self, a: &MPoly<B::Elem>) -> u64 {
        a.leading().map(|(m, _)| m.total()).unwrap_or(0)
    }

    /// Coefficient of `x_v^k`, as a polynomial not involving `x_v`.
    pub fn coeff_in(&self, a: &MPoly<B::Elem>, v: usize, k: u32) -> MPoly<B::Elem> {
        MPoly {
            terms: a
                .terms
                .iter()
                .filter(|(m, _)| m.0[v] == k)
                .map(|(m, c)| {
                    let mut e = m.clone();
                    e.0[v] = 0;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    fn shift_in(&self, a: &MPoly<B::Elem>, v: usize, k: u32) -> MPoly<B::Elem> {
        let mut e = vec![0; self.nvars];
        e[v] = k;
        self.mul_term(a, &Mono(e), &self.base.one())
    }

    fn only_var(&self, a: &MPoly<B::Elem>, v: usize) -> bool {
        a.terms
            .keys()
            .all(|m| m.0.iter().enumerate().all(|(i, &e)| i == v || e == 0))
    }

    /// Coefficients in `x_v`, constant first, for a polynomial in `x_v` only.
    fn dense_in(&self, a: &MPoly<B::Elem>, v: usize) -> Vec<B::Elem> {
        let mut out = vec![self.base.zero(); self.degree_in(a, v) as usize + 1];
        for (m, c) in &a.terms {
            out[m.0[v] as usize] = c.clone();
        }
        out
    }

    fn poly_from_dense(&self, a: &[B::Elem], v: usize) -> MPoly<B::Elem> {
        let mut p = self.zero();
        for (k, c) in a.iter().enumerate() {
            if !self.base.is_zero(c) {
                let mut e = vec![0; self.nvars];
                e[v] = k as u32;
                p.terms.insert(Mono(e), c.clone());
            }
        }
        p
    }

    fn lowest_var(&self, a: &MPoly<B::Elem>, b: &MPoly<B::Elem>) -> Option<usize> {
        (0..self.nvars).find(|&v| {
            a.terms.keys().chain(b.terms.keys()).any(|m| m.0[v] > 0)
        })
    }

    /// Gcd of the coefficients of `a` viewed as a polynomial in `x_v`.
    fn content_in(&self, a: &MPoly<B::Elem>, v: usize) -> Result<MPoly<B::Elem>> {
        let mut g = self.zero();
        for k in (0..=self.degree_in(a, v)).rev() {
            let c = self.coeff_in(a, v, k);
            if c.is_zero() {
                continue;
            }
            g = self.gcd(&g, &c)?;
            if self.is_one(&g) {
                break;
            }
        }
        Ok(g)
    }

    fn primitive_in(&self, a: &MPoly<B::Elem>, v: usize) -> Result<MPoly<B::Elem>> {
        if a.is_zero() {
            return Ok(a.clone());
        }
        let c = self.content_in(a, v)?;
        let p = self.exact_div_known(a, &c)?;
        self.monic(&p)
    }

    /// Pseudo-remainder of `a` by `b` as polynomials in `x_v`.
    fn prem_in(&self, a: &MPoly<B::Elem>, b: &MPoly<B::Elem>, v: usize) -> MPoly<B::Elem> {
        let db = self.degree_in(b, v);
        let lb = self.coeff_in(b, v, db);
        let mut r = a.clone();
        while !r.is_zero() {
            let dr = self.degree_in(&r, v);
            if dr < db {
                break;
            }
            let lr = self.coeff_in(&r, v, dr);
            let t = self.shift_in(&self.mul(&lr, b), v, dr - db);
            r = self.sub(&self.mul(&lb, &r), &t);
        }
        r
    }

    /// Greatest common divisor, normalized to leading coefficient one.
    pub fn gcd(&self, a: &MPoly<B::Elem>, b: &MPoly<B::Elem>) -> Result<MPoly<B::Elem>> {
        if a.is_zero() {
            return self.monic(b);
        }
        if b.is_zero() {
            return self.monic(a);
        }
        let Some(v) = self.lowest_var(a, b) else {
            return Ok(self.one());
        };
        if self.only_var(a, v) && self.only_var(b, v) {
            let g = upoly::gcd(&self.base, &self.dense_in(a, v), &self.dense_in(b, v))?;
            return Ok(self.poly_from_dense(&g, v));
        }
        let ca = self.content_in(a, v)?;
        let cb = self.content_in(b, v)?;
        let c = self.gcd(&ca, &cb)?;
        let mut pa = self.monic(&self.exact_div_known(a, &ca)?)?;
        let mut pb = self.monic(&self.exact_div_known(b, &cb)?)?;
        if self.degree_in(&pa, v) < self.degree_in(&pb, v) {
            std::mem::swap(&mut pa, &mut pb);
        }
        while !pb.is_zero() {
            if self.degree_in(&pb, v) == 0 {
                pa = self.one();
                break;
            }
            let r = self.prem_in(&pa, &pb, v);
            pa = pb;
            pb = self.primitive_in(&r, v)?;
        }
        let g = self.primitive_in(&pa, v)?;
        self.monic(&self.mul(&g, &c))
    }

    pub fn lcm(&self, a: &MPoly<B::Elem>, b: &MPoly<B::Elem>) -> Result<MPoly<B::Elem>> {
        if a.is_zero() || b.is_zero() {
            return Ok(self.zero());
        }
        let g = self.gcd(a, b)?;
        let q = self.exact_div_known(a, &g)?;
        self.monic(&self.mul(&q, b))
    }

    /// Evaluates at a point of a field `G`, mapping coefficients with `map`.
    pub fn eval<G: Field>(
        &self,
        a: &MPoly<B::Elem>,
        target: &G,
        point: &[G::Elem],
        map: &dyn Fn(&B::Elem) -> Result<G::Elem>,
    ) -> Result<G::Elem> {
        let mut acc = target.zero();
        let mut cache: Vec<Vec<G::Elem>> = point.iter().map(|p| vec![target.one(), p.clone()]).collect();
        for (m, c) in &a.terms {
            let mut term = map(c)?;
            for (v, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[v];
                while powers.len() <= e as usize {
                    let next = target.mul(powers.last().unwrap(), &point[v]);
                    powers.push(next);
                }
                term = target.mul(&term, &powers[e as usize]);
            }
            acc = target.add(&acc, &term);
        }
        Ok(acc)
    }

    /// Applies a coefficient map into another polynomial ring with the same variables.
    pub fn map_coeffs<C: Field>(
        &self,
        a: &MPoly<B::Elem>,
        target: &PolyRing<C>,
        map: &dyn Fn(&B::Elem) -> Result<C::Elem>,
    ) -> Result<MPoly<C::Elem>> {
        let mut out = target.zero();
        for (m, c) in &a.terms {
            let d = map(c)?;
            if !target.base.is_zero(&d) {
                out.terms.insert(m.clone(), d);
            }
        }
        Ok(out)
    }

    pub fn size(&self, a: &MPoly<B::Elem>) -> ElemSize {
        a.terms
            .values()
            .map(|c| self.base.size(c))
            .fold(ElemSize::default(), ElemSize::join)
    }

    pub fn format(&self, a: &MPoly<B::Elem>, vars: &[String]) -> String {
        let terms = a
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono = m
                    .0
                    .iter()
                    .zip(vars)
                    .filter(|(e, _)| **e > 0)
                    .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
                    .collect::<Vec<_>>()
                    .join("*");
                (self.base.format(c), mono)
            })
            .collect();
        join_terms(terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite::FiniteField;
    use crate::rational::{int, Rationals};

    fn names(n: usize) -> Vec<String> {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn grlex_order() {
        let a = Mono(vec![1, 0]);
        let b = Mono(vec![0, 2]);
        let c = Mono(vec![0, 1]);
        assert!(b > a && a > c);
    }

    #[test]
    fn gcd_univariate() {
        let r = PolyRing::new(Rationals, 1);
        let x = r.var(0);
        let one = r.one();
        let a = r.sub(&r.mul(&x, &x), &one);
        let b = r.sub(&x, &one);
        assert_eq!(r.gcd(&a, &b).unwrap(), b);
        assert_eq!(r.exact_div(&a, &b).unwrap().unwrap(), r.add(&x, &one));
    }

    #[test]
    fn gcd_bivariate() {
        let r = PolyRing::new(Rationals, 2);
        let x = r.var(0);
        let y = r.var(1);
        let g = r.add(&r.mul(&x, &y), &r.constant(int(3)));
        let a = r.mul(&g, &r.add(&x, &y));
        let b = r.mul(&g, &r.sub(&r.mul(&x, &x), &y));
        let expect = r.monic(&g).unwrap();
        assert_eq!(r.gcd(&a, &b).unwrap(), expect);
        assert_eq!(r.format(&expect, &names(2)), "x*y+3");
    }

    #[test]
    fn gcd_over_gf2() {
        let k = FiniteField::prime(2).unwrap();
        let r = PolyRing::new(k, 1);
        let x = r.var(0);
        let a = r.add(&r.mul(&x, &x), &x);
        let b = r.add(&x, &r.one());
        assert_eq!(r.gcd(&a, &b).unwrap(), b);
    }

    #[test]
    fn format_negative_leading() {
        let r = PolyRing::new(Rationals, 2);
        let x = r.var(0);
        let a = r.sub(&r.one(), &r.mul(&x, &x));
        assert_eq!(r.format(&a, &names(2)), "-1*x^2+1");
    }
}
