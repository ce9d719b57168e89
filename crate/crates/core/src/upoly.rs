//! Dense univariate polynomials over any [`Field`].
//!
//! A polynomial is a coefficient vector, constant term first, with no
//! trailing zeros; the zero polynomial is the empty vector.

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::field::Field;

pub type Poly<F> = Vec<<F as Field>::Elem>;

pub fn trim<F: Field>(k: &F, mut a: Poly<F>) -> Poly<F> {
    while a.last().is_some_and(|c| k.is_zero(c)) {
        a.pop();
    }
    a
}

pub fn degree<T>(a: &[T]) -> Option<usize> {
    a.len().checked_sub(1)
}

pub fn constant<F: Field>(k: &F, c: F::Elem) -> Poly<F> {
    trim(k, vec![c])
}

/// The monomial `t`.
pub fn x<F: Field>(k: &F) -> Poly<F> {
    vec![k.zero(), k.one()]
}

pub fn add<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => k.add(x, y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        })
        .collect();
    trim(k, out)
}

pub fn neg<F: Field>(k: &F, a: &[F::Elem]) -> Poly<F> {
    a.iter().map(|c| k.neg(c)).collect()
}

pub fn sub<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    add(k, a, &neg(k, b))
}

pub fn scale<F: Field>(k: &F, a: &[F::Elem], c: &F::Elem) -> Poly<F> {
    if k.is_zero(c) {
        return Vec::new();
    }
    trim(k, a.iter().map(|x| k.mul(x, c)).collect())
}

pub fn mul<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Poly<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if k.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(x, y));
        }
    }
    trim(k, out)
}

pub fn divrem<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<(Poly<F>, Poly<F>)> {
    let db = degree(b).ok_or(Error::DivisionByZero)?;
    let lead_inv = k.inv(&b[db])?;
    let mut r: Poly<F> = a.to_vec();
    if r.len() <= db {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![k.zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = k.mul(&r[dr], &lead_inv);
        let shift = dr - db;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] = k.sub(&r[shift + j], &k.mul(&c, y));
        }
        q[shift] = c;
        r.pop();
        r = trim(k, r);
    }
    Ok((trim(k, q), r))
}

pub fn rem<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Poly<F>> {
    Ok(divrem(k, a, b)?.1)
}

pub fn monic<F: Field>(k: &F, a: &[F::Elem]) -> Result<Poly<F>> {
    match a.last() {
        None => Ok(Vec::new()),
        Some(lc) => Ok(scale(k, a, &k.inv(lc)?)),
    }
}

/// Monic greatest common divisor; gcd(0, 0) = 0.
pub fn gcd<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem]) -> Result<Poly<F>> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    while !b.is_empty() {
        let r = rem(k, &a, &b)?;
        a = b;
        b = r;
    }
    monic(k, &a)
}

/// Returns `(g, s, t)` with `s*a + t*b = g` and `g` the monic gcd.
pub fn xgcd<F: Field>(
    k: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> Result<(Poly<F>, Poly<F>, Poly<F>)> {
    let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
    let (mut s0, mut s1) = (vec![k.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![k.one()]);
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1)?;
        let s2 = sub(k, &s0, &mul(k, &q, &s1));
        let t2 = sub(k, &t0, &mul(k, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        None => Ok((Vec::new(), s0, t0)),
        Some(lc) => {
            let inv = k.inv(lc)?;
            Ok((scale(k, &r0, &inv), scale(k, &s0, &inv), scale(k, &t0, &inv)))
        }
    }
}

pub fn derivative<F: Field>(k: &F, a: &[F::Elem]) -> Poly<F> {
    let out = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
        .collect();
    trim(k, out)
}

/// Horner evaluation at a point of the same field.
pub fn eval<F: Field>(k: &F, a: &[F::Elem], at: &F::Elem) -> F::Elem {
    a.iter()
        .rev()
        .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, at), c))
}

/// Evaluates `a` after mapping each coefficient into the field `target`.
pub fn eval_mapped<F: Field, G: Field>(
    target: &G,
    a: &[F::Elem],
    map: impl Fn(&F::Elem) -> Result<G::Elem>,
    at: &G::Elem,
) -> Result<G::Elem> {
    let mut acc = target.zero();
    for c in a.iter().rev() {
        acc = target.add(&target.mul(&acc, at), &map(c)?);
    }
    Ok(acc)
}

pub fn mulmod<F: Field>(k: &F, a: &[F::Elem], b: &[F::Elem], m: &[F::Elem]) -> Result<Poly<F>> {
    rem(k, &mul(k, a, b), m)
}

pub fn powmod<F: Field>(k: &F, base: &[F::Elem], e: &BigUint, m: &[F::Elem]) -> Result<Poly<F>> {
    let mut acc = constant(k, k.one());
    if e.is_zero() {
        return rem(k, &acc, m);
    }
    let b = rem(k, base, m)?;
    for i in (0..e.bits()).rev() {
        acc = mulmod(k, &acc, &acc, m)?;
        if e.bit(i) {
            acc = mulmod(k, &acc, &b, m)?;
        }
    }
    Ok(acc)
}

pub fn pow<F: Field>(k: &F, base: &[F::Elem], mut e: u32) -> Poly<F> {
    let mut acc = constant(k, k.one());
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(k, &acc, &b);
        }
        e >>= 1;
        if e > 0 {
            b = mul(k, &b, &b);
        }
    }
    acc
}

/// Renders a polynomial in the variable `var` in parser syntax.
pub fn format<F: Field>(k: &F, a: &[F::Elem], var: &str) -> String {
    let terms = a
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, c)| !k.is_zero(c))
        .map(|(i, c)| {
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            (k.format(c), mono)
        })
        .collect();
    crate::field::join_terms(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat, Rationals};

    #[test]
    fn division_identity() {
        let q = Rationals;
        let a = vec![int(-1), int(0), int(0), int(1)];
        let b = vec![int(-1), int(1)];
        let (quo, r) = divrem(&q, &a, &b).unwrap();
        assert!(r.is_empty());
        assert_eq!(quo, vec![int(1), int(1), int(1)]);
    }

    #[test]
    fn xgcd_bezout() {
        let q = Rationals;
        let a = vec![int(1), int(0), int(1)];
        let b = vec![int(1), int(1)];
        let (g, s, t) = xgcd(&q, &a, &b).unwrap();
        assert_eq!(g, vec![int(1)]);
        let lhs = add(&q, &mul(&q, &s, &a), &mul(&q, &t, &b));
        assert_eq!(lhs, g);
    }

    #[test]
    fn format_round_shape() {
        let q = Rationals;
        let a = vec![rat(-1, 2), int(0), int(-1)];
        assert_eq!(format(&q, &a, "t"), "-1*t^2-1/2");
    }
}
