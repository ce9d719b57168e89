//! Element orders in GL(n, q).

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::finite::{FiniteField, FqElem};
use crate::intfactor::{factor, Factored};
use crate::matrix::{self, Matrix};

/// Default bound on Pollard rho iterations per factorization.
pub const FACTOR_BUDGET: u64 = 1 << 22;

/// Cap on iterative powering when factorization gives up.
const POWERING_CAP: u64 = 1 << 22;

fn mobius(mut n: u64) -> i32 {
    let mut sign = 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

/// `Φ_d(p)` via Möbius inversion of `p^e - 1`.
fn cyclotomic_value(d: u64, p: u64) -> BigUint {
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for e in divisors(d) {
        let v = BigUint::from(p).pow(e as u32) - 1u32;
        match mobius(d / e) {
            1 => num *= v,
            -1 => den *= v,
            _ => {}
        }
    }
    num / den
}

/// Smallest `c` with `p^c >= n`.
fn ceil_log(p: u64, n: usize) -> u32 {
    let mut c = 0;
    let mut v: u128 = 1;
    while v < n as u128 {
        v *= p as u128;
        c += 1;
    }
    c
}

/// The unfactored exponent `p^⌈log_p n⌉ · lcm(q^i - 1 : 1 <= i <= n)`.
pub fn group_exponent(n: usize, k: &FiniteField) -> BigUint {
    let q = k.order();
    let mut e = BigUint::one();
    for i in 1..=n {
        e = e.lcm(&(q.pow(i as u32) - 1u32));
    }
    e * BigUint::from(k.p()).pow(ceil_log(k.p(), n))
}

/// Factored exponent of GL(n, q), assembled from cyclotomic values.
pub fn fq_group_exponent_factor(n: usize, k: &FiniteField, budget: u64) -> Result<Factored> {
    let p = k.p();
    let l = k.degree() as u64;
    let mut cache: BTreeMap<u64, Factored> = BTreeMap::new();
    let mut out = Factored::from_prime_power(BigUint::from(p), ceil_log(p, n));
    for i in 1..=n as u64 {
        let mut term = Factored::one();
        for d in divisors(l * i) {
            if let std::collections::btree_map::Entry::Vacant(e) = cache.entry(d) {
                let v = cyclotomic_value(d, p);
                let f = if v.is_one() { Factored::one() } else { factor(&v, budget)? };
                e.insert(f);
            }
            term.mul(&cache[&d]);
        }
        out.lcm(&term);
    }
    Ok(out)
}

pub fn pow_big(k: &FiniteField, m: &Matrix<FqElem>, e: &BigUint) -> Result<Matrix<FqElem>> {
    let mut acc = matrix::identity(k, m.n);
    for i in (0..e.bits()).rev() {
        acc = matrix::mul(k, &acc, &acc)?;
        if e.bit(i) {
            acc = matrix::mul(k, &acc, m)?;
        }
    }
    Ok(acc)
}

/// Exact multiplicative order of an invertible matrix over GF(q).
pub fn fq_matrix_order(k: &FiniteField, m: &Matrix<FqElem>) -> Result<BigUint> {
    if k.is_zero(&matrix::det(k, m)?) {
        return Err(Error::Singular);
    }
    match fq_group_exponent_factor(m.n, k, FACTOR_BUDGET) {
        Ok(e) => order_from_exponent(k, m, &e),
        Err(err) if err.is_resource() => order_by_powering(k, m),
        Err(err) => Err(err),
    }
}

/// Order of `m` given a factored multiple `e` of it.
pub fn order_from_exponent(k: &FiniteField, m: &Matrix<FqElem>, e: &Factored) -> Result<BigUint> {
    let mut d = e.value();
    if !matrix::is_identity(k, &pow_big(k, m, &d)?) {
        return Err(Error::Internal("exponent does not annihilate the matrix".into()));
    }
    for ell in e.primes() {
        while (&d % ell).is_zero() {
            let cand = &d / ell;
            if matrix::is_identity(k, &pow_big(k, m, &cand)?) {
                d = cand;
            } else {
                break;
            }
        }
    }
    Ok(d)
}

fn order_by_powering(k: &FiniteField, m: &Matrix<FqElem>) -> Result<BigUint> {
    let mut cur = m.clone();
    for i in 1..=POWERING_CAP {
        if matrix::is_identity(k, &cur) {
            return Ok(BigUint::from(i));
        }
        cur = matrix::mul(k, &cur, m)?;
    }
    Err(Error::Resource("matrix order exceeds the powering cap".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fm(k: &FiniteField, rows: &[&[u64]]) -> Matrix<FqElem> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| k.elem(x)).collect()).collect())
            .unwrap()
    }

    fn val(f: &Factored) -> u64 {
        f.value().try_into().unwrap()
    }

    #[test]
    fn exponents() {
        let g5 = FiniteField::prime(5).unwrap();
        let g7 = FiniteField::prime(7).unwrap();
        let g2 = FiniteField::prime(2).unwrap();
        let e = fq_group_exponent_factor(2, &g5, FACTOR_BUDGET).unwrap();
        assert_eq!(val(&e), 120);
        assert_eq!(val(&fq_group_exponent_factor(1, &g7, FACTOR_BUDGET).unwrap()), 6);
        assert_eq!(val(&fq_group_exponent_factor(3, &g2, FACTOR_BUDGET).unwrap()), 84);
        assert_eq!(group_exponent(3, &g2), BigUint::from(84u32));
    }

    #[test]
    fn orders() {
        let g5 = FiniteField::prime(5).unwrap();
        assert_eq!(fq_matrix_order(&g5, &matrix::identity(&g5, 2)).unwrap(), BigUint::one());
        assert_eq!(fq_matrix_order(&g5, &fm(&g5, &[&[0, 4], &[1, 0]])).unwrap(), BigUint::from(4u32));
        let g3 = FiniteField::prime(3).unwrap();
        assert_eq!(fq_matrix_order(&g3, &fm(&g3, &[&[1, 1], &[0, 1]])).unwrap(), BigUint::from(3u32));
        assert!(fq_matrix_order(&g3, &fm(&g3, &[&[1, 1], &[1, 1]])).is_err());
    }
}
