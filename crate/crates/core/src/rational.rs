//! The rational numbers as a [`Field`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::field::{ElemSize, Field};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            Err(Error::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }

    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn size(&self, a: &BigRational) -> ElemSize {
        ElemSize::scalar(a.numer().bits().max(a.denom().bits()))
    }

    fn format(&self, a: &BigRational) -> String {
        format_rational(a)
    }
}

pub fn format_rational(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Least common multiple of the denominators, always positive.
pub fn lcm_denominators<'a>(values: impl IntoIterator<Item = &'a BigRational>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()))
}

/// Reduces a rational modulo `p`; `None` when `p` divides the denominator.
pub fn reduce_mod(a: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let num = mod_nonneg(a.numer(), &pb);
    let den = mod_nonneg(a.denom(), &pb);
    if den == 0 {
        return None;
    }
    let inv = inv_mod(den, p)?;
    Some(((num as u128 * inv as u128) % p as u128) as u64)
}

pub fn mod_nonneg(a: &BigInt, m: &BigInt) -> u64 {
    let r = a.mod_floor(m);
    u64::try_from(r).expect("residue fits in u64")
}

/// Inverse modulo `p` by the extended Euclidean algorithm.
pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128 % p as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(p as i128) as u64)
}

pub fn is_integral(a: &BigRational) -> bool {
    a.denom().is_one()
}

pub fn abs_bits(a: &BigInt) -> u64 {
    a.abs().bits()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sum_of_halves_and_thirds() {
        let q = Rationals;
        assert_eq!(q.add(&rat(1, 2), &rat(1, 3)), rat(5, 6));
    }

    #[test]
    fn reduction_mod_p() {
        assert_eq!(reduce_mod(&rat(1, 2), 5), Some(3));
        assert_eq!(reduce_mod(&rat(-1, 1), 5), Some(4));
        assert_eq!(reduce_mod(&rat(1, 5), 5), None);
        assert_eq!(inv_mod(3, 7), Some(5));
    }

    #[test]
    fn formatting() {
        assert_eq!(format_rational(&rat(3, 6)), "1/2");
        assert_eq!(format_rational(&rat(-4, 2)), "-2");
    }
}
