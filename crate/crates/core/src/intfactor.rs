//! Integer primality and factorization: trial division, Miller–Rabin and
//! Brent's variant of Pollard rho, all with fixed parameters so results are
//! reproducible.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A factored positive integer, primes ascending.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Factored {
    pub factors: BTreeMap<BigUint, u32>,
}

impl Factored {
    pub fn one() -> Self {
        Factored::default()
    }

    pub fn from_prime_power(p: BigUint, e: u32) -> Self {
        let mut f = Factored::default();
        if e > 0 {
            f.factors.insert(p, e);
        }
        f
    }

    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * p.pow(*e))
    }

    pub fn mul(&mut self, other: &Factored) {
        for (p, e) in &other.factors {
            *self.factors.entry(p.clone()).or_insert(0) += e;
        }
    }

    /// In-place least common multiple.
    pub fn lcm(&mut self, other: &Factored) {
        for (p, e) in &other.factors {
            let slot = self.factors.entry(p.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.keys()
    }
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller–Rabin with the first 20 primes as bases; exact below 3.3e24 and
/// a fixed-base probable-prime test beyond.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    const BASES: [u32; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    let one = BigUint::one();
    let nm1 = n - &one;
    for p in BASES {
        if (n % p).is_zero() {
            return false;
        }
    }
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    'witness: for a in BASES {
        let mut x = BigUint::from(a).modpow(&d, n);
        if x == one || x == nm1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == nm1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn next_prime_u64(mut n: u64) -> u64 {
    loop {
        n += 1;
        if is_prime_u64(n) {
            return n;
        }
    }
}

/// Brent–Pollard rho; returns a nontrivial factor of the composite `n` or
/// `None` when the iteration budget runs out.
fn rho(n: &BigUint, budget: &mut u64) -> Option<BigUint> {
    if n.is_even() {
        return Some(BigUint::from(2u32));
    }
    let one = BigUint::one();
    for c in 1u32..64 {
        let c = BigUint::from(c);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = BigUint::from(2u32);
        let mut r = 1u64;
        let mut q = BigUint::one();
        let mut g = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                let m = 128.min(r - k);
                for _ in 0..m {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (q * diff) % n;
                }
                g = q.gcd(n);
                k += m;
                *budget = budget.checked_sub(m)?;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g != one {
                    break;
                }
            }
        }
        if &g != n {
            return Some(g);
        }
    }
    None
}

/// Factors `n > 0`. `budget` bounds the total number of rho iterations.
pub fn factor(n: &BigUint, budget: u64) -> Result<Factored> {
    let mut out = Factored::one();
    if n.is_zero() {
        return Err(Error::InvalidInput("cannot factor zero".into()));
    }
    let mut m = n.clone();
    let mut p = 2u32;
    while p < 10_000 {
        if (&m % p).is_zero() {
            let mut e = 0;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            out.factors.insert(BigUint::from(p), e);
        }
        if BigUint::from(p) * p > m {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    let mut budget = budget;
    let mut stack = Vec::new();
    if m > BigUint::one() {
        stack.push(m);
    }
    while let Some(c) = stack.pop() {
        if is_prime(&c) {
            *out.factors.entry(c).or_insert(0) += 1;
            continue;
        }
        let d = rho(&c, &mut budget).ok_or_else(|| {
            Error::Resource(format!("factorization budget exhausted on {c}"))
        })?;
        let e = &c / &d;
        stack.push(d);
        stack.push(e);
    }
    Ok(out)
}

pub fn factor_u64(n: u64) -> Factored {
    factor(&BigUint::from(n), u64::MAX).expect("u64 factorization always completes")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(561));
        assert!(!is_prime_u64(1));
        assert!(is_prime(&BigUint::from(18446744073709551557u64)));
    }

    #[test]
    fn factors_semiprime() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(998_244_353u64);
        let f = factor(&n, 1 << 24).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert_eq!(f.value(), n);
    }

    #[test]
    fn factor_small() {
        let f = factor_u64(120);
        let expect: Vec<(u64, u32)> = vec![(2, 3), (3, 1), (5, 1)];
        let got: Vec<(u64, u32)> = f
            .factors
            .iter()
            .map(|(p, e)| (p.to_u64().unwrap(), *e))
            .collect();
        assert_eq!(got, expect);
    }
}
