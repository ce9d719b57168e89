//! Factorization of univariate polynomials over finite fields:
//! squarefree decomposition, distinct-degree splitting and Cantor–Zassenhaus
//! equal-degree splitting driven by a fixed-seed generator.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::finite::{FiniteField, FqElem};
use crate::upoly::{self, Poly};

type FPoly = Poly<FiniteField>;

const SPLIT_SEED: u64 = 0x5151_ab1e_c0de_0001;

fn is_one_poly(k: &FiniteField, a: &FPoly) -> bool {
    a.len() == 1 && k.is_one(&a[0])
}

fn exact_div(k: &FiniteField, a: &FPoly, b: &FPoly) -> Result<FPoly> {
    let (q, r) = upoly::divrem(k, a, b)?;
    debug_assert!(r.is_empty());
    Ok(q)
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, m)` with
/// pairwise coprime squarefree `g`.
pub fn squarefree(k: &FiniteField, f: &FPoly) -> Result<Vec<(FPoly, u32)>> {
    let p = k.p() as usize;
    let mut out = Vec::new();
    if upoly::degree(f).unwrap_or(0) == 0 {
        return Ok(out);
    }
    let df = upoly::derivative(k, f);
    let mut c = upoly::gcd(k, f, &df)?;
    let mut w = exact_div(k, f, &c)?;
    let mut i = 1u32;
    while !is_one_poly(k, &w) {
        let y = upoly::gcd(k, &w, &c)?;
        let z = exact_div(k, &w, &y)?;
        if !is_one_poly(k, &z) {
            out.push((z, i));
        }
        i += 1;
        c = exact_div(k, &c, &y)?;
        w = y;
    }
    if !is_one_poly(k, &c) {
        // c is a polynomial in t^p.
        let root: FPoly = c
            .iter()
            .step_by(p)
            .map(|coef| k.pth_root(coef))
            .collect();
        for (g, m) in squarefree(k, &root)? {
            out.push((g, m * p as u32));
        }
    }
    Ok(out)
}

/// Splits a squarefree monic polynomial into products of irreducibles of
/// equal degree: pairs `(product, degree)`.
pub fn distinct_degree(k: &FiniteField, f: &FPoly) -> Result<Vec<(FPoly, usize)>> {
    let q = k.order();
    let mut out = Vec::new();
    let mut rest = f.clone();
    let t = upoly::x(k);
    let mut h = t.clone();
    let mut d = 1;
    while upoly::degree(&rest).unwrap_or(0) >= 2 * d {
        h = upoly::powmod(k, &h, &q, &rest)?;
        let g = upoly::gcd(k, &upoly::sub(k, &h, &t), &rest)?;
        if !is_one_poly(k, &g) {
            rest = exact_div(k, &rest, &g)?;
            h = upoly::rem(k, &h, &rest)?;
            out.push((g, d));
        }
        d += 1;
    }
    if upoly::degree(&rest).unwrap_or(0) > 0 {
        let deg = upoly::degree(&rest).unwrap();
        out.push((rest, deg));
    }
    Ok(out)
}

fn random_poly(k: &FiniteField, deg: usize, rng: &mut ChaCha8Rng) -> FPoly {
    let p = k.p();
    let coeffs = (0..deg)
        .map(|_| (0..k.degree()).map(|_| rng.gen_range(0..p)).collect::<FqElem>())
        .collect();
    upoly::trim(k, coeffs)
}

/// Splits a product of distinct irreducibles of degree `d` completely.
pub fn equal_degree(k: &FiniteField, f: &FPoly, d: usize) -> Result<Vec<FPoly>> {
    let n = upoly::degree(f).unwrap_or(0);
    if n == d {
        return Ok(vec![f.clone()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED ^ (n as u64) << 8 ^ d as u64);
    let q = k.order();
    let odd = k.p() != 2;
    let exp = if odd {
        (q.pow(d as u32) - BigUint::one()) >> 1
    } else {
        BigUint::one()
    };
    loop {
        let a = random_poly(k, n, &mut rng);
        if upoly::degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = if odd {
            let r = upoly::powmod(k, &a, &exp, f)?;
            upoly::sub(k, &r, &[k.one()])
        } else {
            // Absolute trace to GF(2): a + a^2 + ... + a^(2^(l*d - 1)).
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..(k.degree() * d) {
                cur = upoly::mulmod(k, &cur, &cur, f)?;
                acc = upoly::add(k, &acc, &cur);
            }
            acc
        };
        let g = upoly::gcd(k, &b, f)?;
        let dg = upoly::degree(&g).unwrap_or(0);
        if dg > 0 && dg < n {
            let other = exact_div(k, f, &g)?;
            let mut out = equal_degree(k, &g, d)?;
            out.extend(equal_degree(k, &other, d)?);
            return Ok(out);
        }
    }
}

/// Sort key: degree, then coefficient codes from the constant term up.
pub fn factor_key(k: &FiniteField, f: &FPoly) -> (usize, Vec<u128>) {
    (f.len(), f.iter().map(|c| k.encode(c)).collect())
}

/// Complete factorization of a nonzero polynomial into monic irreducibles
/// with multiplicities, sorted by [`factor_key`]. The leading unit is
/// dropped.
pub fn factor(k: &FiniteField, f: &FPoly) -> Result<Vec<(FPoly, u32)>> {
    if f.is_empty() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let f = upoly::monic(k, f)?;
    let mut out: Vec<(FPoly, u32)> = Vec::new();
    for (g, m) in squarefree(k, &f)? {
        for (h, d) in distinct_degree(k, &g)? {
            for irr in equal_degree(k, &h, d)? {
                out.push((irr, m));
            }
        }
    }
    out.sort_by_key(|(g, _)| factor_key(k, g));
    // Squarefree parts are coprime, so no merging is needed.
    Ok(out)
}

pub fn is_irreducible(k: &FiniteField, f: &FPoly) -> Result<bool> {
    if upoly::degree(f).unwrap_or(0) == 0 {
        return Ok(false);
    }
    let fs = factor(k, f)?;
    Ok(fs.len() == 1 && fs[0].1 == 1)
}

/// The first monic irreducible of degree `d` over `k`, scanning monic
/// polynomials with coefficient codes read as a number whose most
/// significant digit is the constant term.
pub fn first_irreducible(k: &FiniteField, d: usize) -> Result<FPoly> {
    let q = k
        .size_u128()
        .ok_or_else(|| Error::Resource("field too large to enumerate".into()))?;
    let total = q
        .checked_pow(d as u32)
        .ok_or_else(|| Error::Resource("too many candidate polynomials".into()))?;
    for code in 0..total {
        let mut c = code;
        let mut coeffs = vec![k.zero(); d];
        for slot in coeffs.iter_mut().rev() {
            *slot = k.decode(c % q);
            c /= q;
        }
        coeffs.push(k.one());
        if coeffs[0] == k.zero() && d > 1 {
            continue;
        }
        if is_irreducible(k, &coeffs)? {
            return Ok(coeffs);
        }
    }
    Err(Error::Internal(format!("no irreducible of degree {d}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(k: &FiniteField, cs: &[u64]) -> FPoly {
        upoly::trim(k, cs.iter().map(|&c| k.elem(c)).collect())
    }

    fn plain(f: &[(FPoly, u32)]) -> Vec<(Vec<u64>, u32)> {
        f.iter()
            .map(|(g, m)| (g.iter().map(|c| c[0]).collect(), *m))
            .collect()
    }

    fn brute_roots(p: u64, cs: &[u64]) -> Vec<u64> {
        (0..p)
            .filter(|&x| {
                let v = cs
                    .iter()
                    .rev()
                    .fold(0u128, |acc, &c| (acc * x as u128 + c as u128) % p as u128);
                v == 0
            })
            .collect()
    }

    #[test]
    fn t2_plus_1_over_gf5() {
        let k = FiniteField::prime(5).unwrap();
        let f = factor(&k, &poly(&k, &[1, 0, 1])).unwrap();
        assert_eq!(brute_roots(5, &[1, 0, 1]), vec![2, 3]);
        assert_eq!(plain(&f), vec![(vec![2, 1], 1), (vec![3, 1], 1)]);
    }

    #[test]
    fn t2_plus_1_over_gf3() {
        let k = FiniteField::prime(3).unwrap();
        assert!(brute_roots(3, &[1, 0, 1]).is_empty());
        let f = factor(&k, &poly(&k, &[1, 0, 1])).unwrap();
        assert_eq!(plain(&f), vec![(vec![1, 0, 1], 1)]);
    }

    #[test]
    fn repeated_root() {
        let k = FiniteField::prime(7).unwrap();
        let f = factor(&k, &poly(&k, &[0, 0, 1])).unwrap();
        assert_eq!(plain(&f), vec![(vec![0, 1], 2)]);
    }

    #[test]
    fn pth_power_part() {
        // (t+1)^4 * (t^2+t+1) over GF(2)
        let k = FiniteField::prime(2).unwrap();
        let a = upoly::pow(&k, &poly(&k, &[1, 1]), 4);
        let f = upoly::mul(&k, &a, &poly(&k, &[1, 1, 1]));
        let fs = factor(&k, &f).unwrap();
        assert_eq!(plain(&fs), vec![(vec![1, 1], 4), (vec![1, 1, 1], 1)]);
    }

    #[test]
    fn over_extension_field() {
        // t^2 + t + 1 splits over GF(4).
        let k = FiniteField::new(2, vec![1, 1, 1]).unwrap();
        let f = vec![k.one(), k.one(), k.one()];
        let fs = factor(&k, &f).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, m)| g.len() == 2 && *m == 1));
    }

    #[test]
    fn first_irreducibles() {
        let k = FiniteField::prime(2).unwrap();
        assert_eq!(
            first_irreducible(&k, 2).unwrap(),
            poly(&k, &[1, 1, 1])
        );
        let k3 = FiniteField::prime(3).unwrap();
        assert_eq!(first_irreducible(&k3, 2).unwrap(), poly(&k3, &[1, 0, 1]));
    }
}
