//! Integer and rational univariate polynomials: subresultant resultants,
//! discriminants, factorization over ℚ and minimal-polynomial normalization.
//!
//! Factorization over ℚ uses one prime larger than twice the Mignotte bound
//! and recombines the modular factors directly, so no Hensel lifting is
//! needed at the small degrees this crate works with.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::finite::FiniteField;
use crate::intfactor::is_prime_u64;
use crate::rational::{lcm_denominators, Rationals};
use crate::upoly;

pub type ZPoly = Vec<BigInt>;
pub type QPoly = Vec<BigRational>;

/// Largest degree accepted by [`factor_over_q`].
pub const MAX_FACTOR_DEGREE: usize = 16;

pub fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
}

/// Divides by the content and makes the leading coefficient positive.
pub fn primitive_part(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let c = if a.last().is_some_and(|l| l.is_negative()) {
        -c
    } else {
        c
    };
    a.iter().map(|x| x / &c).collect()
}

/// Scales a rational polynomial to a primitive integer polynomial.
pub fn to_primitive_integer(a: &[BigRational]) -> ZPoly {
    let d = lcm_denominators(a);
    let ints: ZPoly = a
        .iter()
        .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
        .collect();
    primitive_part(&ztrim(ints))
}

pub fn to_rational(a: &[BigInt]) -> QPoly {
    a.iter().map(|c| BigRational::from_integer(c.clone())).collect()
}

fn zscale(a: &[BigInt], c: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|x| x * c).collect())
}

/// Pseudo-remainder: `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    let mut steps = (a.len() as isize) - (b.len() as isize) + 1;
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - 1 - db;
        r = r.iter().map(|x| x * lb).collect();
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &lr * y;
        }
        r.pop();
        r = ztrim(r);
        steps -= 1;
    }
    // Apply the remaining powers so the multiplier is exactly lc^(delta+1).
    while steps > 0 {
        r = zscale(&r, lb);
        steps -= 1;
    }
    r
}

fn exact_div_scalar(a: &[BigInt], c: &BigInt) -> ZPoly {
    a.iter()
        .map(|x| {
            debug_assert!((x % c).is_zero());
            x / c
        })
        .collect()
}

/// Resultant by the subresultant algorithm.
pub fn resultant(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let a = ztrim(a.to_vec());
    let b = ztrim(b.to_vec());
    if a.is_empty() || b.is_empty() {
        return BigInt::zero();
    }
    let (mut a, mut b) = (a, b);
    let mut s = BigInt::one();
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
        if (a.len() - 1) % 2 == 1 && (b.len() - 1) % 2 == 1 {
            s = -s;
        }
    }
    let ca = content(&a);
    let cb = content(&b);
    let t = ca.pow((b.len() - 1) as u32) * cb.pow((a.len() - 1) as u32);
    let mut a = exact_div_scalar(&a, &ca);
    let mut b = exact_div_scalar(&b, &cb);
    let mut g = BigInt::one();
    let mut h = BigInt::one();
    loop {
        let da = a.len() - 1;
        let db = b.len() - 1;
        if db == 0 {
            // h^(1 - da) * lc(b)^da
            let lb = b[0].clone();
            if da == 0 {
                return s * t;
            }
            let num = lb.pow(da as u32);
            let den = h.pow((da - 1) as u32);
            return s * t * (num / den);
        }
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            s = -s;
        }
        let r = prem(&a, &b);
        if r.is_empty() {
            return BigInt::zero();
        }
        a = b;
        let divisor = &g * h.pow(delta as u32);
        b = exact_div_scalar(&r, &divisor);
        g = a.last().unwrap().clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32) / h.pow((delta - 1) as u32)
        };
    }
}

pub fn derivative(a: &[BigInt]) -> ZPoly {
    ztrim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// `disc(f) = (-1)^(k(k-1)/2) Res(f, f') / lc(f)`.
pub fn discriminant(f: &[BigInt]) -> Result<BigInt> {
    let f = ztrim(f.to_vec());
    let k = f.len().saturating_sub(1);
    if k < 1 {
        return Err(Error::InvalidInput("discriminant needs degree >= 1".into()));
    }
    if k == 1 {
        return Ok(BigInt::one());
    }
    let res = resultant(&f, &derivative(&f));
    let sign = if (k * (k - 1) / 2) % 2 == 1 { -1 } else { 1 };
    Ok(BigInt::from(sign) * res / f.last().unwrap())
}

fn exact_zdiv(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return if r.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let lr = r.last().unwrap();
        let (c, rem) = lr.div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = r.len() - 1 - db;
        for (j, y) in b.iter().enumerate() {
            r[shift + j] -= &c * y;
        }
        q[shift] = c;
        r.pop();
        r = ztrim(r);
    }
    if r.is_empty() {
        Some(ztrim(q))
    } else {
        None
    }
}

fn symmetric(c: u64, p: u64) -> BigInt {
    if c > p / 2 {
        BigInt::from(c) - BigInt::from(p)
    } else {
        BigInt::from(c)
    }
}

/// Factors a squarefree primitive integer polynomial into primitive
/// irreducibles (positive leading coefficients).
fn factor_squarefree_z(g: &[BigInt]) -> Result<Vec<ZPoly>> {
    let deg = g.len() - 1;
    if deg <= 1 {
        return Ok(vec![g.to_vec()]);
    }
    if deg > MAX_FACTOR_DEGREE {
        return Err(Error::Resource(format!(
            "factorization over Q supports degree <= {MAX_FACTOR_DEGREE}"
        )));
    }
    let norm2: BigInt = g.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + BigInt::one();
    let lc = g.last().unwrap().abs();
    let bound = BigInt::from(2) * &lc * (BigInt::one() << deg) * norm;
    let start = bound.to_u64().filter(|&b| b < (1u64 << 62)).ok_or_else(|| {
        Error::Resource("coefficients too large for factorization over Q".into())
    })?;
    let mut p = start.max(3);
    let (field, modular) = loop {
        p += 1;
        if !is_prime_u64(p) {
            continue;
        }
        let k = FiniteField::prime(p)?;
        let gp: Vec<_> = g.iter().map(|c| k.from_int(c)).collect();
        let gp = upoly::trim(&k, gp);
        if gp.len() != g.len() {
            continue;
        }
        let dg = upoly::derivative(&k, &gp);
        if upoly::gcd(&k, &gp, &dg)?.len() != 1 {
            continue;
        }
        let fs = crate::fqfactor::factor(&k, &gp)?;
        break (k, fs.into_iter().map(|(f, _)| f).collect::<Vec<_>>());
    };
    let mut remaining = g.to_vec();
    let mut pool = modular;
    let mut found = Vec::new();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut hit = None;
        for subset in combinations(pool.len(), size) {
            let lcr = remaining.last().unwrap().clone();
            let mut prod = vec![field.from_int(&lcr)];
            for &i in &subset {
                prod = upoly::mul(&field, &prod, &pool[i]);
            }
            let cand: ZPoly = prod.iter().map(|c| symmetric(c[0], p)).collect();
            let cand = primitive_part(&ztrim(cand));
            if let Some(q) = exact_zdiv(&remaining, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                remaining = q;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, f)| f)
                    .collect();
            }
            None => size += 1,
        }
    }
    found.push(primitive_part(&remaining));
    Ok(found)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Sort key for rational polynomials: degree, then coefficients from the
/// constant term up.
pub fn qpoly_cmp(a: &QPoly, b: &QPoly) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

/// Factors a nonzero rational polynomial into monic irreducibles over ℚ with
/// multiplicities, sorted by degree then coefficients.
pub fn factor_over_q(f: &[BigRational]) -> Result<Vec<(QPoly, u32)>> {
    let q = Rationals;
    let f = upoly::trim(&q, f.to_vec());
    if f.is_empty() {
        return Err(Error::InvalidInput("cannot factor the zero polynomial".into()));
    }
    let f = upoly::monic(&q, &f)?;
    let mut out = Vec::new();
    // Yun's squarefree decomposition (characteristic zero).
    let df = upoly::derivative(&q, &f);
    let mut a = upoly::gcd(&q, &f, &df)?;
    let mut b = upoly::divrem(&q, &f, &a)?.0;
    let mut c = upoly::divrem(&q, &df, &a)?.0;
    let mut d = upoly::sub(&q, &c, &upoly::derivative(&q, &b));
    let mut i = 1u32;
    while upoly::degree(&b).unwrap_or(0) > 0 {
        a = upoly::gcd(&q, &b, &d)?;
        if upoly::degree(&a).unwrap_or(0) > 0 {
            let z = to_primitive_integer(&a);
            for irr in factor_squarefree_z(&z)? {
                out.push((upoly::monic(&q, &to_rational(&irr))?, i));
            }
        }
        b = upoly::divrem(&q, &b, &a)?.0;
        c = upoly::divrem(&q, &d, &a)?.0;
        d = upoly::sub(&q, &c, &upoly::derivative(&q, &b));
        i += 1;
    }
    out.sort_by(|x, y| qpoly_cmp(&x.0, &y.0));
    Ok(out)
}

/// Normalized number-field defining polynomial: `f̃(t) = d^k f(t/d)` is
/// monic with integer coefficients and has root `d·α`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedMinpoly {
    pub poly: ZPoly,
    pub scale: BigInt,
}

/// Makes `f` monic, rescales its root to an algebraic integer and checks
/// irreducibility over ℚ. A reducible input is rejected with a factor
/// written in the original variable.
pub fn normalize_minpoly(coeffs: &[BigRational]) -> Result<NormalizedMinpoly> {
    let q = Rationals;
    let f = upoly::trim(&q, coeffs.to_vec());
    let k = upoly::degree(&f)
        .filter(|&k| k >= 1)
        .ok_or_else(|| Error::InvalidField("minimal polynomial must have degree >= 1".into()))?;
    let f = upoly::monic(&q, &f)?;
    let d = lcm_denominators(&f);
    let dq = BigRational::from_integer(d.clone());
    let scaled: ZPoly = f
        .iter()
        .enumerate()
        .map(|(i, c)| (c * dq.pow((k - i) as i32)).to_integer())
        .collect();
    let factors = factor_over_q(&to_rational(&scaled))?;
    if factors.len() != 1 || factors[0].1 != 1 {
        // Back to the original variable: h(d t) / d^deg h.
        let h = &factors[0].0;
        let dh = h.len() - 1;
        let orig: QPoly = h
            .iter()
            .enumerate()
            .map(|(i, c)| c * dq.pow(i as i32) / dq.pow(dh as i32))
            .collect();
        return Err(Error::Reducible {
            witness: upoly::format(&q, &orig, "t"),
        });
    }
    Ok(NormalizedMinpoly {
        poly: scaled,
        scale: d,
    })
}

pub fn biguint_of(n: &BigInt) -> BigUint {
    n.magnitude().clone()
}

pub fn is_negative(n: &BigInt) -> bool {
    n.sign() == Sign::Minus
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn z(cs: &[i64]) -> ZPoly {
        cs.iter().map(|&c| BigInt::from(c)).collect()
    }

    /// Sylvester-matrix determinant by fraction Gaussian elimination.
    fn sylvester_resultant(a: &[i64], b: &[i64]) -> BigRational {
        let m = a.len() - 1;
        let n = b.len() - 1;
        let size = m + n;
        let mut mat = vec![vec![BigRational::zero(); size]; size];
        for r in 0..n {
            for (j, &c) in a.iter().rev().enumerate() {
                mat[r][r + j] = int(c);
            }
        }
        for r in 0..m {
            for (j, &c) in b.iter().rev().enumerate() {
                mat[n + r][r + j] = int(c);
            }
        }
        let mut det = BigRational::one();
        for col in 0..size {
            let Some(piv) = (col..size).find(|&r| !mat[r][col].is_zero()) else {
                return BigRational::zero();
            };
            if piv != col {
                mat.swap(piv, col);
                det = -det;
            }
            det *= mat[col][col].clone();
            for r in col + 1..size {
                let f = &mat[r][col] / &mat[col][col];
                for j in col..size {
                    let v = &f * &mat[col][j];
                    mat[r][j] -= v;
                }
            }
        }
        det
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(discriminant(&z(&[1, 0, 1])).unwrap(), BigInt::from(-4));
        assert_eq!(discriminant(&z(&[-2, 0, 1])).unwrap(), BigInt::from(8));
        assert_eq!(discriminant(&z(&[-2, 0, 0, 1])).unwrap(), BigInt::from(-108));
    }

    #[test]
    fn resultant_matches_sylvester() {
        let cases: [(&[i64], &[i64]); 4] = [
            (&[-2, 0, 0, 1], &[0, 0, 3]),
            (&[1, 2, 3, 4, 5], &[7, -1, 2]),
            (&[3, 0, -1, 0, 2, 1], &[1, 1, -4, 2]),
            (&[5, 1], &[1, 0, 1]),
        ];
        for (a, b) in cases {
            let r = resultant(&z(a), &z(b));
            assert_eq!(BigRational::from_integer(r), sylvester_resultant(a, b));
        }
    }

    #[test]
    fn factor_cyclotomic_product() {
        // (t^4 + 1)(t - 3)^2, where t^4 + 1 is reducible modulo every prime.
        let q = Rationals;
        let a = vec![int(1), int(0), int(0), int(0), int(1)];
        let b = vec![int(-3), int(1)];
        let f = upoly::mul(&q, &a, &upoly::mul(&q, &b, &b));
        let fs = factor_over_q(&f).unwrap();
        assert_eq!(fs, vec![(b, 2), (a, 1)]);
    }

    #[test]
    fn factor_swinnerton_dyer_like() {
        // (t^2 - 2)(t^2 - 3)
        let q = Rationals;
        let a = vec![int(-2), int(0), int(1)];
        let b = vec![int(-3), int(0), int(1)];
        let fs = factor_over_q(&upoly::mul(&q, &a, &b)).unwrap();
        assert_eq!(fs, vec![(b, 1), (a, 1)]);
    }

    #[test]
    fn normalize_examples() {
        let n = normalize_minpoly(&[int(1), int(0), int(1)]).unwrap();
        assert_eq!(n.poly, z(&[1, 0, 1]));
        assert_eq!(n.scale, BigInt::from(1));

        let err = normalize_minpoly(&[rat(-1, 4), int(0), int(1)]).unwrap_err();
        assert_eq!(
            err,
            Error::Reducible {
                witness: "t-1/2".into()
            }
        );

        let n = normalize_minpoly(&[int(1), rat(-1, 2), int(1)]).unwrap();
        assert_eq!(n.poly, z(&[4, -1, 1]));
        assert_eq!(n.scale, BigInt::from(2));
    }
}
