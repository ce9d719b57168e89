//! Finite fields GF(p^l) as residues modulo a monic irreducible polynomial
//! over GF(p).
//!
//! Elements are coefficient vectors of fixed length `l` in the power basis
//! of the residue of `t`. Prime fields use a linear modulus, so the
//! residue of `t` is a chosen element of GF(p) rather than a new symbol.

use std::hash::{Hash, Hasher};

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ElemSize, Field};
use crate::intfactor::is_prime_u64;
use crate::rational::inv_mod;
use crate::upoly;

pub type FqElem = Vec<u64>;

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u64,
    /// Monic, low degree first, length `l + 1`.
    modulus: Vec<u64>,
    /// Identifier used when printing elements of a proper extension.
    var: String,
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.p.hash(state);
        self.modulus.hash(state);
    }
}

/// JSON shape of a finite field inside certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCert {
    pub p: u64,
    pub l: usize,
    pub modulus: Vec<u64>,
}

pub(crate) fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a as u128 + b as u128;
    (s % p as u128) as u64
}

pub(crate) fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        p - (b - a)
    }
}

impl FiniteField {
    /// GF(p) with modulus `t`.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime_u64(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FiniteField {
            p,
            modulus: vec![0, 1],
            var: "w".into(),
        })
    }

    /// GF(p^l) defined by `modulus` (constant term first; normalized to
    /// monic). Irreducibility is verified by factoring.
    pub fn new(p: u64, modulus: Vec<u64>) -> Result<Self> {
        let gf = FiniteField::prime(p)?;
        let m: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        let m = upoly::trim(&gf, m.into_iter().map(|c| vec![c]).collect());
        if m.len() < 2 {
            return Err(Error::InvalidField("modulus must have degree >= 1".into()));
        }
        let m = upoly::monic(&gf, &m)?;
        let factors = crate::fqfactor::factor(&gf, &m)?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(Error::Reducible {
                witness: upoly::format(&gf, &factors[0].0, "t"),
            });
        }
        Ok(Self::from_trusted(p, m.into_iter().map(|c| c[0]).collect()))
    }

    /// Skips the irreducibility check; callers must guarantee it.
    pub(crate) fn from_trusted(p: u64, modulus: Vec<u64>) -> Self {
        FiniteField {
            p,
            modulus,
            var: "w".into(),
        }
    }

    /// The extension of GF(p) of degree `l` whose modulus is the first monic
    /// irreducible polynomial in the enumeration order of
    /// [`first_irreducible`](crate::fqfactor::first_irreducible).
    pub fn standard(p: u64, l: usize) -> Result<Self> {
        let gf = FiniteField::prime(p)?;
        if l == 1 {
            return Ok(gf);
        }
        let m = crate::fqfactor::first_irreducible(&gf, l)?;
        Ok(Self::from_trusted(p, m.into_iter().map(|c| c[0]).collect()))
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> BigUint {
        BigUint::from(self.p).pow(self.degree() as u32)
    }

    pub fn cert(&self) -> FieldCert {
        FieldCert {
            p: self.p,
            l: self.degree(),
            modulus: self.modulus.clone(),
        }
    }

    pub fn elem(&self, c: u64) -> FqElem {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.p;
        v
    }

    /// The residue of `t`.
    pub fn generator(&self) -> FqElem {
        let l = self.degree();
        if l == 1 {
            return vec![submod(0, self.modulus[0], self.p)];
        }
        let mut v = vec![0; l];
        v[1] = 1;
        v
    }

    pub fn from_u64_coeffs(&self, coeffs: &[u64]) -> FqElem {
        // Reduce an arbitrary-length polynomial in t.
        let mut acc = self.zero();
        let t = self.generator();
        for &c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, &t), &self.elem(c));
        }
        acc
    }

    /// Integer code `sum c_i p^i`, which fixes the element enumeration order.
    pub fn encode(&self, a: &FqElem) -> u128 {
        a.iter()
            .rev()
            .fold(0u128, |acc, &c| acc * self.p as u128 + c as u128)
    }

    pub fn decode(&self, mut code: u128) -> FqElem {
        let mut v = vec![0; self.degree()];
        for slot in v.iter_mut() {
            *slot = (code % self.p as u128) as u64;
            code /= self.p as u128;
        }
        v
    }

    pub fn size_u128(&self) -> Option<u128> {
        (self.p as u128).checked_pow(self.degree() as u32)
    }

    pub fn pow_big(&self, a: &FqElem, e: &BigUint) -> FqElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn frobenius(&self, a: &FqElem, times: usize) -> FqElem {
        let mut x = a.clone();
        for _ in 0..times {
            x = self.pow(&x, self.p);
        }
        x
    }

    /// Whether `a` lies in the subfield GF(p^d).
    pub fn in_subfield(&self, a: &FqElem, d: usize) -> bool {
        self.frobenius(a, d) == *a
    }

    /// p-th root, the inverse of the Frobenius map.
    pub fn pth_root(&self, a: &FqElem) -> FqElem {
        let l = self.degree();
        self.frobenius(a, l - 1)
    }

    fn reduce(&self, mut prod: Vec<u64>) -> FqElem {
        let l = self.degree();
        let p = self.p;
        while prod.len() > l {
            let c = prod.pop().unwrap();
            if c == 0 {
                continue;
            }
            let shift = prod.len() - l;
            for (j, &m) in self.modulus[..l].iter().enumerate() {
                prod[shift + j] = submod(prod[shift + j], mulmod(c, m, p), p);
            }
        }
        prod.resize(l, 0);
        prod
    }

    /// Solves `A x = b` over GF(p) for square nonsingular `A` (rows).
    pub(crate) fn solve_prime(&self, mut a: Vec<Vec<u64>>, mut b: Vec<u64>) -> Option<Vec<u64>> {
        let p = self.p;
        let n = b.len();
        for col in 0..n {
            let piv = (col..n).find(|&r| a[r][col] != 0)?;
            a.swap(col, piv);
            b.swap(col, piv);
            let inv = inv_mod(a[col][col], p)?;
            for j in 0..n {
                a[col][j] = mulmod(a[col][j], inv, p);
            }
            b[col] = mulmod(b[col], inv, p);
            for r in 0..n {
                if r != col && a[r][col] != 0 {
                    let f = a[r][col];
                    for j in 0..n {
                        a[r][j] = submod(a[r][j], mulmod(f, a[col][j], p), p);
                    }
                    b[r] = submod(b[r], mulmod(f, b[col], p), p);
                }
            }
        }
        Some(b)
    }
}

impl Field for FiniteField {
    type Elem = FqElem;

    fn zero(&self) -> FqElem {
        vec![0; self.degree()]
    }

    fn one(&self) -> FqElem {
        self.elem(1)
    }

    fn is_zero(&self, a: &FqElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| addmod(x, y, self.p))
            .collect()
    }

    fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| submod(x, y, self.p))
            .collect()
    }

    fn neg(&self, a: &FqElem) -> FqElem {
        a.iter().map(|&x| submod(0, x, self.p)).collect()
    }

    fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let l = self.degree();
        let p = self.p;
        if l == 1 {
            return vec![mulmod(a[0], b[0], p)];
        }
        let mut prod = vec![0u64; 2 * l - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = addmod(prod[i + j], mulmod(x, y, p), p);
            }
        }
        self.reduce(prod)
    }

    fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        let p = self.p;
        if self.degree() == 1 {
            return inv_mod(a[0], p)
                .map(|v| vec![v])
                .ok_or(Error::DivisionByZero);
        }
        // a^(q-2)
        let e = self.order() - BigUint::from(2u32);
        Ok(self.pow_big(a, &e))
    }

    fn from_int(&self, n: &BigInt) -> FqElem {
        let r = n.mod_floor_u64(self.p);
        self.elem(r)
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn size(&self, _a: &FqElem) -> ElemSize {
        ElemSize::scalar(64 - self.p.leading_zeros() as u64)
    }

    fn format(&self, a: &FqElem) -> String {
        if self.degree() == 1 {
            return a[0].to_string();
        }
        let terms = a
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| {
                let mono = match i {
                    0 => String::new(),
                    1 => self.var.clone(),
                    _ => format!("{}^{i}", self.var),
                };
                (c.to_string(), mono)
            })
            .collect();
        crate::field::join_terms(terms)
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: u64) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: u64) -> u64 {
        use num_integer::Integer;
        self.mod_floor(&BigInt::from(p)).to_u64().unwrap()
    }
}

/// An embedding of a smaller finite field into a larger one, given by the
/// image of the small field's generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Embedding {
    pub source: FiniteField,
    pub target: FiniteField,
    pub gen_image: FqElem,
}

impl Embedding {
    pub fn identity(k: &FiniteField) -> Self {
        Embedding {
            source: k.clone(),
            target: k.clone(),
            gen_image: k.generator(),
        }
    }

    pub fn apply(&self, a: &FqElem) -> FqElem {
        if self.source.degree() == 1 {
            return self.target.elem(a[0]);
        }
        let t = &self.target;
        a.iter().rev().fold(t.zero(), |acc, &c| {
            t.add(&t.mul(&acc, &self.gen_image), &t.elem(c))
        })
    }

    pub fn compose(&self, outer: &Embedding) -> Embedding {
        Embedding {
            source: self.source.clone(),
            target: outer.target.clone(),
            gen_image: outer.apply(&self.gen_image),
        }
    }
}

/// The field K[s]/(h) for `h` monic irreducible of degree `d` over `K`,
/// rewritten as a single extension of GF(p).
#[derive(Clone, Debug)]
pub struct Flattened {
    pub field: FiniteField,
    /// K into the new field.
    pub embed: Embedding,
    /// Image of `s`, a root of `h`.
    pub root: FqElem,
}

/// Builds a flat model of `K[s]/(h)` by finding a primitive element over
/// GF(p) among the elements in code order and solving for the images of the
/// generators of `K` and of `s`.
pub fn flatten(k: &FiniteField, h: &[FqElem]) -> Result<Flattened> {
    let d = upoly::degree(h).ok_or_else(|| Error::Internal("flatten of zero".into()))?;
    if d == 0 {
        return Err(Error::Internal("flatten of a constant".into()));
    }
    let h = upoly::monic(k, h)?;
    if d == 1 {
        let root = k.neg(&h[0]);
        return Ok(Flattened {
            field: k.clone(),
            embed: Embedding::identity(k),
            root,
        });
    }
    let p = k.p();
    let l = k.degree();
    let total = l * d;
    // Coordinates of an element of K[s]/(h) over GF(p): coefficient of t^j
    // in the K-coefficient of s^i at position i*l + j.
    let coords = |e: &[FqElem]| -> Vec<u64> {
        let mut v = vec![0u64; total];
        for (i, c) in e.iter().enumerate() {
            for (j, &x) in c.iter().enumerate() {
                v[i * l + j] = x;
            }
        }
        v
    };
    let padded = |mut e: Vec<FqElem>| -> Vec<FqElem> {
        e.resize(d, k.zero());
        e
    };
    let prime_field = FiniteField::prime(p)?;
    let limit = (p as u128).saturating_pow(total as u32);
    let mut code: u128 = p as u128;
    while code < limit {
        let mut c = code;
        let theta: Vec<FqElem> = (0..d)
            .map(|_| {
                let part = c % (k.size_u128().unwrap_or(u128::MAX));
                c /= k.size_u128().unwrap_or(u128::MAX);
                k.decode(part)
            })
            .collect();
        code += 1;
        let theta = upoly::trim(k, theta);
        let mut powers: Vec<Vec<FqElem>> = Vec::with_capacity(total + 1);
        let mut cur = vec![k.one()];
        for _ in 0..=total {
            powers.push(padded(cur.clone()));
            cur = upoly::mulmod(k, &cur, &theta, &h)?;
        }
        // Columns are powers theta^0 .. theta^{total-1}.
        let cols: Vec<Vec<u64>> = powers[..total].iter().map(|e| coords(e)).collect();
        let rows: Vec<Vec<u64>> = (0..total)
            .map(|r| cols.iter().map(|col| col[r]).collect())
            .collect();
        let solve = |target: Vec<u64>| prime_field.solve_prime(rows.clone(), target);
        let Some(last) = solve(coords(&powers[total])) else {
            continue;
        };
        let mut modulus: Vec<u64> = last.iter().map(|&c| submod(0, c, p)).collect();
        modulus.push(1);
        let field = FiniteField::from_trusted(p, modulus).with_var(k.var());
        let gen_k = padded(vec![k.generator()]);
        let gen_image = solve(coords(&gen_k))
            .ok_or_else(|| Error::Internal("generator not expressible".into()))?;
        let s = padded(vec![k.zero(), k.one()]);
        let root = solve(coords(&s)).ok_or_else(|| Error::Internal("root not expressible".into()))?;
        return Ok(Flattened {
            embed: Embedding {
                source: k.clone(),
                target: field.clone(),
                gen_image,
            },
            field,
            root,
        });
    }
    Err(Error::Internal("no primitive element found".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_arithmetic() {
        let f = FiniteField::new(2, vec![1, 1, 1]).unwrap();
        let w = f.generator();
        let w2 = f.mul(&w, &w);
        assert_eq!(w2, f.add(&w, &f.one()));
        let winv = f.inv(&w).unwrap();
        assert_eq!(f.mul(&w, &winv), f.one());
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(FiniteField::new(5, vec![1, 0, 1]).is_err());
        assert!(FiniteField::new(3, vec![1, 0, 1]).is_ok());
    }

    #[test]
    fn prime_field_with_linear_modulus() {
        let f = FiniteField::new(5, vec![2, 1]).unwrap();
        assert_eq!(f.generator(), vec![3]);
    }

    #[test]
    fn flatten_tower() {
        // GF(4)[s]/(s^2 + s + w) is GF(16).
        let k = FiniteField::new(2, vec![1, 1, 1]).unwrap();
        let w = k.generator();
        let h = vec![w.clone(), k.one(), k.one()];
        let fl = flatten(&k, &h).unwrap();
        assert_eq!(fl.field.degree(), 4);
        let e = &fl.field;
        let r = &fl.root;
        let hw = fl.embed.apply(&w);
        let val = e.add(&e.add(&e.mul(r, r), r), &hw);
        assert!(e.is_zero(&val));
        // The embedding respects the relation w^2 = w + 1.
        assert_eq!(e.mul(&hw, &hw), e.add(&hw, &e.one()));
    }

    #[test]
    fn subfield_membership() {
        let f = FiniteField::standard(2, 4).unwrap();
        assert!(f.in_subfield(&f.one(), 1));
        assert!(!f.in_subfield(&f.generator(), 2));
    }
}
