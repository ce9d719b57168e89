//! Dense square matrices over any [`Field`].

use crate::error::{Error, Result};
use crate::field::{Budget, ElemSize, Field};

/// A square matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    pub n: usize,
    pub data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("matrix is not square".into()));
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<E>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn map<T>(&self, f: impl Fn(&E) -> Result<T>) -> Result<Matrix<T>> {
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

pub fn identity<F: Field>(k: &F, n: usize) -> Matrix<F::Elem> {
    let mut data = vec![k.zero(); n * n];
    for i in 0..n {
        data[i * n + i] = k.one();
    }
    Matrix { n, data }
}

pub fn scalar<F: Field>(k: &F, n: usize, c: &F::Elem) -> Matrix<F::Elem> {
    let mut m = identity(k, n);
    for i in 0..n {
        m.set(i, i, c.clone());
    }
    m
}

pub fn zero<F: Field>(k: &F, n: usize) -> Matrix<F::Elem> {
    Matrix {
        n,
        data: vec![k.zero(); n * n],
    }
}

fn check_dims<E>(a: &Matrix<E>, b: &Matrix<E>) -> Result<()> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} against {}x{}",
            a.n, a.n, b.n, b.n
        )));
    }
    Ok(())
}

pub fn add<F: Field>(k: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    check_dims(a, b)?;
    Ok(Matrix {
        n: a.n,
        data: a.data.iter().zip(&b.data).map(|(x, y)| k.add(x, y)).collect(),
    })
}

pub fn sub<F: Field>(k: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    check_dims(a, b)?;
    Ok(Matrix {
        n: a.n,
        data: a.data.iter().zip(&b.data).map(|(x, y)| k.sub(x, y)).collect(),
    })
}

pub fn mul<F: Field>(k: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    check_dims(a, b)?;
    let n = a.n;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = k.zero();
            for l in 0..n {
                let x = a.get(i, l);
                if k.is_zero(x) {
                    continue;
                }
                let y = b.get(l, j);
                if k.is_zero(y) {
                    continue;
                }
                acc = k.add(&acc, &k.mul(x, y));
            }
            data.push(acc);
        }
    }
    Ok(Matrix { n, data })
}

/// Largest entry size, for the blow-up guard.
pub fn size<F: Field>(k: &F, a: &Matrix<F::Elem>) -> ElemSize {
    a.data
        .iter()
        .map(|x| k.size(x))
        .fold(ElemSize::default(), ElemSize::max)
}

/// Product followed by a budget check on every entry.
pub fn mul_checked<F: Field>(
    k: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
    budget: &Budget,
) -> Result<Matrix<F::Elem>> {
    let c = mul(k, a, b)?;
    budget.check(size(k, &c))?;
    Ok(c)
}

pub fn is_identity<F: Field>(k: &F, a: &Matrix<F::Elem>) -> bool {
    (0..a.n).all(|i| {
        (0..a.n).all(|j| {
            let x = a.get(i, j);
            if i == j {
                k.is_one(x)
            } else {
                k.is_zero(x)
            }
        })
    })
}

pub fn is_zero<F: Field>(k: &F, a: &Matrix<F::Elem>) -> bool {
    a.data.iter().all(|x| k.is_zero(x))
}

/// Gauss–Jordan inverse, verified by multiplication.
pub fn inverse<F: Field>(k: &F, a: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    let n = a.n;
    let mut m = a.clone();
    let mut inv = identity(k, n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !k.is_zero(m.get(r, col))).ok_or(Error::Singular)?;
        if pivot != col {
            for j in 0..n {
                m.data.swap(pivot * n + j, col * n + j);
                inv.data.swap(pivot * n + j, col * n + j);
            }
        }
        let s = k.inv(m.get(col, col))?;
        for j in 0..n {
            m.set(col, j, k.mul(m.get(col, j), &s));
            inv.set(col, j, k.mul(inv.get(col, j), &s));
        }
        for r in 0..n {
            if r == col || k.is_zero(m.get(r, col)) {
                continue;
            }
            let f = m.get(r, col).clone();
            for j in 0..n {
                let mv = k.sub(m.get(r, j), &k.mul(&f, m.get(col, j)));
                m.set(r, j, mv);
                let iv = k.sub(inv.get(r, j), &k.mul(&f, inv.get(col, j)));
                inv.set(r, j, iv);
            }
        }
    }
    if !is_identity(k, &mul(k, a, &inv)?) {
        return Err(Error::Internal("inverse failed verification".into()));
    }
    Ok(inv)
}

pub fn det<F: Field>(k: &F, a: &Matrix<F::Elem>) -> Result<F::Elem> {
    let n = a.n;
    let mut m = a.clone();
    let mut d = k.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !k.is_zero(m.get(r, col))) else {
            return Ok(k.zero());
        };
        if pivot != col {
            for j in 0..n {
                m.data.swap(pivot * n + j, col * n + j);
            }
            d = k.neg(&d);
        }
        let pv = m.get(col, col).clone();
        d = k.mul(&d, &pv);
        let s = k.inv(&pv)?;
        for r in col + 1..n {
            if k.is_zero(m.get(r, col)) {
                continue;
            }
            let f = k.mul(m.get(r, col), &s);
            for j in col..n {
                let v = k.sub(m.get(r, j), &k.mul(&f, m.get(col, j)));
                m.set(r, j, v);
            }
        }
    }
    Ok(d)
}

pub fn pow<F: Field>(k: &F, a: &Matrix<F::Elem>, mut e: u64) -> Result<Matrix<F::Elem>> {
    let mut acc = identity(k, a.n);
    let mut b = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(k, &acc, &b)?;
        }
        e >>= 1;
        if e > 0 {
            b = mul(k, &b, &b)?;
        }
    }
    Ok(acc)
}

/// Power with the blow-up guard applied after every product.
pub fn pow_checked<F: Field>(
    k: &F,
    a: &Matrix<F::Elem>,
    mut e: u64,
    budget: &Budget,
) -> Result<Matrix<F::Elem>> {
    let mut acc = identity(k, a.n);
    let mut b = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_checked(k, &acc, &b, budget)?;
        }
        e >>= 1;
        if e > 0 {
            b = mul_checked(k, &b, &b, budget)?;
        }
    }
    Ok(acc)
}

pub fn pow_signed<F: Field>(k: &F, a: &Matrix<F::Elem>, e: i64) -> Result<Matrix<F::Elem>> {
    if e < 0 {
        pow(k, &inverse(k, a)?, e.unsigned_abs())
    } else {
        pow(k, a, e as u64)
    }
}

pub fn kronecker<F: Field>(k: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let n = a.n * b.n;
    let mut out = zero(k, n);
    for i in 0..a.n {
        for j in 0..a.n {
            for r in 0..b.n {
                for s in 0..b.n {
                    out.set(i * b.n + r, j * b.n + s, k.mul(a.get(i, j), b.get(r, s)));
                }
            }
        }
    }
    out
}

/// `c⁻¹·a·c`.
pub fn conjugate<F: Field>(k: &F, a: &Matrix<F::Elem>, c: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
    let ci = inverse(k, c)?;
    mul(k, &mul(k, &ci, a)?, c)
}

pub fn format<F: Field>(k: &F, a: &Matrix<F::Elem>) -> Vec<Vec<String>> {
    a.rows()
        .iter()
        .map(|r| r.iter().map(|x| k.format(x)).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, Rationals};

    fn q(rows: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()).unwrap()
    }

    #[test]
    fn rotation_inverse() {
        let a = q(&[&[0, -1], &[1, 0]]);
        assert_eq!(inverse(&Rationals, &a).unwrap(), q(&[&[0, 1], &[-1, 0]]));
    }

    #[test]
    fn unipotent_power() {
        let a = q(&[&[1, 1], &[0, 1]]);
        assert_eq!(pow(&Rationals, &a, 3).unwrap(), q(&[&[1, 3], &[0, 1]]));
    }

    #[test]
    fn identity_detected() {
        assert!(is_identity(&Rationals, &identity(&Rationals, 4)));
        assert!(!is_identity(&Rationals, &q(&[&[1, 1], &[0, 1]])));
    }

    #[test]
    fn singular_and_mismatch() {
        assert!(matches!(inverse(&Rationals, &q(&[&[1, 2], &[2, 4]])), Err(Error::Singular)));
        assert!(mul(&Rationals, &q(&[&[1]]), &identity(&Rationals, 2)).is_err());
    }

    #[test]
    fn determinant_and_kronecker() {
        let a = q(&[&[2, 1], &[1, 1]]);
        assert_eq!(det(&Rationals, &a).unwrap(), int(1));
        let kr = kronecker(&Rationals, &a, &identity(&Rationals, 2));
        assert_eq!(kr.n, 4);
        assert_eq!(det(&Rationals, &kr).unwrap(), int(1));
    }
}
