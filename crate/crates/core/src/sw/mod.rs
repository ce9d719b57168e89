//! Congruence homomorphisms onto finite fields whose kernels have only
//! unipotent torsion, for each supported field family.

mod function;
mod number;

use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::finite::{FieldCert, FiniteField, FqElem};
use crate::group::GroupInput;
use crate::intfactor::is_prime_u64;
use crate::matrix::Matrix;
use crate::parse::Identifiers;

pub use function::{integer_points, select_point_char0, select_point_charp, FunctionBase, FunMu};

/// Upper limit on candidate primes examined by [`select_prime`].
const PRIME_SEARCH_LIMIT: u64 = 1 << 32;

/// Degrees and characteristic governing the torsion bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldShape {
    pub characteristic: u64,
    /// Degree of the constant field over ℚ (characteristic 0).
    pub k: usize,
    /// Degree over the rational function field.
    pub e: usize,
    /// Size of the constant field (characteristic p).
    pub q: Option<BigUint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum MapKind {
    Phi1,
    Phi2,
    Phi3,
    Phi4,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum KernelProperty {
    #[serde(rename = "torsion-free")]
    TorsionFree,
    #[serde(rename = "torsion-unipotent")]
    TorsionUnipotent,
}

pub const JUST_PHI1: &str = "p > 2 and p does not divide mu";
pub const JUST_DISC: &str = "p odd and p divides neither disc(f) nor mu";
pub const JUST_BOUND: &str = "p > nk+1 and p does not divide mu";
pub const JUST_CHAR_P: &str = "positive characteristic: torsion in the kernel is unipotent";
pub const JUST_SUBST: &str =
    "substitution at a non-root of mu has torsion-free kernel in characteristic 0";
pub const JUST_SUBST_MODP: &str =
    "substitution at a non-root of mu followed by reduction at p > n0+1 not dividing the specialized denominators";

/// Serializable description of a congruence map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapCertificate {
    pub kind: MapKind,
    pub p: u64,
    pub point: Option<Vec<String>>,
    pub factor: Option<String>,
    pub target: FieldCert,
    pub kernel_property: KernelProperty,
    pub justification: String,
    pub inner: Option<Box<MapCertificate>>,
}

impl MapCertificate {
    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("certificate serializes")
    }
}

/// A fully specified congruence map together with the data needed to apply it.
#[derive(Clone, Debug)]
pub struct CongruenceMap<P> {
    pub cert: MapCertificate,
    pub target: FiniteField,
    pub plan: P,
}

/// The map type of a field.
pub type SwMap<F> = CongruenceMap<<F as SwField>::Plan>;

/// Fields that admit congruence maps onto finite fields.
pub trait SwField: Identifiers + Clone + Debug {
    type Mu: Clone + Debug;
    type Plan: Clone + Debug;

    fn shape(&self) -> FieldShape;
    fn compute_mu<'a>(&self, mats: impl Iterator<Item = &'a Matrix<Self::Elem>>) -> Result<Self::Mu>;
    fn mu_json(&self, mu: &Self::Mu) -> Value;
    fn build_sw(&self, g: &GroupInput<Self>, skip: usize) -> Result<SwMap<Self>>;
    fn apply_scalar(&self, map: &SwMap<Self>, x: &Self::Elem) -> Result<FqElem>;
}

pub fn build_sw<F: SwField>(g: &GroupInput<F>, skip: usize) -> Result<SwMap<F>> {
    g.field.build_sw(g, skip)
}

/// Entry-wise image of a matrix.
pub fn apply_sw<F: SwField>(field: &F, map: &SwMap<F>, m: &Matrix<F::Elem>) -> Result<Matrix<FqElem>> {
    m.map(|x| field.apply_scalar(map, x))
}

/// One admissibility route for a prime: `p > min_exclusive` and `p` divides
/// none of `forbid_divisors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeConstraints {
    pub min_exclusive: u64,
    pub forbid_divisors: Vec<BigInt>,
}

impl PrimeConstraints {
    pub fn phi1() -> Self {
        PrimeConstraints {
            min_exclusive: 2,
            forbid_divisors: Vec::new(),
        }
    }

    fn admits(&self, p: u64) -> bool {
        let bp = BigInt::from(p);
        p > self.min_exclusive
            && self
                .forbid_divisors
                .iter()
                .all(|d| d.is_zero() || !d.abs().is_multiple_of(&bp))
    }
}

/// The `(skip+1)`-th prime from 3 upwards that does not divide `mu` and
/// satisfies at least one route, with the index of the first route it
/// satisfies.
pub fn select_prime(mu: &BigInt, routes: &[PrimeConstraints], skip: usize) -> Result<(u64, usize)> {
    let mut seen = 0;
    let mut p = 3u64;
    while p < PRIME_SEARCH_LIMIT {
        if is_prime_u64(p) && !mu.is_multiple_of(&BigInt::from(p)) {
            if let Some(route) = routes.iter().position(|r| r.admits(p)) {
                if seen == skip {
                    return Ok((p, route));
                }
                seen += 1;
            }
        }
        p += 2;
    }
    Err(Error::Resource("prime search limit reached".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_selection_examples() {
        let phi1 = [PrimeConstraints::phi1()];
        assert_eq!(select_prime(&BigInt::from(6), &phi1, 0).unwrap(), (5, 0));
        let disc = [PrimeConstraints {
            min_exclusive: 2,
            forbid_divisors: vec![BigInt::from(-4)],
        }];
        assert_eq!(select_prime(&BigInt::from(1), &disc, 0).unwrap(), (3, 0));
        let bound = [PrimeConstraints {
            min_exclusive: 5,
            forbid_divisors: Vec::new(),
        }];
        assert_eq!(select_prime(&BigInt::from(1), &bound, 0).unwrap(), (7, 0));
        assert_eq!(select_prime(&BigInt::from(6), &phi1, 1).unwrap(), (7, 0));
    }
}
