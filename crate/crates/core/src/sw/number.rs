//! Reduction modulo a prime for ℚ and for number fields.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use super::{
    select_prime, CongruenceMap, FieldShape, KernelProperty, MapCertificate, MapKind,
    PrimeConstraints, SwField, SwMap, JUST_BOUND, JUST_DISC, JUST_PHI1,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::finite::{FiniteField, FqElem};
use crate::fqfactor;
use crate::group::GroupInput;
use crate::matrix::Matrix;
use crate::numfield::NumberField;
use crate::rational::{lcm_denominators, reduce_mod, Rationals};
use crate::upoly;

fn reduce(x: &BigRational, p: u64) -> Result<u64> {
    reduce_mod(x, p).ok_or_else(|| {
        Error::Inadmissible(format!("denominator of {x} is not invertible modulo {p}"))
    })
}

impl SwField for Rationals {
    type Mu = BigInt;
    type Plan = u64;

    fn shape(&self) -> FieldShape {
        FieldShape {
            characteristic: 0,
            k: 1,
            e: 1,
            q: None,
        }
    }

    fn compute_mu<'a>(&self, mats: impl Iterator<Item = &'a Matrix<BigRational>>) -> Result<BigInt> {
        Ok(lcm_denominators(mats.flat_map(|m| m.data.iter())))
    }

    fn mu_json(&self, mu: &BigInt) -> Value {
        json!(mu.to_string())
    }

    fn build_sw(&self, g: &GroupInput<Self>, skip: usize) -> Result<SwMap<Self>> {
        let (p, _) = select_prime(&g.mu, &[PrimeConstraints::phi1()], skip)?;
        let target = FiniteField::prime(p)?;
        Ok(CongruenceMap {
            cert: MapCertificate {
                kind: MapKind::Phi1,
                p,
                point: None,
                factor: None,
                target: target.cert(),
                kernel_property: KernelProperty::TorsionFree,
                justification: JUST_PHI1.into(),
                inner: None,
            },
            target,
            plan: p,
        })
    }

    fn apply_scalar(&self, map: &SwMap<Self>, x: &BigRational) -> Result<FqElem> {
        Ok(map.target.elem(reduce(x, map.plan)?))
    }
}

/// Reduction data for a number field at a prime: the image of the integral
/// generator `β`.
#[derive(Clone, Debug)]
pub struct NumberPlan {
    pub p: u64,
    pub beta_bar: FqElem,
}

/// Reduces the integral minimal polynomial at `p` and picks its first
/// irreducible factor, returning the residue field, the image of `β` and the
/// factor's text.
pub(crate) fn residue_field(k: &NumberField, p: u64) -> Result<(FiniteField, FqElem, String)> {
    let gp = FiniteField::prime(p)?;
    let fbar: Vec<FqElem> = k.integral_minpoly().iter().map(|c| gp.from_int(c)).collect();
    let factors = fqfactor::factor(&gp, &upoly::trim(&gp, fbar))?;
    let h = &factors
        .first()
        .ok_or_else(|| Error::Internal("minimal polynomial has no factor".into()))?
        .0;
    let text = upoly::format(&gp, h, "t");
    if h.len() == 2 {
        let beta = gp.neg(&h[0]);
        Ok((gp, beta, text))
    } else {
        let target = FiniteField::from_trusted(p, h.iter().map(|c| c[0]).collect());
        let beta = target.generator();
        Ok((target, beta, text))
    }
}

/// Image of an element given by its `β`-coordinates.
pub(crate) fn reduce_coords(
    target: &FiniteField,
    p: u64,
    beta_bar: &FqElem,
    coords: &[BigRational],
) -> Result<FqElem> {
    let mut acc = target.zero();
    for c in coords.iter().rev() {
        acc = target.add(&target.mul(&acc, beta_bar), &target.elem(reduce(c, p)?));
    }
    Ok(acc)
}

/// Integer lcm of the `β`-coordinate denominators.
pub(crate) fn coord_denominators<'a>(values: impl Iterator<Item = &'a Vec<BigRational>>) -> BigInt {
    lcm_denominators(values.flat_map(|v| v.iter()))
}

impl SwField for NumberField {
    type Mu = BigInt;
    type Plan = NumberPlan;

    fn shape(&self) -> FieldShape {
        FieldShape {
            characteristic: 0,
            k: self.degree(),
            e: 1,
            q: None,
        }
    }

    fn compute_mu<'a>(&self, mats: impl Iterator<Item = &'a Matrix<Vec<BigRational>>>) -> Result<BigInt> {
        Ok(coord_denominators(mats.flat_map(|m| m.data.iter())))
    }

    fn mu_json(&self, mu: &BigInt) -> Value {
        json!(mu.to_string())
    }

    fn build_sw(&self, g: &GroupInput<Self>, skip: usize) -> Result<SwMap<Self>> {
        let nk = (g.n * self.degree()) as u64;
        let routes = [
            PrimeConstraints {
                min_exclusive: 2,
                forbid_divisors: vec![self.discriminant().clone()],
            },
            PrimeConstraints {
                min_exclusive: nk + 1,
                forbid_divisors: Vec::new(),
            },
        ];
        let (p, route) = select_prime(&g.mu, &routes, skip)?;
        let (target, beta_bar, factor) = residue_field(self, p)?;
        Ok(CongruenceMap {
            cert: MapCertificate {
                kind: MapKind::Phi2,
                p,
                point: None,
                factor: Some(factor),
                target: target.cert(),
                kernel_property: KernelProperty::TorsionFree,
                justification: if route == 0 { JUST_DISC } else { JUST_BOUND }.into(),
                inner: None,
            },
            target,
            plan: NumberPlan { p, beta_bar },
        })
    }

    fn apply_scalar(&self, map: &SwMap<Self>, x: &Vec<BigRational>) -> Result<FqElem> {
        reduce_coords(&map.target, map.plan.p, &map.plan.beta_bar, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::rational::{int, rat};
    use crate::sw::apply_sw;

    #[test]
    fn phi1_with_mu_six() {
        let g = Matrix::from_rows(vec![vec![rat(1, 2), int(0)], vec![int(0), int(3)]]).unwrap();
        let grp = GroupInput::new(Rationals, 2, vec![g.clone()]).unwrap();
        assert_eq!(grp.mu, BigInt::from(6));
        let map = Rationals.build_sw(&grp, 0).unwrap();
        assert_eq!(map.cert.p, 5);
        let img = apply_sw(&Rationals, &map, &g).unwrap();
        assert_eq!(img.data, vec![vec![3], vec![0], vec![0], vec![3]]);
    }

    #[test]
    fn phi2_gaussian() {
        let k = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let i = k.alpha();
        let g = Matrix::from_rows(vec![vec![i.clone(), k.zero()], vec![k.zero(), i]]).unwrap();
        let grp = GroupInput::new(k.clone(), 2, vec![g]).unwrap();
        let map = k.build_sw(&grp, 0).unwrap();
        assert_eq!(map.cert.p, 3);
        assert_eq!(map.cert.target.l, 2);
        assert_eq!(map.cert.justification, JUST_DISC);
        let map5 = k.build_sw(&grp, 1).unwrap();
        assert_eq!(map5.cert.p, 5);
        assert_eq!(map5.cert.factor.as_deref(), Some("t+2"));
        assert_eq!(k.apply_scalar(&map5, &k.alpha()).unwrap(), vec![3]);
    }
}
