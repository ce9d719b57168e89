//! Substitution maps for rational and algebraic function fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use super::number::{coord_denominators, reduce_coords, residue_field};
use super::{
    select_prime, CongruenceMap, FieldShape, KernelProperty, MapCertificate, MapKind,
    PrimeConstraints, SwField, SwMap, JUST_BOUND, JUST_CHAR_P, JUST_SUBST, JUST_SUBST_MODP,
};
use crate::algfun::AlgebraicFunctionField;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::finite::{flatten, Embedding, FiniteField, FqElem};
use crate::fqfactor;
use crate::group::GroupInput;
use crate::intpoly::factor_over_q;
use crate::matrix::Matrix;
use crate::mpoly::{MPoly, PolyRing};
use crate::numfield::NumberField;
use crate::parse::Identifiers;
use crate::ratfun::{RatFun, RationalFunctionField};
use crate::rational::Rationals;
use crate::upoly;

/// Candidate points scanned before giving up.
const POINT_SCAN_LIMIT: u64 = 1_000_000;

/// Denominator data for function fields: the polynomial lcm of all
/// denominators and, in characteristic 0, the integer lcm of the
/// coefficient denominators of the numerators.
#[derive(Clone, Debug, PartialEq)]
pub struct FunMu<E> {
    pub poly: MPoly<E>,
    pub integer: Option<BigInt>,
}

/// Constant fields of function fields.
pub trait FunctionBase: Identifiers + Clone + Debug {
    type P3: Clone + Debug;
    type P4: Clone + Debug;

    fn base_shape(&self) -> FieldShape;

    /// Integer lcm of the coordinate denominators; `None` in characteristic p.
    fn coeff_den(&self, c: &Self::Elem) -> Option<BigInt>;

    fn phi3(
        rf: &RationalFunctionField<Self>,
        g: &GroupInput<RationalFunctionField<Self>>,
        skip: usize,
    ) -> Result<CongruenceMap<Self::P3>>;

    fn apply3(
        rf: &RationalFunctionField<Self>,
        map: &CongruenceMap<Self::P3>,
        x: &RatFun<Self::Elem>,
    ) -> Result<FqElem>;

    fn phi4(
        aff: &AlgebraicFunctionField<Self>,
        g: &GroupInput<AlgebraicFunctionField<Self>>,
        skip: usize,
    ) -> Result<CongruenceMap<Self::P4>>;

    fn apply4(
        aff: &AlgebraicFunctionField<Self>,
        map: &CongruenceMap<Self::P4>,
        x: &[RatFun<Self::Elem>],
    ) -> Result<FqElem>;
}

fn integral_lcm<B: FunctionBase>(b: &B, polys: &[&MPoly<B::Elem>]) -> Option<BigInt> {
    let mut acc = BigInt::one();
    for p in polys {
        for c in p.terms.values() {
            acc = acc.lcm(&b.coeff_den(c)?);
        }
    }
    Some(acc)
}

fn fun_mu<'a, B: FunctionBase + 'a>(
    rf: &RationalFunctionField<B>,
    values: impl Iterator<Item = &'a RatFun<B::Elem>>,
) -> Result<FunMu<B::Elem>> {
    let ring = rf.ring();
    let mut poly = ring.one();
    let mut nums = Vec::new();
    for v in values {
        if !ring.is_one(&v.den) {
            poly = ring.lcm(&poly, &v.den)?;
        }
        nums.push(&v.num);
    }
    let integer = integral_lcm(rf.base(), &nums);
    Ok(FunMu { poly, integer })
}

fn fun_mu_json<B: FunctionBase>(rf: &RationalFunctionField<B>, mu: &FunMu<B::Elem>) -> Value {
    json!({
        "poly": rf.ring().format(&mu.poly, rf.vars()),
        "integer": mu.integer.as_ref().map(|i| i.to_string()),
    })
}

impl<B: FunctionBase> SwField for RationalFunctionField<B> {
    type Mu = FunMu<B::Elem>;
    type Plan = B::P3;

    fn shape(&self) -> FieldShape {
        self.base().base_shape()
    }

    fn compute_mu<'a>(&self, mats: impl Iterator<Item = &'a Matrix<RatFun<B::Elem>>>) -> Result<Self::Mu> {
        fun_mu(self, mats.flat_map(|m| m.data.iter()))
    }

    fn mu_json(&self, mu: &Self::Mu) -> Value {
        fun_mu_json(self, mu)
    }

    fn build_sw(&self, g: &GroupInput<Self>, skip: usize) -> Result<SwMap<Self>> {
        B::phi3(self, g, skip)
    }

    fn apply_scalar(&self, map: &SwMap<Self>, x: &RatFun<B::Elem>) -> Result<FqElem> {
        B::apply3(self, map, x)
    }
}

impl<B: FunctionBase> SwField for AlgebraicFunctionField<B> {
    type Mu = FunMu<B::Elem>;
    type Plan = B::P4;

    fn shape(&self) -> FieldShape {
        FieldShape {
            e: self.degree(),
            ..self.base().base_shape()
        }
    }

    fn compute_mu<'a>(&self, mats: impl Iterator<Item = &'a Matrix<Vec<RatFun<B::Elem>>>>) -> Result<Self::Mu> {
        fun_mu(self.rf(), mats.flat_map(|m| m.data.iter()).flat_map(|v| v.iter()))
    }

    fn mu_json(&self, mu: &Self::Mu) -> Value {
        fun_mu_json(self.rf(), mu)
    }

    fn build_sw(&self, g: &GroupInput<Self>, skip: usize) -> Result<SwMap<Self>> {
        B::phi4(self, g, skip)
    }

    fn apply_scalar(&self, map: &SwMap<Self>, x: &Vec<RatFun<B::Elem>>) -> Result<FqElem> {
        B::apply4(self, map, x)
    }
}

// ---------------------------------------------------------------------------
// Points

fn enumeration_value(i: usize) -> i64 {
    let v = (i / 2 + 1) as i64;
    if i.is_multiple_of(2) {
        v
    } else {
        -v
    }
}

/// Integer points in the order 1, -1, 2, -2, ... per coordinate, tuples by
/// largest absolute value and then lexicographically in that order.
pub fn integer_points(m: usize) -> impl Iterator<Item = Vec<i64>> {
    (1usize..).flat_map(move |s| {
        let width = 2 * s;
        let total = width.pow(m as u32);
        (0..total).filter_map(move |code| {
            let mut idx = vec![0usize; m];
            let mut c = code;
            for slot in idx.iter_mut().rev() {
                *slot = c % width;
                c /= width;
            }
            if idx.iter().any(|&i| i >= width - 2) || m == 0 {
                Some(idx.into_iter().map(enumeration_value).collect())
            } else {
                None
            }
        })
    })
}

fn eval_poly<B: Field>(ring: &PolyRing<B>, p: &MPoly<B::Elem>, point: &[B::Elem]) -> Result<B::Elem> {
    ring.eval(p, &ring.base, point, &|c| Ok(c.clone()))
}

/// The `(skip+1)`-th integer point at which `mu` does not vanish.
pub fn select_point_char0<B: Field>(ring: &PolyRing<B>, mu: &MPoly<B::Elem>, skip: usize) -> Result<Vec<i64>> {
    if ring.nvars == 0 && skip > 0 {
        return Err(Error::Resource("no further points without variables".into()));
    }
    let mut seen = 0;
    for (scanned, pt) in integer_points(ring.nvars).enumerate() {
        if scanned as u64 > POINT_SCAN_LIMIT {
            break;
        }
        let vals: Vec<B::Elem> = pt.iter().map(|&v| ring.base.from_i64(v)).collect();
        if !ring.base.is_zero(&eval_poly(ring, mu, &vals)?) {
            if seen == skip {
                return Ok(pt);
            }
            seen += 1;
        }
    }
    Err(Error::Resource("point enumeration budget exhausted".into()))
}

/// `GF(q^j)` as a flat field with the embedding of `GF(q)`.
fn level_field(k: &FiniteField, j: usize) -> Result<Embedding> {
    if j == 1 {
        return Ok(Embedding::identity(k));
    }
    let h = fqfactor::first_irreducible(k, j)?;
    let fl = flatten(k, &h)?;
    let field = fl.field.with_var("w");
    Ok(Embedding {
        source: k.clone(),
        target: field,
        gen_image: fl.embed.gen_image,
    })
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The `(skip+1)`-th point over `GF(q)`, then `GF(q^2)`, ... at which `mu`
/// does not vanish. Each level lists only tuples that do not already lie in a
/// smaller level; elements are ordered by integer code. Returns the point and
/// the embedding of `GF(q)` into the point's field.
pub fn select_point_charp(
    k: &FiniteField,
    ring: &PolyRing<FiniteField>,
    mu: &MPoly<FqElem>,
    skip: usize,
) -> Result<(Vec<FqElem>, Embedding)> {
    let m = ring.nvars;
    if m == 0 {
        if skip > 0 {
            return Err(Error::Resource("no further points without variables".into()));
        }
        return Ok((Vec::new(), Embedding::identity(k)));
    }
    let lk = k.degree();
    let mut seen = 0;
    let mut scanned = 0u64;
    for j in 1usize.. {
        let embed = level_field(k, j)?;
        let field = &embed.target;
        let size = field
            .size_u128()
            .ok_or_else(|| Error::Resource("point field too large".into()))?;
        let total = size
            .checked_pow(m as u32)
            .ok_or_else(|| Error::Resource("too many points".into()))?;
        let maximal: Vec<usize> = prime_divisors(j).into_iter().map(|r| lk * j / r).collect();
        for code in 0..total {
            scanned += 1;
            if scanned > POINT_SCAN_LIMIT {
                return Err(Error::Resource("point enumeration budget exhausted".into()));
            }
            let mut c = code;
            let mut pt = vec![field.zero(); m];
            for slot in pt.iter_mut().rev() {
                *slot = field.decode(c % size);
                c /= size;
            }
            if maximal
                .iter()
                .any(|&d| pt.iter().all(|x| field.in_subfield(x, d)))
            {
                continue;
            }
            let v = ring.eval(mu, field, &pt, &|c| Ok(embed.apply(c)))?;
            if !field.is_zero(&v) {
                if seen == skip {
                    return Ok((pt, embed));
                }
                seen += 1;
            }
        }
    }
    unreachable!("levels are unbounded")
}

// ---------------------------------------------------------------------------
// Characteristic 0

/// Substitution followed by an inner reduction on the constant field.
#[derive(Clone, Debug)]
pub struct Char0Sub<E, P> {
    pub point: Vec<E>,
    pub inner: CongruenceMap<P>,
}

fn eval_ratfun<B: Field>(
    rf: &RationalFunctionField<B>,
    x: &RatFun<B::Elem>,
    point: &[B::Elem],
) -> Result<B::Elem> {
    let ring = rf.ring();
    let den = eval_poly(ring, &x.den, point)?;
    if rf.base().is_zero(&den) {
        return Err(Error::Inadmissible(
            "denominator vanishes at the substitution point".into(),
        ));
    }
    let num = eval_poly(ring, &x.num, point)?;
    rf.base().div(&num, &den)
}

fn char0_point<B: Field>(rf: &RationalFunctionField<B>, mu: &MPoly<B::Elem>, skip: usize) -> Result<(Vec<B::Elem>, Vec<String>)> {
    let pt = select_point_char0(rf.ring(), mu, skip)?;
    let text = pt.iter().map(|v| v.to_string()).collect();
    let vals = pt.iter().map(|&v| rf.base().from_i64(v)).collect();
    Ok((vals, text))
}

fn phi3_char0<B: FunctionBase + SwField>(
    rf: &RationalFunctionField<B>,
    g: &GroupInput<RationalFunctionField<B>>,
    skip: usize,
) -> Result<CongruenceMap<Char0Sub<B::Elem, B::Plan>>> {
    let (point, text) = char0_point(rf, &g.mu.poly, skip)?;
    let gens = g
        .gens
        .iter()
        .map(|m| m.map(|x| eval_ratfun(rf, x, &point)))
        .collect::<Result<Vec<_>>>()?;
    let sub = GroupInput::new(rf.base().clone(), g.n, gens)?;
    let inner = rf.base().build_sw(&sub, 0)?;
    Ok(CongruenceMap {
        cert: MapCertificate {
            kind: MapKind::Phi3,
            p: inner.cert.p,
            point: Some(text),
            factor: None,
            target: inner.target.cert(),
            kernel_property: KernelProperty::TorsionFree,
            justification: JUST_SUBST.into(),
            inner: Some(Box::new(inner.cert.clone())),
        },
        target: inner.target.clone(),
        plan: Char0Sub { point, inner },
    })
}

fn apply3_char0<B: FunctionBase + SwField>(
    rf: &RationalFunctionField<B>,
    map: &CongruenceMap<Char0Sub<B::Elem, B::Plan>>,
    x: &RatFun<B::Elem>,
) -> Result<FqElem> {
    let v = eval_ratfun(rf, x, &map.plan.point)?;
    rf.base().apply_scalar(&map.plan.inner, &v)
}

/// Evaluates every coordinate of an algebraic-function-field element at a point.
fn eval_coords<B: Field>(
    aff: &AlgebraicFunctionField<B>,
    x: &[RatFun<B::Elem>],
    point: &[B::Elem],
) -> Result<Vec<B::Elem>> {
    x.iter().map(|c| eval_ratfun(aff.rf(), c, point)).collect()
}

fn horner<F: Field>(k: &F, coords: &[F::Elem], root: &F::Elem) -> F::Elem {
    coords
        .iter()
        .rev()
        .fold(k.zero(), |acc, c| k.add(&k.mul(&acc, root), c))
}

/// Phi4 over ℚ lands either in ℚ (linear factor) or in a number field.
#[derive(Clone, Debug)]
pub enum RationalStage {
    Rational {
        root: BigRational,
        inner: CongruenceMap<u64>,
    },
    Number {
        field: NumberField,
        inner: CongruenceMap<<NumberField as SwField>::Plan>,
    },
}

#[derive(Clone, Debug)]
pub struct RationalPhi4 {
    pub point: Vec<BigRational>,
    pub stage: RationalStage,
}

impl RationalStage {
    fn inner_cert(&self) -> &MapCertificate {
        match self {
            RationalStage::Rational { inner, .. } => &inner.cert,
            RationalStage::Number { inner, .. } => &inner.cert,
        }
    }

    fn target(&self) -> &FiniteField {
        match self {
            RationalStage::Rational { inner, .. } => &inner.target,
            RationalStage::Number { inner, .. } => &inner.target,
        }
    }
}

fn format_qpoly(f: &[BigRational]) -> String {
    upoly::format(&Rationals, f, "t")
}

impl FunctionBase for Rationals {
    type P3 = Char0Sub<BigRational, u64>;
    type P4 = RationalPhi4;

    fn base_shape(&self) -> FieldShape {
        self.shape()
    }

    fn coeff_den(&self, c: &BigRational) -> Option<BigInt> {
        Some(c.denom().clone())
    }

    fn phi3(
        rf: &RationalFunctionField<Self>,
        g: &GroupInput<RationalFunctionField<Self>>,
        skip: usize,
    ) -> Result<CongruenceMap<Self::P3>> {
        phi3_char0(rf, g, skip)
    }

    fn apply3(
        rf: &RationalFunctionField<Self>,
        map: &CongruenceMap<Self::P3>,
        x: &RatFun<BigRational>,
    ) -> Result<FqElem> {
        apply3_char0(rf, map, x)
    }

    fn phi4(
        aff: &AlgebraicFunctionField<Self>,
        g: &GroupInput<AlgebraicFunctionField<Self>>,
        skip: usize,
    ) -> Result<CongruenceMap<Self::P4>> {
        let (point, text) = char0_point(aff.rf(), &g.mu.poly, skip)?;
        let ring = aff.rf().ring();
        let fbar = aff
            .minpoly()
            .iter()
            .map(|c| eval_poly(ring, c, &point))
            .collect::<Result<Vec<_>>>()?;
        let factors = factor_over_q(&fbar)?;
        let h = factors
            .first()
            .ok_or_else(|| Error::Internal("specialized polynomial has no factor".into()))?
            .0
            .clone();
        let factor_text = format_qpoly(&h);
        let stage = if h.len() == 2 {
            let root = -&h[0] / &h[1];
            let gens = g
                .gens
                .iter()
                .map(|m| m.map(|x| Ok(horner(&Rationals, &eval_coords(aff, x, &point)?, &root))))
                .collect::<Result<Vec<_>>>()?;
            let sub = GroupInput::new(Rationals, g.n, gens)?;
            let inner = Rationals.build_sw(&sub, 0)?;
            RationalStage::Rational { root, inner }
        } else {
            let field = NumberField::new(&h)?;
            let alpha = field.alpha();
            let gens = g
                .gens
                .iter()
                .map(|m| {
                    m.map(|x| {
                        let cs: Vec<_> = eval_coords(aff, x, &point)?
                            .into_iter()
                            .map(|c| field.extension().from_base(c))
                            .collect();
                        Ok(horner(&field, &cs, &alpha))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let sub = GroupInput::new(field.clone(), g.n, gens)?;
            let inner = field.build_sw(&sub, 0)?;
            RationalStage::Number { field, inner }
        };
        let cert = MapCertificate {
            kind: MapKind::Phi4,
            p: stage.inner_cert().p,
            point: Some(text),
            factor: Some(factor_text),
            target: stage.target().cert(),
            kernel_property: KernelProperty::TorsionFree,
            justification: JUST_SUBST.into(),
            inner: Some(Box::new(stage.inner_cert().clone())),
        };
        Ok(CongruenceMap {
            cert,
            target: stage.target().clone(),
            plan: RationalPhi4 { point, stage },
        })
    }

    fn apply4(
        aff: &AlgebraicFunctionField<Self>,
        map: &CongruenceMap<Self::P4>,
        x: &[RatFun<BigRational>],
    ) -> Result<FqElem> {
        let coords = eval_coords(aff, x, &map.plan.point)?;
        match &map.plan.stage {
            RationalStage::Rational { root, inner } => {
                Rationals.apply_scalar(inner, &horner(&Rationals, &coords, root))
            }
            RationalStage::Number { field, inner } => {
                let cs: Vec<_> = coords
                    .into_iter()
                    .map(|c| field.extension().from_base(c))
                    .collect();
                field.apply_scalar(inner, &horner(field, &cs, &field.alpha()))
            }
        }
    }
}

/// Phi4 over a number field: substitute, reduce at a prime of the constant
/// field, then adjoin a root of the reduced minimal polynomial.
#[derive(Clone, Debug)]
pub struct NumberPhi4 {
    pub point: Vec<Vec<BigRational>>,
    pub p: u64,
    pub residue: FiniteField,
    pub beta_bar: FqElem,
    pub embed: Embedding,
    pub alpha_bar: FqElem,
}

impl FunctionBase for NumberField {
    type P3 = Char0Sub<Vec<BigRational>, <NumberField as SwField>::Plan>;
    type P4 = NumberPhi4;

    fn base_shape(&self) -> FieldShape {
        self.shape()
    }

    fn coeff_den(&self, c: &Vec<BigRational>) -> Option<BigInt> {
        Some(coord_denominators(std::iter::once(c)))
    }

    fn phi3(
        rf: &RationalFunctionField<Self>,
        g: &GroupInput<RationalFunctionField<Self>>,
        skip: usize,
    ) -> Result<CongruenceMap<Self::P3>> {
        phi3_char0(rf, g, skip)
    }

    fn apply3(
        rf: &RationalFunctionField<Self>,
        map: &CongruenceMap<Self::P3>,
        x: &RatFun<Vec<BigRational>>,
    ) -> Result<FqElem> {
        apply3_char0(rf, map, x)
    }

    fn phi4(
        aff: &AlgebraicFunctionField<Self>,
        g: &GroupInput<AlgebraicFunctionField<Self>>,
        skip: usize,
    ) -> Result<CongruenceMap<Self::P4>> {
        let k = aff.base();
        let (point, text) = char0_point(aff.rf(), &g.mu.poly, skip)?;
        let ring = aff.rf().ring();
        let fbar = aff
            .minpoly()
            .iter()
            .map(|c| eval_poly(ring, c, &point))
            .collect::<Result<Vec<_>>>()?;
        let mut specialized: Vec<Vec<BigRational>> = fbar.clone();
        for m in g.gens.iter().chain(&g.inverses) {
            for x in &m.data {
                specialized.extend(eval_coords(aff, x, &point)?);
            }
        }
        let mu = coord_denominators(specialized.iter());
        let n0 = (g.n * k.degree() * aff.degree()) as u64;
        let route = PrimeConstraints {
            min_exclusive: n0 + 1,
            forbid_divisors: Vec::new(),
        };
        let (p, _) = select_prime(&mu, &[route], 0)?;
        let (residue, beta_bar, base_factor) = residue_field(k, p)?;
        let fp = fbar
            .iter()
            .map(|c| reduce_coords(&residue, p, &beta_bar, c))
            .collect::<Result<Vec<_>>>()?;
        let fp = upoly::trim(&residue, fp);
        let factors = fqfactor::factor(&residue, &fp)?;
        let h = &factors
            .first()
            .ok_or_else(|| Error::Internal("reduced polynomial has no factor".into()))?
            .0;
        let factor_text = upoly::format(&residue, h, "t");
        let (embed, alpha_bar) = if h.len() == 2 {
            (Embedding::identity(&residue), residue.neg(&h[0]))
        } else {
            let fl = flatten(&residue, h)?;
            (fl.embed, fl.root)
        };
        let target = embed.target.clone();
        let base_cert = MapCertificate {
            kind: MapKind::Phi2,
            p,
            point: None,
            factor: Some(base_factor),
            target: residue.cert(),
            kernel_property: KernelProperty::TorsionFree,
            justification: JUST_BOUND.into(),
            inner: None,
        };
        Ok(CongruenceMap {
            cert: MapCertificate {
                kind: MapKind::Phi4,
                p,
                point: Some(text),
                factor: Some(factor_text),
                target: target.cert(),
                kernel_property: KernelProperty::TorsionFree,
                justification: JUST_SUBST_MODP.into(),
                inner: Some(Box::new(base_cert)),
            },
            target,
            plan: NumberPhi4 {
                point,
                p,
                residue,
                beta_bar,
                embed,
                alpha_bar,
            },
        })
    }

    fn apply4(
        aff: &AlgebraicFunctionField<Self>,
        map: &CongruenceMap<Self::P4>,
        x: &[RatFun<Vec<BigRational>>],
    ) -> Result<FqElem> {
        let plan = &map.plan;
        let coords = eval_coords(aff, x, &plan.point)?
            .iter()
            .map(|c| reduce_coords(&plan.residue, plan.p, &plan.beta_bar, c).map(|v| plan.embed.apply(&v)))
            .collect::<Result<Vec<_>>>()?;
        Ok(horner(&map.target, &coords, &plan.alpha_bar))
    }
}

// ---------------------------------------------------------------------------
// Characteristic p

/// Substitution of a point over an extension of the constant field.
#[derive(Clone, Debug)]
pub struct CharPSub {
    /// Coordinates in the target field.
    pub point: Vec<FqElem>,
    /// The constant field into the target field.
    pub embed: Embedding,
    /// Root of the chosen factor (Phi4 only).
    pub alpha_bar: Option<FqElem>,
}

fn eval_ratfun_p(
    rf: &RationalFunctionField<FiniteField>,
    x: &RatFun<FqElem>,
    target: &FiniteField,
    point: &[FqElem],
    embed: &Embedding,
) -> Result<FqElem> {
    let ring = rf.ring();
    let map = |c: &FqElem| Ok(embed.apply(c));
    let den = ring.eval(&x.den, target, point, &map)?;
    if target.is_zero(&den) {
        return Err(Error::Inadmissible(
            "denominator vanishes at the substitution point".into(),
        ));
    }
    let num = ring.eval(&x.num, target, point, &map)?;
    target.div(&num, &den)
}

fn char_p_cert(kind: MapKind, k: &FiniteField, text: Vec<String>, factor: Option<String>, target: &FiniteField) -> MapCertificate {
    MapCertificate {
        kind,
        p: k.p(),
        point: Some(text),
        factor,
        target: target.cert(),
        kernel_property: KernelProperty::TorsionUnipotent,
        justification: JUST_CHAR_P.into(),
        inner: None,
    }
}

impl FunctionBase for FiniteField {
    type P3 = CharPSub;
    type P4 = CharPSub;

    fn base_shape(&self) -> FieldShape {
        FieldShape {
            characteristic: self.p(),
            k: 1,
            e: 1,
            q: Some(self.order()),
        }
    }

    fn coeff_den(&self, _c: &FqElem) -> Option<BigInt> {
        None
    }

    fn phi3(
        rf: &RationalFunctionField<Self>,
        g: &GroupInput<RationalFunctionField<Self>>,
        skip: usize,
    ) -> Result<CongruenceMap<CharPSub>> {
        let k = rf.base();
        let (point, embed) = select_point_charp(k, rf.ring(), &g.mu.poly, skip)?;
        let target = embed.target.clone();
        let text = point.iter().map(|x| target.format(x)).collect();
        Ok(CongruenceMap {
            cert: char_p_cert(MapKind::Phi3, k, text, None, &target),
            target,
            plan: CharPSub {
                point,
                embed,
                alpha_bar: None,
            },
        })
    }

    fn apply3(
        rf: &RationalFunctionField<Self>,
        map: &CongruenceMap<CharPSub>,
        x: &RatFun<FqElem>,
    ) -> Result<FqElem> {
        eval_ratfun_p(rf, x, &map.target, &map.plan.point, &map.plan.embed)
    }

    fn phi4(
        aff: &AlgebraicFunctionField<Self>,
        g: &GroupInput<AlgebraicFunctionField<Self>>,
        skip: usize,
    ) -> Result<CongruenceMap<CharPSub>> {
        let k = aff.base();
        let ring = aff.rf().ring();
        let (point, embed) = select_point_charp(k, ring, &g.mu.poly, skip)?;
        let level = embed.target.clone();
        let text = point.iter().map(|x| level.format(x)).collect();
        let fbar = aff
            .minpoly()
            .iter()
            .map(|c| ring.eval(c, &level, &point, &|c| Ok(embed.apply(c))))
            .collect::<Result<Vec<_>>>()?;
        let fbar = upoly::trim(&level, fbar);
        let factors = fqfactor::factor(&level, &fbar)?;
        let h = &factors
            .first()
            .ok_or_else(|| Error::Internal("specialized polynomial has no factor".into()))?
            .0;
        let factor_text = upoly::format(&level, h, "t");
        let (point, embed, alpha_bar) = if h.len() == 2 {
            (point, embed, level.neg(&h[0]))
        } else {
            let fl = flatten(&level, h)?;
            let pt = point.iter().map(|x| fl.embed.apply(x)).collect();
            (pt, embed.compose(&fl.embed), fl.root)
        };
        let target = embed.target.clone();
        Ok(CongruenceMap {
            cert: char_p_cert(MapKind::Phi4, k, text, Some(factor_text), &target),
            target,
            plan: CharPSub {
                point,
                embed,
                alpha_bar: Some(alpha_bar),
            },
        })
    }

    fn apply4(
        aff: &AlgebraicFunctionField<Self>,
        map: &CongruenceMap<CharPSub>,
        x: &[RatFun<FqElem>],
    ) -> Result<FqElem> {
        let plan = &map.plan;
        let coords = x
            .iter()
            .map(|c| eval_ratfun_p(aff.rf(), c, &map.target, &plan.point, &plan.embed))
            .collect::<Result<Vec<_>>>()?;
        let root = plan
            .alpha_bar
            .as_ref()
            .ok_or_else(|| Error::Internal("missing root".into()))?;
        Ok(horner(&map.target, &coords, root))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_scalar;
    use crate::sw::apply_sw;

    fn points(m: usize, n: usize) -> Vec<Vec<i64>> {
        integer_points(m).take(n).collect()
    }

    #[test]
    fn integer_point_order() {
        assert_eq!(points(1, 4), vec![vec![1], vec![-1], vec![2], vec![-2]]);
        assert_eq!(
            points(2, 5),
            vec![vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1], vec![1, 2]]
        );
    }

    fn qx() -> RationalFunctionField<Rationals> {
        RationalFunctionField::new(Rationals, vec!["x".into()])
    }

    #[test]
    fn char0_points() {
        let rf = qx();
        let x = parse_scalar("x", &rf).unwrap().num;
        assert_eq!(select_point_char0(rf.ring(), &x, 0).unwrap(), vec![1]);
        let xm1 = parse_scalar("x-1", &rf).unwrap().num;
        assert_eq!(select_point_char0(rf.ring(), &xm1, 0).unwrap(), vec![-1]);
    }

    #[test]
    fn char2_point_in_gf4() {
        let k = FiniteField::prime(2).unwrap();
        let rf = RationalFunctionField::new(k.clone(), vec!["x".into()]);
        let mu = parse_scalar("x^2+x", &rf).unwrap().num;
        let (pt, embed) = select_point_charp(&k, rf.ring(), &mu, 0).unwrap();
        assert_eq!(embed.target.degree(), 2);
        let w = &pt[0];
        let f = &embed.target;
        assert_eq!(f.add(&f.mul(w, w), w), f.one());
        assert_eq!(f.format(w), "w");
    }

    #[test]
    fn phi3_char_p_example() {
        let k = FiniteField::prime(5).unwrap();
        let rf = RationalFunctionField::new(k, vec!["x".into()]);
        let g = Matrix::from_rows(vec![
            vec![rf.var(0), rf.zero()],
            vec![rf.zero(), rf.one()],
        ])
        .unwrap();
        let grp = GroupInput::new(rf.clone(), 2, vec![g]).unwrap();
        assert_eq!(rf.ring().format(&grp.mu.poly, rf.vars()), "x");
        let map = rf.build_sw(&grp, 0).unwrap();
        assert_eq!(map.cert.kind, MapKind::Phi3);
        assert_eq!(map.cert.point, Some(vec!["1".to_string()]));
        assert_eq!(map.cert.target.l, 1);
        assert_eq!(map.cert.kernel_property, KernelProperty::TorsionUnipotent);
    }

    #[test]
    fn phi3_char0_composed() {
        let rf = qx();
        let g = Matrix::from_rows(vec![
            vec![rf.var(0), rf.zero()],
            vec![rf.zero(), rf.one()],
        ])
        .unwrap();
        let grp = GroupInput::new(rf.clone(), 2, vec![g.clone()]).unwrap();
        let map = rf.build_sw(&grp, 0).unwrap();
        assert_eq!(map.cert.p, 3);
        let img = apply_sw(&rf, &map, &g).unwrap();
        assert_eq!(img.data, vec![vec![1], vec![0], vec![0], vec![1]]);
    }

    /// `t^2 - (x + c)` over `base(x)` together with the group generated by `diag(a, 1)`.
    fn sqrt_group<B: FunctionBase>(base: B, c: i64) -> (AlgebraicFunctionField<B>, GroupInput<AlgebraicFunctionField<B>>) {
        let rf = RationalFunctionField::new(base, vec!["x".into()]);
        let rhs = rf.add(&rf.var(0), &rf.from_i64(c));
        let aff = AlgebraicFunctionField::new(rf.clone(), vec![rf.neg(&rhs), rf.zero(), rf.one()]).unwrap();
        let g = Matrix::from_rows(vec![
            vec![aff.generator(), aff.zero()],
            vec![aff.zero(), aff.one()],
        ])
        .unwrap();
        let grp = GroupInput::new(aff.clone(), 2, vec![g]).unwrap();
        (aff, grp)
    }

    fn check_square_root<B: FunctionBase>(aff: &AlgebraicFunctionField<B>, map: &SwMap<AlgebraicFunctionField<B>>, c: i64) {
        let a = aff.generator();
        let img = aff.apply_scalar(map, &a).unwrap();
        let rhs = aff.from_base(aff.rf().add(&aff.rf().var(0), &aff.rf().from_i64(c)));
        let t = &map.target;
        assert_eq!(t.mul(&img, &img), aff.apply_scalar(map, &rhs).unwrap());
        assert!(!t.is_zero(&img));
    }

    #[test]
    fn phi4_over_q_through_number_field() {
        let (aff, grp) = sqrt_group(Rationals, 1);
        let map = aff.build_sw(&grp, 0).unwrap();
        assert_eq!(map.cert.kind, MapKind::Phi4);
        assert_eq!(map.cert.point, Some(vec!["1".to_string()]));
        assert_eq!(map.cert.factor.as_deref(), Some("t^2-2"));
        assert_eq!(map.cert.inner.as_ref().unwrap().kind, MapKind::Phi2);
        assert_eq!(map.cert.p, 3);
        assert_eq!(map.target.degree(), 2);
        check_square_root(&aff, &map, 1);
    }

    #[test]
    fn phi4_over_q_split() {
        let (aff, grp) = sqrt_group(Rationals, 3);
        let map = aff.build_sw(&grp, 0).unwrap();
        assert_eq!(map.cert.inner.as_ref().unwrap().kind, MapKind::Phi1);
        assert_eq!(map.target.degree(), 1);
        check_square_root(&aff, &map, 3);
    }

    #[test]
    fn phi4_over_number_field() {
        let k = NumberField::from_ints(&[1, 0, 1]).unwrap().with_var("b");
        let (aff, grp) = sqrt_group(k, 1);
        let map = aff.build_sw(&grp, 0).unwrap();
        assert_eq!(map.cert.justification, JUST_SUBST_MODP);
        assert!(map.cert.p > 2 * 2 * 2 + 1);
        check_square_root(&aff, &map, 1);
    }

    #[test]
    fn phi4_char_p() {
        let k = FiniteField::prime(3).unwrap();
        let (aff, grp) = sqrt_group(k, 0);
        let map = aff.build_sw(&grp, 0).unwrap();
        assert_eq!(map.cert.kind, MapKind::Phi4);
        assert_eq!(map.cert.kernel_property, KernelProperty::TorsionUnipotent);
        check_square_root(&aff, &map, 0);
        let (aff2, grp2) = sqrt_group(FiniteField::prime(3).unwrap(), 1);
        let map2 = aff2.build_sw(&grp2, 1).unwrap();
        check_square_root(&aff2, &map2, 1);
    }
}
