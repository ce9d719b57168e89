//! Finiteness decisions for matrix groups and single matrices.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Budget, Field};
use crate::fingrp::{self, Enumeration, FinGroupImage, DEFAULT_CAP};
use crate::group::GroupInput;
use crate::intfactor::factor;
use crate::matrix::{self, Matrix};
use crate::order::{fq_matrix_order, FACTOR_BUDGET};
use crate::sw::{apply_sw, FieldShape, MapCertificate, SwField, SwMap};

/// Run-time knobs shared by the decision and recognition procedures.
#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub cap: usize,
    pub skip: usize,
    pub max_attempts: usize,
    pub budget: Budget,
    pub precheck: usize,
    /// Values of `ν₁` supplied by the caller, keyed by `n₀`.
    pub nu1_table: BTreeMap<u64, BigUint>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 0,
            cap: DEFAULT_CAP,
            skip: 0,
            max_attempts: 64,
            budget: Budget::default(),
            precheck: 10,
            nu1_table: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorsionBounds {
    pub n0: u64,
    /// Bound on the order of a finite subgroup, when one is known.
    pub nu1: Option<BigUint>,
    /// Bound on the order of a torsion element.
    pub nu2: BigUint,
}

impl TorsionBounds {
    pub fn to_json(&self) -> Value {
        json!({
            "n0": self.n0,
            "nu1": self.nu1.as_ref().map(|v| v.to_string()),
            "nu2": self.nu2.to_string(),
        })
    }
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `n₀`, `ν₁` and `ν₂` for degree `n` over a field of the given shape.
pub fn torsion_bounds(n: usize, shape: &FieldShape) -> TorsionBounds {
    torsion_bounds_with(n, shape, &BTreeMap::new())
}

pub fn torsion_bounds_with(n: usize, shape: &FieldShape, table: &BTreeMap<u64, BigUint>) -> TorsionBounds {
    if shape.characteristic == 0 {
        let n0 = (n * shape.k * shape.e) as u64;
        let log2 = if n0 == 0 { 0 } else { 63 - n0.leading_zeros() as u64 };
        let nu2 = BigUint::from(2u32).pow((log2 + 1) as u32) * BigUint::from(3u32).pow((n0 / 2) as u32);
        let nu1 = if let Some(v) = table.get(&n0) {
            Some(v.clone())
        } else if n0 > 10 || n0 == 3 || n0 == 5 {
            Some(BigUint::from(2u32).pow(n0 as u32) * factorial(n0))
        } else {
            None
        };
        TorsionBounds { n0, nu1, nu2 }
    } else {
        let n0 = (n * shape.e) as u64;
        let q = shape.q.clone().expect("finite constant field has a size");
        TorsionBounds {
            n0,
            nu1: None,
            nu2: q.pow(n0 as u32) - 1u32,
        }
    }
}

/// Whether some prime larger than `bound` divides `value`.
fn has_prime_above(value: &BigUint, bound: u64) -> Result<bool> {
    if value.is_zero() {
        return Ok(false);
    }
    let f = factor(value, FACTOR_BUDGET)?;
    let bound = BigUint::from(bound);
    let above = f.primes().any(|p| *p > bound);
    Ok(above)
}

pub fn is_unipotent_matrix<F: Field>(k: &F, m: &Matrix<F::Elem>) -> Result<bool> {
    let d = matrix::sub(k, m, &matrix::identity(k, m.n))?;
    Ok(matrix::is_zero(k, &matrix::pow(k, &d, m.n as u64)?))
}

/// Row-echelon basis of a subspace of `F^len`.
struct Span<F: Field> {
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: Field> Span<F> {
    fn new() -> Self {
        Span { rows: Vec::new() }
    }

    fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` if independent, returning true when the span grew.
    fn insert(&mut self, k: &F, mut v: Vec<F::Elem>) -> Result<bool> {
        for (pivot, row) in &self.rows {
            if !k.is_zero(&v[*pivot]) {
                let c = v[*pivot].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x = k.sub(x, &k.mul(&c, r));
                }
            }
        }
        let Some(pivot) = v.iter().position(|x| !k.is_zero(x)) else {
            return Ok(false);
        };
        let inv = k.inv(&v[pivot])?;
        let v: Vec<F::Elem> = v.iter().map(|x| k.mul(x, &inv)).collect();
        for (_, row) in self.rows.iter_mut() {
            if !k.is_zero(&row[pivot]) {
                let c = row[pivot].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x = k.sub(x, &k.mul(&c, r));
                }
            }
        }
        self.rows.push((pivot, v));
        Ok(true)
    }
}

/// Decides whether the normal closure of `kernel` in `G` is unipotent, by
/// closing the span of the conjugates of `k - 1` into an associative algebra
/// and checking that it is nilpotent.
pub fn normal_closure_unipotent<F: SwField>(
    g: &GroupInput<F>,
    kernel: &[Matrix<F::Elem>],
    budget: &Budget,
) -> Result<bool> {
    let k = &g.field;
    let n = g.n;
    let id = matrix::identity(k, n);
    let mut span: Span<F> = Span::new();
    let mut basis: Vec<Matrix<F::Elem>> = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    let add = |x: Matrix<F::Elem>,
                   span: &mut Span<F>,
                   basis: &mut Vec<Matrix<F::Elem>>,
                   queue: &mut std::collections::VecDeque<Matrix<F::Elem>>|
     -> Result<()> {
        if matrix::is_zero(k, &x) {
            return Ok(());
        }
        budget.check(matrix::size(k, &x))?;
        if span.insert(k, x.data.clone())? {
            basis.push(x.clone());
            queue.push_back(x);
        }
        Ok(())
    };
    for m in kernel {
        add(matrix::sub(k, m, &id)?, &mut span, &mut basis, &mut queue)?;
    }
    while let Some(x) = queue.pop_front() {
        let mut cands = Vec::new();
        for (h, hi) in g.gens.iter().zip(&g.inverses) {
            cands.push(matrix::mul(k, &matrix::mul(k, h, &x)?, hi)?);
            cands.push(matrix::mul(k, &matrix::mul(k, hi, &x)?, h)?);
        }
        for b in basis.clone() {
            cands.push(matrix::mul(k, &x, &b)?);
            cands.push(matrix::mul(k, &b, &x)?);
        }
        for c in cands {
            add(c, &mut span, &mut basis, &mut queue)?;
            if span.dim() == n * n {
                // The full matrix algebra contains the identity.
                return Ok(false);
            }
        }
    }
    let mut flag: Vec<Vec<F::Elem>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect())
        .collect();
    for _ in 0..n {
        if flag.is_empty() {
            return Ok(true);
        }
        let mut next: Span<F> = Span::new();
        for a in &basis {
            for w in &flag {
                let v: Vec<F::Elem> = (0..n)
                    .map(|i| {
                        (0..n).fold(k.zero(), |acc, j| k.add(&acc, &k.mul(a.get(i, j), &w[j])))
                    })
                    .collect();
                next.insert(k, v)?;
            }
        }
        flag = next.rows.into_iter().map(|(_, v)| v).collect();
    }
    Ok(flag.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Finiteness {
    Finite,
    Infinite,
    Undecided(String),
}

impl Finiteness {
    pub fn to_json(&self) -> Value {
        match self {
            Finiteness::Finite => json!(true),
            Finiteness::Infinite => json!(false),
            Finiteness::Undecided(_) => json!("undecided"),
        }
    }

    pub fn is_decided(&self) -> bool {
        !matches!(self, Finiteness::Undecided(_))
    }
}

/// Size of an enumerated image, or a strict lower bound when the cap was hit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImageOrder {
    Exact(usize),
    Exceeds(usize),
}

impl ImageOrder {
    fn to_json(self) -> Value {
        match self {
            ImageOrder::Exact(n) => json!({ "order": n }),
            ImageOrder::Exceeds(n) => json!({ "exceeds": n }),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelGenerator {
    pub trivial: bool,
    pub unipotent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecheckEntry {
    pub finite: Finiteness,
    pub order: Option<BigUint>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certificate {
    pub maps: Vec<MapCertificate>,
    pub image_orders: Vec<ImageOrder>,
    pub bounds: Option<TorsionBounds>,
    pub relator_count: Option<usize>,
    pub kernel: Vec<KernelGenerator>,
    pub normal_closure_unipotent: Option<bool>,
    pub precheck: Vec<PrecheckEntry>,
    pub decided_by: Option<String>,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        json!({
            "maps": self.maps.iter().map(MapCertificate::to_json).collect::<Vec<_>>(),
            "image_orders": self.image_orders.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
            "bounds": self.bounds.as_ref().map(TorsionBounds::to_json),
            "relator_count": self.relator_count,
            "kernel_generator_count": self.kernel.len(),
            "kernel_generators": self.kernel.iter().map(|g| json!({"trivial": g.trivial, "unipotent": g.unipotent})).collect::<Vec<_>>(),
            "normal_closure_unipotent": self.normal_closure_unipotent,
            "precheck": self.precheck.iter().map(|p| json!({
                "finite": p.finite.to_json(),
                "order": p.order.as_ref().map(|o| o.to_string()),
            })).collect::<Vec<_>>(),
            "decided_by": self.decided_by,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub finite: Finiteness,
    pub order: Option<BigUint>,
    pub certificate: Certificate,
}

impl Verdict {
    fn decided(finite: bool, order: Option<BigUint>, cert: Certificate, why: &str) -> Self {
        let mut certificate = cert;
        certificate.decided_by = Some(why.into());
        Verdict {
            finite: if finite { Finiteness::Finite } else { Finiteness::Infinite },
            order,
            certificate,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "finite": self.finite.to_json(),
            "order": self.order.as_ref().map(|o| o.to_string()),
            "certificate": self.certificate.to_json(),
        });
        if let Finiteness::Undecided(reason) = &self.finite {
            v["reason"] = json!(reason);
        }
        v
    }
}

/// Turns resource exhaustion into an undecided verdict that keeps the
/// partial certificate.
fn settle(result: Result<Verdict>, cert: &Certificate) -> Result<Verdict> {
    match result {
        Err(Error::Resource(reason)) => Ok(Verdict {
            finite: Finiteness::Undecided(reason),
            order: None,
            certificate: cert.clone(),
        }),
        other => other,
    }
}

/// Image of the generators under a map.
pub fn image_generators<F: SwField>(g: &GroupInput<F>, map: &SwMap<F>) -> Result<Vec<Matrix<crate::finite::FqElem>>> {
    g.gens.iter().map(|m| apply_sw(&g.field, map, m)).collect()
}

pub fn enumerate_image<F: SwField>(g: &GroupInput<F>, map: &SwMap<F>, cap: usize) -> Result<Enumeration> {
    fingrp::enumerate(&map.target, g.n, &image_generators(g, map)?, cap)
}

/// Lifts of the spanning-tree words and of their inverses, built along the tree.
pub struct TreeLifts<E> {
    pub forward: Vec<Matrix<E>>,
    pub backward: Vec<Matrix<E>>,
}

pub fn lift_tree<F: SwField>(g: &GroupInput<F>, image: &FinGroupImage, budget: &Budget) -> Result<TreeLifts<F::Elem>> {
    let k = &g.field;
    let mut forward = Vec::with_capacity(image.order());
    let mut backward = Vec::with_capacity(image.order());
    for edge in &image.tree {
        match edge {
            None => {
                forward.push(g.identity());
                backward.push(g.identity());
            }
            Some(t) => {
                let (step, step_inv) = if t.sign == 1 {
                    (&g.gens[t.index], &g.inverses[t.index])
                } else {
                    (&g.inverses[t.index], &g.gens[t.index])
                };
                let f = matrix::mul_checked(k, &forward[t.parent], step, budget)?;
                let b = matrix::mul_checked(k, step_inv, &backward[t.parent], budget)?;
                forward.push(f);
                backward.push(b);
            }
        }
    }
    Ok(TreeLifts { forward, backward })
}

/// Evaluation over the input field of the relator of a non-tree edge.
pub fn evaluate_edge<F: SwField>(
    g: &GroupInput<F>,
    image: &FinGroupImage,
    lifts: &TreeLifts<F::Elem>,
    edge: (usize, usize),
    budget: &Budget,
) -> Result<Matrix<F::Elem>> {
    let (e, i) = edge;
    let f = image.right[e][i];
    let m = matrix::mul_checked(&g.field, &lifts.forward[e], &g.gens[i], budget)?;
    matrix::mul_checked(&g.field, &m, &lifts.backward[f], budget)
}

/// Result of testing a single matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicVerdict {
    pub finite: Finiteness,
    pub order: Option<BigUint>,
    pub maps: Vec<MapCertificate>,
    pub image_orders: Vec<BigUint>,
    pub bounds: TorsionBounds,
    pub decided_by: Option<String>,
}

impl CyclicVerdict {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "finite": self.finite.to_json(),
            "order": self.order.as_ref().map(|o| o.to_string()),
            "certificate": {
                "maps": self.maps.iter().map(MapCertificate::to_json).collect::<Vec<_>>(),
                "image_orders": self.image_orders.iter().map(|o| o.to_string()).collect::<Vec<_>>(),
                "bounds": self.bounds.to_json(),
                "decided_by": self.decided_by,
            },
        });
        if let Finiteness::Undecided(reason) = &self.finite {
            v["reason"] = json!(reason);
        }
        v
    }
}

fn pow_big_checked<F: Field>(k: &F, m: &Matrix<F::Elem>, e: &BigUint, budget: &Budget) -> Result<Matrix<F::Elem>> {
    let mut acc = matrix::identity(k, m.n);
    for i in (0..e.bits()).rev() {
        acc = matrix::mul_checked(k, &acc, &acc, budget)?;
        if e.bit(i) {
            acc = matrix::mul_checked(k, &acc, m, budget)?;
        }
    }
    Ok(acc)
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

/// Decides whether `m` has finite order, returning the order when it does.
pub fn is_finite_cyclic<F: SwField>(field: &F, m: &Matrix<F::Elem>, cfg: &Config) -> Result<CyclicVerdict> {
    let g = GroupInput::new(field.clone(), m.n, vec![m.clone()])?;
    let shape = field.shape();
    let bounds = torsion_bounds_with(m.n, &shape, &cfg.nu1_table);
    let mut out = CyclicVerdict {
        finite: Finiteness::Undecided(String::new()),
        order: None,
        maps: Vec::new(),
        image_orders: Vec::new(),
        bounds: bounds.clone(),
        decided_by: None,
    };
    let run = |out: &mut CyclicVerdict| -> Result<()> {
        let mut d = BigUint::one();
        for skip in [cfg.skip, cfg.skip + 1] {
            let map = field.build_sw(&g, skip)?;
            let h = apply_sw(field, &map, m)?;
            let o = fq_matrix_order(&map.target, &h)?;
            d = d.lcm(&o);
            out.maps.push(map.cert.clone());
            out.image_orders.push(o);
        }
        if d > bounds.nu2 {
            out.finite = Finiteness::Infinite;
            out.decided_by = Some("image order exceeds nu2".into());
            return Ok(());
        }
        if shape.characteristic == 0 && has_prime_above(&d, bounds.n0 + 1)? {
            out.finite = Finiteness::Infinite;
            out.decided_by = Some("a prime above n0+1 divides the image order".into());
            return Ok(());
        }
        let gd = pow_big_checked(field, m, &d, &cfg.budget)?;
        let (finite, multiple) = if shape.characteristic == 0 {
            (matrix::is_identity(field, &gd), d.clone())
        } else {
            let p = shape.characteristic;
            (
                is_unipotent_matrix(field, &gd)?,
                &d * BigUint::from(p).pow(ceil_log(p, m.n)),
            )
        };
        if !finite {
            out.finite = Finiteness::Infinite;
            out.decided_by = Some(if shape.characteristic == 0 {
                "g^d is not the identity".into()
            } else {
                "g^d is not unipotent".into()
            });
            return Ok(());
        }
        let mut order = multiple;
        let primes: Vec<BigUint> = factor(&order, FACTOR_BUDGET)?.primes().cloned().collect();
        for ell in primes {
            while (&order % &ell).is_zero() {
                let cand = &order / &ell;
                if matrix::is_identity(field, &pow_big_checked(field, m, &cand, &cfg.budget)?) {
                    order = cand;
                } else {
                    break;
                }
            }
        }
        out.finite = Finiteness::Finite;
        out.order = Some(order);
        out.decided_by = Some(if shape.characteristic == 0 {
            "g^d is the identity".into()
        } else {
            "g^d is unipotent".into()
        });
        Ok(())
    };
    match run(&mut out) {
        Ok(()) => Ok(out),
        Err(Error::Resource(reason)) => {
            out.finite = Finiteness::Undecided(reason);
            Ok(out)
        }
        Err(e) => Err(e),
    }
}

/// Decides whether the group generated by `g` is finite.
pub fn is_finite<F: SwField>(g: &GroupInput<F>, cfg: &Config) -> Result<Verdict> {
    let mut cert = Certificate::default();
    let result = is_finite_inner(g, cfg, &mut cert);
    settle(result, &cert)
}

fn is_finite_inner<F: SwField>(g: &GroupInput<F>, cfg: &Config, cert: &mut Certificate) -> Result<Verdict> {
    let field = &g.field;
    let shape = field.shape();
    let char0 = shape.characteristic == 0;
    let bounds = torsion_bounds_with(g.n, &shape, &cfg.nu1_table);
    cert.bounds = Some(bounds.clone());
    if g.rank() == 0 {
        return Ok(Verdict::decided(true, Some(BigUint::one()), cert.clone(), "no generators"));
    }

    if cfg.precheck > 0 {
        let randoms = match fingrp::product_replacement(field, g.n, &g.gens, cfg.seed, cfg.precheck, &cfg.budget) {
            Ok(r) => r,
            Err(Error::Resource(_)) => Vec::new(),
            Err(e) => return Err(e),
        };
        for x in &randoms {
            let v = is_finite_cyclic(field, x, cfg)?;
            cert.precheck.push(PrecheckEntry {
                finite: v.finite.clone(),
                order: v.order.clone(),
            });
            if v.finite == Finiteness::Infinite {
                return Ok(Verdict::decided(false, None, cert.clone(), "random element of infinite order"));
            }
        }
    }

    let cap = match (&bounds.nu1, char0) {
        (Some(nu1), true) => (nu1 + 1u32).to_usize().map_or(cfg.cap, |c| c.min(cfg.cap)),
        _ => cfg.cap,
    };
    let cap_certifies = char0 && bounds.nu1.as_ref().is_some_and(|nu1| BigUint::from(cap) > *nu1);
    let skips: Vec<usize> = if char0 {
        vec![cfg.skip, cfg.skip + 1]
    } else {
        vec![cfg.skip]
    };
    let mut first: Option<(SwMap<F>, FinGroupImage)> = None;
    let mut orders = Vec::new();
    for skip in skips {
        let map = field.build_sw(g, skip)?;
        cert.maps.push(map.cert.clone());
        match enumerate_image(g, &map, cap)? {
            Enumeration::Complete(img) => {
                cert.image_orders.push(ImageOrder::Exact(img.order()));
                orders.push(Some(img.order()));
                if first.is_none() {
                    first = Some((map, img));
                }
            }
            Enumeration::CapExceeded(c) => {
                cert.image_orders.push(ImageOrder::Exceeds(c));
                orders.push(None);
                if cap_certifies {
                    return Ok(Verdict::decided(false, None, cert.clone(), "image order exceeds nu1"));
                }
            }
        }
    }
    if char0 {
        match (orders[0], orders[1]) {
            (Some(a), Some(b)) if a != b => {
                return Ok(Verdict::decided(false, None, cert.clone(), "image orders differ"));
            }
            (Some(_), None) | (None, Some(_)) => {
                return Ok(Verdict::decided(false, None, cert.clone(), "image orders differ"));
            }
            (None, None) => {
                return Err(Error::Resource(format!("image exceeds the enumeration cap of {cap}")));
            }
            _ => {}
        }
    }
    let Some((_, image)) = first else {
        return Err(Error::Resource(format!("image exceeds the enumeration cap of {cap}")));
    };
    let h = BigUint::from(image.order());
    if char0
        && has_prime_above(&h, bounds.n0 + 1)? {
            return Ok(Verdict::decided(false, None, cert.clone(), "a prime above n0+1 divides the image order"));
        }

    let edges = image.non_tree_edges();
    cert.relator_count = Some(edges.len());
    let lifts = lift_tree(g, &image, &cfg.budget)?;
    let mut kernel = Vec::new();
    for &edge in &edges {
        let m = evaluate_edge(g, &image, &lifts, edge, &cfg.budget)?;
        let trivial = matrix::is_identity(field, &m);
        let unipotent = trivial || is_unipotent_matrix(field, &m)?;
        cert.kernel.push(KernelGenerator { trivial, unipotent });
        if char0 && !trivial {
            return Ok(Verdict::decided(false, None, cert.clone(), "nontrivial kernel generator"));
        }
        if !trivial {
            if !unipotent {
                cert.normal_closure_unipotent = Some(false);
                return Ok(Verdict::decided(false, None, cert.clone(), "kernel generator is not unipotent"));
            }
            if !kernel.contains(&m) {
                kernel.push(m);
            }
        }
    }
    if char0 {
        return Ok(Verdict::decided(true, Some(h), cert.clone(), "all kernel generators are trivial"));
    }
    let unipotent = normal_closure_unipotent(g, &kernel, &cfg.budget)?;
    cert.normal_closure_unipotent = Some(unipotent);
    let order = kernel.is_empty().then_some(h);
    Ok(Verdict::decided(
        unipotent,
        order,
        cert.clone(),
        if unipotent {
            "normal closure of the kernel generators is unipotent"
        } else {
            "normal closure of the kernel generators is not unipotent"
        },
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fingrp::Word;
    use crate::finite::FiniteField;
    use crate::parse::parse_scalar;
    use crate::ratfun::RationalFunctionField;
    use crate::rational::Rationals;

    fn qm(rows: &[&[i64]]) -> Matrix<num_rational::BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect()).collect())
            .unwrap()
    }

    fn shape0(k: usize, e: usize) -> FieldShape {
        FieldShape {
            characteristic: 0,
            k,
            e,
            q: None,
        }
    }

    #[test]
    fn bounds() {
        let b = torsion_bounds(3, &shape0(1, 1));
        assert_eq!((b.n0, b.nu1.clone(), b.nu2.clone()), (3, Some(BigUint::from(48u32)), BigUint::from(12u32)));
        let b = torsion_bounds(2, &shape0(1, 1));
        assert_eq!((b.nu1, b.nu2), (None, BigUint::from(12u32)));
        let f2 = FieldShape {
            characteristic: 2,
            k: 1,
            e: 1,
            q: Some(BigUint::from(2u32)),
        };
        let b = torsion_bounds(3, &f2);
        assert_eq!((b.n0, b.nu1, b.nu2), (3, None, BigUint::from(7u32)));
        assert_eq!(torsion_bounds(5, &shape0(1, 1)).nu1, Some(BigUint::from(3840u32)));
        assert_eq!(torsion_bounds(8, &shape0(1, 1)).nu1, None);
    }

    fn f2x() -> RationalFunctionField<FiniteField> {
        RationalFunctionField::new(FiniteField::prime(2).unwrap(), vec!["x".into()])
    }

    fn fm<F: crate::parse::Identifiers>(k: &F, rows: &[&[&str]]) -> Matrix<F::Elem> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|s| parse_scalar(s, k).unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn word_evaluation() {
        let rot = qm(&[&[0, -1], &[1, 0]]);
        let inv = matrix::inverse(&Rationals, &rot).unwrap();
        let w = fingrp::evaluate_word(&Rationals, 2, &[rot], &[inv], &Word::letter(0, 2), &Budget::default()).unwrap();
        assert_eq!(w, qm(&[&[-1, 0], &[0, -1]]));
        let k = f2x();
        let g1 = fm(&k, &[&["1", "x"], &["0", "1"]]);
        let g2 = fm(&k, &[&["1", "1"], &["0", "1"]]);
        let gens = vec![g1.clone(), g2.clone()];
        let invs: Vec<_> = gens.iter().map(|g| matrix::inverse(&k, g).unwrap()).collect();
        let w = Word::letter(0, 1).concat(&Word::letter(1, -1));
        let v = fingrp::evaluate_word(&k, 2, &gens, &invs, &w, &Budget::default()).unwrap();
        assert_eq!(v, fm(&k, &[&["1", "x+1"], &["0", "1"]]));
    }

    #[test]
    fn unipotent_matrices() {
        assert!(is_unipotent_matrix(&Rationals, &qm(&[&[1, 5], &[0, 1]])).unwrap());
        assert!(!is_unipotent_matrix(&Rationals, &qm(&[&[2, 0], &[0, 1]])).unwrap());
        let k = f2x();
        assert!(is_unipotent_matrix(&k, &fm(&k, &[&["1", "x"], &["0", "1"]])).unwrap());
    }

    #[test]
    fn normal_closures() {
        let k = f2x();
        let g = GroupInput::new(
            k.clone(),
            2,
            vec![fm(&k, &[&["1", "x"], &["0", "1"]]), fm(&k, &[&["1", "1"], &["0", "1"]])],
        )
        .unwrap();
        let b = Budget::default();
        assert!(normal_closure_unipotent(&g, &[fm(&k, &[&["1", "x+1"], &["0", "1"]])], &b).unwrap());
        assert!(normal_closure_unipotent(&g, &[g.identity()], &b).unwrap());
        let k3 = RationalFunctionField::new(FiniteField::prime(3).unwrap(), vec!["x".into()]);
        let g3 = GroupInput::new(k3.clone(), 2, vec![fm(&k3, &[&["x", "0"], &["0", "1"]])]).unwrap();
        assert!(!normal_closure_unipotent(&g3, &[fm(&k3, &[&["x^2", "0"], &["0", "1"]])], &b).unwrap());
    }

    #[test]
    fn finiteness_examples() {
        let cfg = Config::default();
        let rot = GroupInput::new(Rationals, 2, vec![qm(&[&[0, -1], &[1, 0]])]).unwrap();
        let v = is_finite(&rot, &cfg).unwrap();
        assert_eq!(v.finite, Finiteness::Finite);
        assert_eq!(v.order, Some(BigUint::from(4u32)));
        let uni = GroupInput::new(Rationals, 2, vec![qm(&[&[1, 1], &[0, 1]])]).unwrap();
        assert_eq!(is_finite(&uni, &cfg).unwrap().finite, Finiteness::Infinite);
        let k = f2x();
        let klein = GroupInput::new(
            k.clone(),
            2,
            vec![fm(&k, &[&["1", "x"], &["0", "1"]]), fm(&k, &[&["1", "1"], &["0", "1"]])],
        )
        .unwrap();
        let v = is_finite(&klein, &cfg).unwrap();
        assert_eq!(v.finite, Finiteness::Finite);
        assert_eq!(v.certificate.normal_closure_unipotent, Some(true));
        let k5 = RationalFunctionField::new(FiniteField::prime(5).unwrap(), vec!["x".into()]);
        let dx = GroupInput::new(k5.clone(), 2, vec![fm(&k5, &[&["x", "0"], &["0", "1"]])]).unwrap();
        assert_eq!(is_finite(&dx, &cfg).unwrap().finite, Finiteness::Infinite);
        let no_pre = Config {
            precheck: 0,
            ..Config::default()
        };
        assert_eq!(is_finite(&dx, &no_pre).unwrap().finite, Finiteness::Infinite);
        assert_eq!(is_finite(&uni, &no_pre).unwrap().finite, Finiteness::Infinite);
    }

    #[test]
    fn cyclic_examples() {
        let cfg = Config::default();
        let v = is_finite_cyclic(&Rationals, &qm(&[&[0, -1], &[1, 0]]), &cfg).unwrap();
        assert_eq!((v.finite, v.order), (Finiteness::Finite, Some(BigUint::from(4u32))));
        let v = is_finite_cyclic(&Rationals, &qm(&[&[1, 1], &[0, 1]]), &cfg).unwrap();
        assert_eq!(v.finite, Finiteness::Infinite);
        let k3 = RationalFunctionField::new(FiniteField::prime(3).unwrap(), vec!["x".into()]);
        let v = is_finite_cyclic(&k3, &fm(&k3, &[&["x", "0"], &["0", "1"]]), &cfg).unwrap();
        assert_eq!(v.finite, Finiteness::Infinite);
        let k = f2x();
        let v = is_finite_cyclic(&k, &fm(&k, &[&["1", "x"], &["0", "1"]]), &cfg).unwrap();
        assert_eq!((v.finite, v.order), (Finiteness::Finite, Some(BigUint::from(2u32))));
    }
}
