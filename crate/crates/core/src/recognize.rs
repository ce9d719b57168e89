//! Isomorphic copies of finite groups over finite fields and the queries
//! answered through them.

use std::collections::HashSet;

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::decide::{enumerate_image, evaluate_edge, is_finite, lift_tree, Config, Finiteness, Verdict};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::fingrp::{self, Enumeration, FinGroupImage, Word};
use crate::finite::FqElem;
use crate::group::GroupInput;
use crate::matrix::{self, Matrix};
use crate::sw::{apply_sw, MapCertificate, SwField, SwMap};

/// One homomorphism tried while looking for a faithful image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Attempt {
    pub skip: usize,
    pub map: Option<MapCertificate>,
    pub image_order: Option<usize>,
    pub nontrivial_kernel: usize,
    pub note: Option<String>,
}

impl Attempt {
    fn to_json(&self) -> Value {
        json!({
            "skip": self.skip,
            "map": self.map.as_ref().map(MapCertificate::to_json),
            "image_order": self.image_order,
            "nontrivial_kernel_generators": self.nontrivial_kernel,
            "note": self.note,
        })
    }
}

/// A finite-field image certified faithful: every relator of the image
/// evaluates to the identity over the input field.
#[derive(Clone, Debug)]
pub struct IsoCopy<F: SwField> {
    pub map: SwMap<F>,
    pub image: FinGroupImage,
    pub relator_count: usize,
    pub attempts: Vec<Attempt>,
}

impl<F: SwField> IsoCopy<F> {
    pub fn order(&self) -> usize {
        self.image.order()
    }

    pub fn to_json(&self) -> Value {
        let t = &self.map.target;
        json!({
            "map": self.map.cert.to_json(),
            "generators": self.image.gens.iter().map(|m| matrix::format(t, m)).collect::<Vec<_>>(),
            "order": self.order(),
            "relator_count": self.relator_count,
            "attempts": self.attempts.len(),
            "attempt_log": self.attempts.iter().map(Attempt::to_json).collect::<Vec<_>>(),
        })
    }
}

fn require_finite(v: &Verdict) -> Result<()> {
    match &v.finite {
        Finiteness::Finite => Ok(()),
        Finiteness::Infinite => Err(Error::NotFinite),
        Finiteness::Undecided(r) => Err(Error::Undecided(r.clone())),
    }
}

/// Tries homomorphisms in turn until every relator of the image evaluates
/// to the identity. In characteristic 0 the first map already works for a
/// finite group.
pub fn isomorphic_copy<F: SwField>(g: &GroupInput<F>, cfg: &Config) -> Result<IsoCopy<F>> {
    let char0 = g.field.shape().characteristic == 0;
    let tries = if char0 { 1 } else { cfg.max_attempts };
    let mut attempts = Vec::new();
    for skip in cfg.skip..cfg.skip + tries {
        let map = match g.field.build_sw(g, skip) {
            Ok(m) => m,
            Err(Error::Inadmissible(why)) => {
                attempts.push(Attempt {
                    skip,
                    map: None,
                    image_order: None,
                    nontrivial_kernel: 0,
                    note: Some(why),
                });
                continue;
            }
            Err(e) => return Err(e),
        };
        let image = match enumerate_image(g, &map, cfg.cap)? {
            Enumeration::Complete(img) => img,
            Enumeration::CapExceeded(c) => {
                return Err(Error::Resource(format!("image has more than {c} elements")));
            }
        };
        let edges = image.non_tree_edges();
        let lifts = lift_tree(g, &image, &cfg.budget)?;
        let mut nontrivial = 0;
        for &edge in &edges {
            if !matrix::is_identity(&g.field, &evaluate_edge(g, &image, &lifts, edge, &cfg.budget)?) {
                nontrivial += 1;
                if char0 {
                    break;
                }
            }
        }
        attempts.push(Attempt {
            skip,
            map: Some(map.cert.clone()),
            image_order: Some(image.order()),
            nontrivial_kernel: nontrivial,
            note: None,
        });
        if nontrivial == 0 {
            return Ok(IsoCopy {
                map,
                relator_count: edges.len(),
                image,
                attempts,
            });
        }
        if char0 {
            return Err(Error::NotFinite);
        }
    }
    Err(Error::AttemptsExhausted(attempts.len()))
}

/// The order of a finite group.
pub fn order_of_finite<F: SwField>(g: &GroupInput<F>, cfg: &Config) -> Result<BigUint> {
    let v = is_finite(g, cfg)?;
    require_finite(&v)?;
    if let Some(o) = v.order {
        return Ok(o);
    }
    Ok(BigUint::from(isomorphic_copy(g, cfg)?.order()))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    pub witness: Option<Word>,
    pub group_order: BigUint,
    pub extended_order: Option<BigUint>,
}

impl Membership {
    pub fn to_json(&self) -> Value {
        json!({
            "member": self.member,
            "witness": self.witness.as_ref().map(|w| w.to_string()),
            "group_order": self.group_order.to_string(),
            "extended_order": self.extended_order.as_ref().map(|o| o.to_string()),
        })
    }
}

/// Tests whether `x` lies in the finite group `g`, with a verified witness
/// word when it does.
pub fn membership<F: SwField>(g: &GroupInput<F>, x: &Matrix<F::Elem>, cfg: &Config) -> Result<Membership> {
    if x.n != g.n {
        return Err(Error::DimensionMismatch(format!("element has degree {} instead of {}", x.n, g.n)));
    }
    let group_order = order_of_finite(g, cfg)?;
    let ext = g.extended(x.clone())?;
    let v = is_finite(&ext, cfg)?;
    match &v.finite {
        Finiteness::Infinite => {
            return Ok(Membership {
                member: false,
                witness: None,
                group_order,
                extended_order: None,
            })
        }
        Finiteness::Undecided(r) => return Err(Error::Undecided(r.clone())),
        Finiteness::Finite => {}
    }
    let copy = isomorphic_copy(&ext, cfg)?;
    let extended_order = BigUint::from(copy.order());
    if extended_order != group_order {
        return Ok(Membership {
            member: false,
            witness: None,
            group_order,
            extended_order: Some(extended_order),
        });
    }
    let r = g.rank();
    let sub = match fingrp::enumerate(&copy.map.target, g.n, &copy.image.gens[..r], cfg.cap)? {
        Enumeration::Complete(img) => img,
        Enumeration::CapExceeded(c) => {
            return Err(Error::Resource(format!("image has more than {c} elements")));
        }
    };
    let pos = sub
        .position(&copy.image.gens[r])
        .ok_or_else(|| Error::Internal("image of the element is missing from the image of the group".into()))?;
    let witness = sub.words[pos].clone();
    let lifted = fingrp::evaluate_word(&g.field, g.n, &g.gens, &g.inverses, &witness, &cfg.budget)?;
    if &lifted != x {
        return Err(Error::Internal("witness word does not evaluate to the element".into()));
    }
    Ok(Membership {
        member: true,
        witness: Some(witness),
        group_order,
        extended_order: Some(extended_order),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Query {
    Center,
    Derived,
}

/// A subgroup computed in the copy and lifted back to the input field.
#[derive(Clone, Debug)]
pub struct Subgroup<E> {
    pub order: usize,
    pub generators: Vec<Matrix<E>>,
    pub words: Vec<Word>,
    pub images: Vec<Matrix<FqElem>>,
    /// Indices of all subgroup elements in the copy's enumeration.
    pub elements: Vec<usize>,
}

impl<E> Subgroup<E> {
    pub fn to_json<F: Field<Elem = E>>(&self, field: &F) -> Value {
        json!({
            "order": self.order,
            "generators": self.generators.iter().map(|m| matrix::format(field, m)).collect::<Vec<_>>(),
            "words": self.words.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
        })
    }
}

/// Greedy generating set of the subgroup spanned by `candidates`.
fn greedy_generators(image: &FinGroupImage, candidates: &[usize]) -> Result<(Vec<usize>, Vec<usize>)> {
    let mut gens = Vec::new();
    let mut closure: Vec<usize> = vec![0];
    let mut members: HashSet<usize> = HashSet::from([0]);
    for &c in candidates {
        if !members.contains(&c) {
            gens.push(c);
            closure = image.subgroup_closure(&gens)?;
            members = closure.iter().copied().collect();
        }
    }
    Ok((gens, closure))
}

fn image_generator_indices(image: &FinGroupImage) -> Result<Vec<usize>> {
    image
        .gens
        .iter()
        .map(|m| {
            image
                .position(m)
                .ok_or_else(|| Error::Internal("generator missing from enumeration".into()))
        })
        .collect()
}

fn center(image: &FinGroupImage) -> Result<Vec<usize>> {
    let gens = image_generator_indices(image)?;
    let mut out = Vec::new();
    for e in 0..image.order() {
        let mut central = true;
        for &g in &gens {
            if image.product(e, g)? != image.product(g, e)? {
                central = false;
                break;
            }
        }
        if central {
            out.push(e);
        }
    }
    Ok(out)
}

/// Normal closure of the generator commutators.
fn derived(image: &FinGroupImage) -> Result<Vec<usize>> {
    let gens = image_generator_indices(image)?;
    let invs: Vec<usize> = gens.iter().map(|&g| image.inverse_of(g)).collect::<Result<_>>()?;
    let mut seeds = Vec::new();
    for i in 0..gens.len() {
        for j in i + 1..gens.len() {
            let c = image.product(image.product(invs[i], invs[j])?, image.product(gens[i], gens[j])?)?;
            if c != 0 && !seeds.contains(&c) {
                seeds.push(c);
            }
        }
    }
    let mut closure = image.subgroup_closure(&seeds)?;
    loop {
        let members: HashSet<usize> = closure.iter().copied().collect();
        let mut extra = None;
        'search: for &s in &closure {
            for (&g, &gi) in gens.iter().zip(&invs) {
                let c = image.product(image.product(gi, s)?, g)?;
                if !members.contains(&c) {
                    extra = Some(c);
                    break 'search;
                }
            }
        }
        match extra {
            Some(c) => {
                seeds.push(c);
                closure = image.subgroup_closure(&seeds)?;
            }
            None => return Ok(seeds),
        }
    }
}

/// Center or derived subgroup of a finite group.
pub fn structural_query<F: SwField>(g: &GroupInput<F>, which: Query, cfg: &Config) -> Result<Subgroup<F::Elem>> {
    let v = is_finite(g, cfg)?;
    require_finite(&v)?;
    let copy = isomorphic_copy(g, cfg)?;
    subgroup_in_copy(g, &copy, which, cfg)
}

pub fn subgroup_in_copy<F: SwField>(
    g: &GroupInput<F>,
    copy: &IsoCopy<F>,
    which: Query,
    cfg: &Config,
) -> Result<Subgroup<F::Elem>> {
    let image = &copy.image;
    let candidates = match which {
        Query::Center => center(image)?,
        Query::Derived => derived(image)?,
    };
    let (gens, closure) = greedy_generators(image, &candidates)?;
    let mut generators = Vec::new();
    let mut words = Vec::new();
    let mut images = Vec::new();
    for &e in &gens {
        let w = image.words[e].clone();
        let lifted = fingrp::evaluate_word(&g.field, g.n, &g.gens, &g.inverses, &w, &cfg.budget)?;
        if apply_sw(&g.field, &copy.map, &lifted)? != image.elements[e] {
            return Err(Error::Internal("lifted element does not map back to its image".into()));
        }
        generators.push(lifted);
        words.push(w);
        images.push(image.elements[e].clone());
    }
    Ok(Subgroup {
        order: closure.len(),
        generators,
        words,
        images,
        elements: closure,
    })
}
