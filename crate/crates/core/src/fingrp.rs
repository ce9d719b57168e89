//! Matrix groups over finite fields: enumeration with witness words,
//! presentations from the Cayley graph, and product replacement.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Budget, Field};
use crate::finite::{FiniteField, FqElem};
use crate::matrix::{self, Matrix};

/// Default bound on the number of enumerated elements.
pub const DEFAULT_CAP: usize = 200_000;

/// Mixing steps before product replacement starts returning elements.
pub const BURN_IN: usize = 50;

/// A word in the generators and their inverses. Generator indices are
/// 0-based; adjacent letters have distinct indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<(usize, i64)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    pub fn letter(index: usize, exp: i64) -> Self {
        let mut w = Word::identity();
        w.push(index, exp);
        w
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters counted with multiplicity.
    pub fn length(&self) -> u64 {
        self.0.iter().map(|(_, e)| e.unsigned_abs()).sum()
    }

    /// Appends `g_index^exp`, merging with the last letter.
    pub fn push(&mut self, index: usize, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.0.last_mut() {
            if last.0 == index {
                last.1 += exp;
                if last.1 == 0 {
                    self.0.pop();
                }
                return;
            }
        }
        self.0.push((index, exp));
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &(i, e) in &other.0 {
            w.push(i, e);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(i, e)| (i, -e)).collect())
    }

    pub fn max_index(&self) -> Option<usize> {
        self.0.iter().map(|&(i, _)| i).max()
    }
}

fn letter_name(i: usize) -> String {
    if i < 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("g{}", i + 1)
    }
}

impl Word {
    /// Parses the printed form, e.g. `a^2*b^-1` or `1`, for `rank` generators.
    pub fn parse(text: &str, rank: usize) -> Result<Word> {
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut w = Word::identity();
        if compact.is_empty() || compact == "1" {
            return Ok(w);
        }
        let mut offset = 0;
        for token in compact.split('*') {
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => {
                    let exp: i64 = e
                        .parse()
                        .map_err(|_| Error::parse(offset + n.len() + 1, format!("invalid exponent {e:?}")))?;
                    (n, exp)
                }
                None => (token, 1),
            };
            let index = if name.len() == 1 && name.as_bytes()[0].is_ascii_lowercase() {
                (name.as_bytes()[0] - b'a') as usize
            } else if let Some(num) = name.strip_prefix('g') {
                num.parse::<usize>()
                    .ok()
                    .filter(|&i| i >= 1)
                    .map(|i| i - 1)
                    .ok_or_else(|| Error::parse(offset, format!("unknown generator {name:?}")))?
            } else {
                return Err(Error::parse(offset, format!("unknown generator {name:?}")));
            };
            if index >= rank {
                return Err(Error::parse(offset, format!("generator {name:?} out of range")));
            }
            w.push(index, exp);
            offset += token.len() + 1;
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(i, e)| match e {
                1 => letter_name(i),
                _ => format!("{}^{}", letter_name(i), e),
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Evaluates a word given the generators and their inverses, checking the
/// budget after every product.
pub fn evaluate_word<F: Field>(
    k: &F,
    n: usize,
    gens: &[Matrix<F::Elem>],
    inverses: &[Matrix<F::Elem>],
    w: &Word,
    budget: &Budget,
) -> Result<Matrix<F::Elem>> {
    let mut acc = matrix::identity(k, n);
    for &(i, e) in &w.0 {
        let g = if e > 0 { gens.get(i) } else { inverses.get(i) }
            .ok_or_else(|| Error::InvalidInput(format!("word uses generator {} of {}", i + 1, gens.len())))?;
        for _ in 0..e.unsigned_abs() {
            acc = matrix::mul_checked(k, &acc, g, budget)?;
        }
    }
    Ok(acc)
}

/// How an element was first reached: `parent * g_index^sign`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeEdge {
    pub parent: usize,
    pub index: usize,
    pub sign: i64,
}

/// A completely enumerated matrix group over a finite field.
#[derive(Clone, Debug)]
pub struct FinGroupImage {
    pub field: FiniteField,
    pub n: usize,
    pub gens: Vec<Matrix<FqElem>>,
    pub elements: Vec<Matrix<FqElem>>,
    pub words: Vec<Word>,
    /// `tree[e]` is `None` for the identity.
    pub tree: Vec<Option<TreeEdge>>,
    /// `right[e][i]` is the index of `elements[e] * gens[i]`.
    pub right: Vec<Vec<usize>>,
    index: HashMap<Matrix<FqElem>, usize>,
}

#[derive(Clone, Debug)]
pub enum Enumeration {
    Complete(FinGroupImage),
    /// The group has more than this many elements.
    CapExceeded(usize),
}

/// Breadth-first closure from the identity under right multiplication by
/// `g_1, g_1^-1, g_2, g_2^-1, ...`.
pub fn enumerate(k: &FiniteField, n: usize, gens: &[Matrix<FqElem>], cap: usize) -> Result<Enumeration> {
    let mut letters = Vec::with_capacity(2 * gens.len());
    for (i, g) in gens.iter().enumerate() {
        letters.push((i, 1i64, g.clone()));
        letters.push((i, -1i64, matrix::inverse(k, g)?));
    }
    let id = matrix::identity(k, n);
    let mut elements = vec![id.clone()];
    let mut words = vec![Word::identity()];
    let mut tree = vec![None];
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut index = HashMap::new();
    index.insert(id, 0usize);
    let mut e = 0;
    while e < elements.len() {
        let mut row = vec![usize::MAX; gens.len()];
        for (i, sign, g) in &letters {
            let prod = matrix::mul(k, &elements[e], g)?;
            let target = match index.get(&prod) {
                Some(&t) => t,
                None => {
                    if elements.len() >= cap {
                        return Ok(Enumeration::CapExceeded(elements.len()));
                    }
                    let t = elements.len();
                    let mut w = words[e].clone();
                    w.push(*i, *sign);
                    index.insert(prod.clone(), t);
                    elements.push(prod);
                    words.push(w);
                    tree.push(Some(TreeEdge {
                        parent: e,
                        index: *i,
                        sign: *sign,
                    }));
                    t
                }
            };
            if *sign == 1 {
                row[*i] = target;
            }
        }
        right.push(row);
        e += 1;
    }
    Ok(Enumeration::Complete(FinGroupImage {
        field: k.clone(),
        n,
        gens: gens.to_vec(),
        elements,
        words,
        tree,
        right,
        index,
    }))
}

impl FinGroupImage {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn position(&self, m: &Matrix<FqElem>) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn rank(&self) -> usize {
        self.gens.len()
    }

    /// Edges `e -> e * g_i` of the Cayley graph that are not spanning-tree
    /// edges, as `(e, i)`.
    pub fn non_tree_edges(&self) -> Vec<(usize, usize)> {
        let mut tree_edges = HashSet::new();
        for (f, edge) in self.tree.iter().enumerate() {
            if let Some(t) = edge {
                if t.sign == 1 {
                    tree_edges.insert((t.parent, t.index));
                } else {
                    tree_edges.insert((f, t.index));
                }
            }
        }
        let mut out = Vec::new();
        for e in 0..self.order() {
            for i in 0..self.rank() {
                if !tree_edges.contains(&(e, i)) {
                    out.push((e, i));
                }
            }
        }
        out
    }

    /// The relator `word(e) * g_i * word(e g_i)^-1` of a non-tree edge.
    pub fn edge_relator(&self, e: usize, i: usize) -> Word {
        let f = self.right[e][i];
        let mut w = self.words[e].clone();
        w.push(i, 1);
        w.concat(&self.words[f].inverse())
    }

    pub fn product(&self, a: usize, b: usize) -> Result<usize> {
        let m = matrix::mul(&self.field, &self.elements[a], &self.elements[b])?;
        self.position(&m)
            .ok_or_else(|| Error::Internal("product left the enumerated group".into()))
    }

    pub fn inverse_of(&self, a: usize) -> Result<usize> {
        let m = matrix::inverse(&self.field, &self.elements[a])?;
        self.position(&m)
            .ok_or_else(|| Error::Internal("inverse left the enumerated group".into()))
    }

    /// Indices of the subgroup generated by the given elements.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Result<Vec<usize>> {
        let mut seen = HashSet::from([0usize]);
        let mut out = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.product(x, g)?;
                if seen.insert(y) {
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        Ok(out)
    }
}

/// Relators read off the Cayley graph: one for each non-tree edge.
pub fn cayley_presentation(image: &FinGroupImage) -> Vec<Word> {
    image
        .non_tree_edges()
        .into_iter()
        .map(|(e, i)| image.edge_relator(e, i))
        .collect()
}

/// A product-replacement slot and its inverse.
type Slot<F> = (Matrix<<F as Field>::Elem>, Matrix<<F as Field>::Elem>);

/// Seeded random elements by product replacement with an accumulator.
pub fn product_replacement<F: Field>(
    k: &F,
    n: usize,
    gens: &[Matrix<F::Elem>],
    seed: u64,
    count: usize,
    budget: &Budget,
) -> Result<Vec<Matrix<F::Elem>>> {
    if gens.is_empty() {
        return Ok(vec![matrix::identity(k, n); count]);
    }
    let slots = gens.len().max(4);
    let mut state: Vec<Slot<F>> = Vec::with_capacity(slots);
    for s in 0..slots {
        let g = gens[s % gens.len()].clone();
        let gi = matrix::inverse(k, &g)?;
        state.push((g, gi));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc = matrix::identity(k, n);
    let mut step = |state: &mut Vec<Slot<F>>, acc: &mut Matrix<F::Elem>| -> Result<()> {
        let i = rng.gen_range(0..slots);
        let mut j = rng.gen_range(0..slots - 1);
        if j >= i {
            j += 1;
        }
        let (sj, sji) = if rng.gen_bool(0.5) {
            (state[j].1.clone(), state[j].0.clone())
        } else {
            state[j].clone()
        };
        let (si, sii) = state[i].clone();
        state[i] = if rng.gen_bool(0.5) {
            (
                matrix::mul_checked(k, &si, &sj, budget)?,
                matrix::mul_checked(k, &sji, &sii, budget)?,
            )
        } else {
            (
                matrix::mul_checked(k, &sj, &si, budget)?,
                matrix::mul_checked(k, &sii, &sji, budget)?,
            )
        };
        *acc = matrix::mul_checked(k, acc, &state[i].0, budget)?;
        Ok(())
    };
    for _ in 0..BURN_IN {
        step(&mut state, &mut acc)?;
    }
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        step(&mut state, &mut acc)?;
        out.push(acc.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Rationals;

    fn fm(k: &FiniteField, rows: &[&[u64]]) -> Matrix<FqElem> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| k.elem(x)).collect()).collect())
            .unwrap()
    }

    fn complete(e: Enumeration) -> FinGroupImage {
        match e {
            Enumeration::Complete(img) => img,
            Enumeration::CapExceeded(c) => panic!("cap exceeded at {c}"),
        }
    }

    #[test]
    fn word_reduction() {
        let mut w = Word::letter(0, 2);
        w.push(0, -2);
        assert!(w.is_empty());
        let w = Word::letter(0, 1).concat(&Word::letter(1, -1));
        assert_eq!(w.to_string(), "a*b^-1");
        assert_eq!(w.inverse().to_string(), "b*a^-1");
        assert_eq!(Word::identity().to_string(), "1");
        assert_eq!(Word::parse("a*b^-1", 2).unwrap(), w);
        assert_eq!(Word::parse(" 1 ", 2).unwrap(), Word::identity());
        assert_eq!(Word::parse("g2^3", 2).unwrap(), Word::letter(1, 3));
        assert!(matches!(Word::parse("a*c", 2), Err(Error::Parse { offset: 2, .. })));
    }

    #[test]
    fn rotation_over_gf5() {
        let k = FiniteField::prime(5).unwrap();
        let img = complete(enumerate(&k, 2, &[fm(&k, &[&[0, 4], &[1, 0]])], 100).unwrap());
        assert_eq!(img.order(), 4);
        for (m, w) in img.elements.iter().zip(&img.words) {
            let inv = vec![matrix::inverse(&k, &img.gens[0]).unwrap()];
            let v = evaluate_word(&k, 2, &img.gens, &inv, w, &Budget::default()).unwrap();
            assert_eq!(&v, m);
        }
        let rels = cayley_presentation(&img);
        assert_eq!(rels, vec![Word::letter(0, 4)]);
    }

    #[test]
    fn trivial_group() {
        let k = FiniteField::prime(5).unwrap();
        let img = complete(enumerate(&k, 2, &[matrix::identity(&k, 2)], 10).unwrap());
        assert_eq!(img.order(), 1);
        assert!(img.words[0].is_empty());
        assert_eq!(cayley_presentation(&img), vec![Word::letter(0, 1)]);
    }

    #[test]
    fn cap_is_reported() {
        let k = FiniteField::prime(7).unwrap();
        let r = enumerate(&k, 2, &[fm(&k, &[&[1, 1], &[0, 1]])], 3).unwrap();
        assert!(matches!(r, Enumeration::CapExceeded(3)));
    }

    #[test]
    fn klein_relator_count() {
        let k = FiniteField::prime(5).unwrap();
        let a = fm(&k, &[&[4, 0], &[0, 1]]);
        let b = fm(&k, &[&[1, 0], &[0, 4]]);
        let img = complete(enumerate(&k, 2, &[a, b], 100).unwrap());
        assert_eq!(img.order(), 4);
        let rels = cayley_presentation(&img);
        assert_eq!(rels.len(), 4 * 2 - 3);
        assert!(rels.contains(&Word::letter(0, 2)));
        assert!(rels.contains(&Word::letter(1, 2)));
    }

    #[test]
    fn product_replacement_is_deterministic_and_cyclic() {
        let q = Rationals;
        let rot = Matrix::from_rows(vec![
            vec![q.from_i64(0), q.from_i64(-1)],
            vec![q.from_i64(1), q.from_i64(0)],
        ])
        .unwrap();
        let b = Budget::default();
        let x = product_replacement(&q, 2, std::slice::from_ref(&rot), 1, 5, &b).unwrap();
        let y = product_replacement(&q, 2, std::slice::from_ref(&rot), 1, 5, &b).unwrap();
        assert_eq!(x, y);
        let powers: Vec<_> = (0..4).map(|e| matrix::pow(&q, &rot, e).unwrap()).collect();
        for m in &x {
            assert!(powers.contains(m));
        }
    }
}
