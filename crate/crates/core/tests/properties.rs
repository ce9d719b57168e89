use num_bigint::BigInt;
use proptest::prelude::*;

use lingroup::algfun::AlgebraicFunctionField;
use lingroup::decide::Config;
use lingroup::finite::FiniteField;
use lingroup::fingrp::{evaluate_word, Word};
use lingroup::group::GroupInput;
use lingroup::intpoly::discriminant;
use lingroup::matrix::{self, Matrix};
use lingroup::numfield::NumberField;
use lingroup::parse::{parse_scalar, Identifiers};
use lingroup::ratfun::RationalFunctionField;
use lingroup::rational::Rationals;
use lingroup::sw::{apply_sw, build_sw};
use lingroup::{Budget, Field};

/// `sum c_i * g^i`.
fn combo<F: Field>(k: &F, g: &F::Elem, coeffs: &[i64]) -> F::Elem {
    coeffs.iter().rev().fold(k.zero(), |acc, &c| k.add(&k.mul(&acc, g), &k.from_i64(c)))
}

fn fraction<F: Field>(k: &F, g: &F::Elem, num: &[i64], den: &[i64]) -> F::Elem {
    let d = combo(k, g, den);
    let d = if k.is_zero(&d) { k.one() } else { d };
    k.div(&combo(k, g, num), &d).unwrap()
}

fn check_laws<F: Identifiers>(k: &F, a: &F::Elem, b: &F::Elem, c: &F::Elem) -> Result<(), TestCaseError> {
    prop_assert_eq!(k.add(a, b), k.add(b, a));
    prop_assert_eq!(k.mul(a, b), k.mul(b, a));
    prop_assert_eq!(k.add(&k.add(a, b), c), k.add(a, &k.add(b, c)));
    prop_assert_eq!(k.mul(&k.mul(a, b), c), k.mul(a, &k.mul(b, c)));
    prop_assert_eq!(k.mul(a, &k.add(b, c)), k.add(&k.mul(a, b), &k.mul(a, c)));
    prop_assert!(k.is_zero(&k.sub(a, a)));
    prop_assert_eq!(&k.add(a, &k.zero()), a);
    prop_assert_eq!(&k.mul(a, &k.one()), a);
    if !k.is_zero(a) {
        prop_assert!(k.is_one(&k.mul(a, &k.inv(a).unwrap())));
    }
    for x in [a, b, c] {
        let text = k.format(x);
        let back = parse_scalar(&text, k).map_err(|e| TestCaseError::fail(format!("{text}: {e}")))?;
        prop_assert_eq!(&back, x, "round trip of {}", text);
    }
    Ok(())
}

fn coeffs(len: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 0..=len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rational_laws(a in coeffs(1), b in coeffs(1), c in coeffs(1), d in coeffs(1)) {
        let k = Rationals;
        let one = k.one();
        check_laws(
            &k,
            &fraction(&k, &one, &a, &d),
            &fraction(&k, &one, &b, &a),
            &fraction(&k, &one, &c, &b),
        )?;
    }

    #[test]
    fn number_field_laws(a in coeffs(3), b in coeffs(3), c in coeffs(3)) {
        let k = NumberField::from_ints(&[2, 0, 0, 1]).unwrap();
        let g = parse_scalar("a", &k).unwrap();
        check_laws(&k, &combo(&k, &g, &a), &combo(&k, &g, &b), &combo(&k, &g, &c))?;
    }

    #[test]
    fn finite_field_laws(a in coeffs(4), b in coeffs(4), c in coeffs(4)) {
        let k = FiniteField::standard(3, 2).unwrap();
        let g = k.generator();
        check_laws(&k, &combo(&k, &g, &a), &combo(&k, &g, &b), &combo(&k, &g, &c))?;
    }

    #[test]
    fn rational_function_laws(a in coeffs(3), b in coeffs(3), c in coeffs(3), d in coeffs(3)) {
        let k = RationalFunctionField::new(Rationals, vec!["x".into(), "y".into()]);
        let x = k.var(0);
        let y = k.var(1);
        let xy = k.add(&x, &y);
        check_laws(
            &k,
            &fraction(&k, &x, &a, &d),
            &fraction(&k, &xy, &b, &a),
            &fraction(&k, &y, &c, &b),
        )?;
    }

    #[test]
    fn rational_function_arithmetic_is_reduced(a in coeffs(3), b in coeffs(3), c in coeffs(3), d in coeffs(3)) {
        let k = RationalFunctionField::new(FiniteField::prime(5).unwrap(), vec!["x".into()]);
        let x = k.var(0);
        let p = fraction(&k, &x, &a, &b);
        let q = fraction(&k, &x, &c, &d);
        let r = k.ring();
        let sum = k
            .fraction(
                r.add(&r.mul(&p.num, &q.den), &r.mul(&q.num, &p.den)),
                r.mul(&p.den, &q.den),
            )
            .unwrap();
        prop_assert_eq!(k.add(&p, &q), sum);
        let prod = k.fraction(r.mul(&p.num, &q.num), r.mul(&p.den, &q.den)).unwrap();
        prop_assert_eq!(k.mul(&p, &q), prod);
    }

    #[test]
    fn algebraic_function_laws(a in coeffs(2), b in coeffs(2), c in coeffs(2), d in coeffs(2)) {
        let rf = RationalFunctionField::new(Rationals, vec!["x".into()]);
        let minpoly = vec![parse_scalar("-x^3-1", &rf).unwrap(), rf.zero(), rf.one()];
        let k = AlgebraicFunctionField::new(rf, minpoly).unwrap();
        let y = parse_scalar("a", &k).unwrap();
        let x = parse_scalar("x", &k).unwrap();
        let mixed = k.add(&x, &y);
        check_laws(
            &k,
            &fraction(&k, &y, &a, &d),
            &fraction(&k, &mixed, &b, &c),
            &fraction(&k, &x, &c, &a),
        )?;
    }

    #[test]
    fn repeated_factor_iff_zero_discriminant(
        roots in prop::collection::vec(-6i64..=6, 2..=5),
        lead in prop::sample::select(vec![-3i64, -1, 1, 2]),
    ) {
        let mut f = vec![BigInt::from(lead)];
        for r in &roots {
            let mut next = vec![BigInt::from(0); f.len() + 1];
            for (i, c) in f.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * BigInt::from(*r);
            }
            f = next;
        }
        let mut sorted = roots.clone();
        sorted.sort();
        sorted.dedup();
        let repeated = sorted.len() < roots.len();
        let disc = discriminant(&f).unwrap();
        prop_assert_eq!(disc == BigInt::from(0), repeated);
    }

    #[test]
    fn congruence_maps_are_multiplicative(
        entries in prop::collection::vec(-3i64..=3, 8),
        words in prop::collection::vec(prop::collection::vec((0usize..2, prop::bool::ANY), 1..6), 2),
        skip in 0usize..3,
    ) {
        let k = NumberField::from_ints(&[1, 0, 1]).unwrap();
        let i = parse_scalar("a", &k).unwrap();
        let elem = |p: i64, q: i64| k.add(&k.from_i64(p), &k.mul(&k.from_i64(q), &i));
        let m1 = Matrix::from_rows(vec![
            vec![elem(1, entries[0]), elem(entries[1], 0)],
            vec![elem(0, 0), elem(1, 0)],
        ]).unwrap();
        let m2 = Matrix::from_rows(vec![
            vec![elem(entries[2], entries[3]), elem(entries[4], 1)],
            vec![elem(entries[5], 0), elem(entries[6], entries[7])],
        ]).unwrap();
        prop_assume!(!k.is_zero(&matrix::det(&k, &m2).unwrap()));
        let g = GroupInput::new(k.clone(), 2, vec![m1, m2]).unwrap();
        let map = build_sw(&g, skip).unwrap();
        let to_word = |w: &Vec<(usize, bool)>| {
            let mut word = Word::identity();
            for &(i, pos) in w {
                word.push(i, if pos { 1 } else { -1 });
            }
            word
        };
        let budget = Budget::unlimited();
        let u = evaluate_word(&k, 2, &g.gens, &g.inverses, &to_word(&words[0]), &budget).unwrap();
        let v = evaluate_word(&k, 2, &g.gens, &g.inverses, &to_word(&words[1]), &budget).unwrap();
        let uv = matrix::mul(&k, &u, &v).unwrap();
        let lhs = apply_sw(&k, &map, &uv).unwrap();
        let rhs = matrix::mul(&map.target, &apply_sw(&k, &map, &u).unwrap(), &apply_sw(&k, &map, &v).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let ui = apply_sw(&k, &map, &matrix::inverse(&k, &u).unwrap()).unwrap();
        prop_assert!(matrix::is_identity(&map.target, &matrix::mul(&map.target, &ui, &apply_sw(&k, &map, &u).unwrap()).unwrap()));
    }

    #[test]
    fn word_text_round_trip(letters in prop::collection::vec((0usize..3, -3i64..=3), 0..8)) {
        let mut w = Word::identity();
        for (i, e) in letters {
            if e != 0 {
                w.push(i, e);
            }
        }
        let back = Word::parse(&w.to_string(), 3).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn seeded_verdicts_are_reproducible(seed in 0u64..1000) {
        let k = Rationals;
        let g = GroupInput::new(k, 2, vec![
            Matrix::from_rows(vec![vec![k.from_i64(0), k.from_i64(-1)], vec![k.from_i64(1), k.from_i64(-1)]]).unwrap(),
            Matrix::from_rows(vec![vec![k.from_i64(0), k.from_i64(1)], vec![k.from_i64(1), k.from_i64(0)]]).unwrap(),
        ]).unwrap();
        let cfg = Config { seed, ..Config::default() };
        let first = lingroup::decide::is_finite(&g, &cfg).unwrap().to_json();
        let second = lingroup::decide::is_finite(&g, &cfg).unwrap().to_json();
        prop_assert_eq!(&first, &second);
        prop_assert_eq!(&first["order"], &serde_json::json!("6"));
    }
}
