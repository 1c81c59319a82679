//! Shared fixtures for the integration suites: a seeded random
//! knowledge-base generator and a brute-force degree evaluator that the
//! structural evaluator is checked against.

#![allow(dead_code)]

use std::collections::BTreeSet;

use pnel::fuzzy::{FuzzyDatatype, FuzzySet, TruthFunctions};
use pnel::kb::{Concept, DataKind, KnowledgeBase, Value};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// Data values and shape knots share one coarse grid so that membership
/// grades stay well away from the subnormal range.
pub fn lattice_value(rng: &mut ChaCha8Rng) -> f64 {
    rng.gen_range(0..=20) as f64 * 5.0
}

/// A small random knowledge base: up to 8 individuals, 4 classes,
/// 2 object properties and 2 numeric data properties, with random
/// subclass axioms (cycles allowed) and random assertions.
pub fn random_kb(rng: &mut ChaCha8Rng) -> KnowledgeBase {
    let classes: Vec<String> = (0..rng.gen_range(1..=4)).map(|i| format!("C{i}")).collect();
    let roles: Vec<String> = (0..rng.gen_range(0..=2)).map(|i| format!("r{i}")).collect();
    let props: Vec<String> = (0..rng.gen_range(0..=2)).map(|i| format!("v{i}")).collect();
    let inds: Vec<String> = (0..rng.gen_range(1..=8)).map(|i| format!("i{i}")).collect();

    let mut b = KnowledgeBase::builder();
    for c in &classes {
        b.declare_class(c);
    }
    for r in &roles {
        b.declare_object_property(r);
    }
    for p in &props {
        b.declare_data_property(p, DataKind::Numeric);
    }
    for i in &inds {
        b.declare_individual(i);
    }

    for _ in 0..rng.gen_range(0..=classes.len()) {
        let sub = classes.choose(rng).unwrap();
        let sup = classes.choose(rng).unwrap();
        if sub != sup {
            b.add_subclass(sub, sup).unwrap();
        }
    }
    for i in &inds {
        for _ in 0..rng.gen_range(0..=2) {
            b.assert_class(i, classes.choose(rng).unwrap()).unwrap();
        }
        for r in &roles {
            for _ in 0..rng.gen_range(0..=2) {
                b.assert_role(i, r, inds.choose(rng).unwrap()).unwrap();
            }
        }
        for p in &props {
            for _ in 0..rng.gen_range(0..=2) {
                b.assert_value(i, p, Value::Num(lattice_value(rng))).unwrap();
            }
        }
    }
    b.build()
}

/// A random membership shape with knots on the value lattice.
pub fn random_shape(rng: &mut ChaCha8Rng) -> FuzzyDatatype {
    loop {
        let mut knots: Vec<f64> = (0..4).map(|_| lattice_value(rng)).collect();
        knots.sort_by(f64::total_cmp);
        knots.dedup();
        let shape = match rng.gen_range(0..6) {
            0 if knots.len() >= 2 => FuzzyDatatype::left_shoulder(knots[0], knots[1]),
            1 if knots.len() >= 2 => FuzzyDatatype::right_shoulder(knots[0], knots[1]),
            2 if knots.len() >= 3 => FuzzyDatatype::triangular(knots[0], knots[1], knots[2]),
            3 if knots.len() >= 4 => {
                FuzzyDatatype::trapezoidal(knots[0], knots[1], knots[2], knots[3])
            }
            4 => FuzzyDatatype::at_least(knots[0]),
            5 => FuzzyDatatype::at_most(knots[0]),
            _ => continue,
        };
        if let Ok(s) = shape {
            return s;
        }
    }
}

/// A random concept over the KB's vocabulary with role depth at most
/// `depth`. Conjunctions are normalised by construction.
pub fn random_concept(rng: &mut ChaCha8Rng, kb: &KnowledgeBase, depth: usize) -> Concept {
    let classes: Vec<&str> = kb.classes().collect();
    let roles: Vec<&str> = kb.object_properties().collect();
    let props: Vec<&str> = kb.data_properties().map(|(p, _)| p).collect();

    // Weighted move list; atoms twice so leaves dominate.
    let mut moves = vec![b'T'];
    if !classes.is_empty() {
        moves.extend([b'A', b'A']);
    }
    if !roles.is_empty() && depth > 0 {
        moves.push(b'O');
    }
    if !props.is_empty() && depth > 0 {
        moves.extend([b'D', b'D']);
    }
    moves.push(b'&');

    match *moves.choose(rng).unwrap() {
        b'A' => Concept::atomic(*classes.choose(rng).unwrap()),
        b'O' => Concept::some_object(
            *roles.choose(rng).unwrap(),
            random_concept(rng, kb, depth - 1),
        ),
        b'D' => {
            let prop = *props.choose(rng).unwrap();
            let shape = random_shape(rng);
            Concept::some_data(prop, FuzzySet::new(format!("{prop}_set"), shape))
        }
        b'&' => {
            let parts = (0..rng.gen_range(2..=3))
                .map(|_| random_concept(rng, kb, depth))
                .collect();
            Concept::and(parts)
        }
        _ => Concept::Top,
    }
}

/// Atomic classes entailed for `ind`: the asserted ones closed upward by
/// iterating the raw subclass axioms to a fixpoint. Deliberately ignores
/// the KB's precomputed closure.
fn entailed_by_fixpoint(kb: &KnowledgeBase, ind: &str) -> BTreeSet<String> {
    let mut out: BTreeSet<String> = kb.asserted_classes(ind).map(str::to_string).collect();
    loop {
        let mut grew = false;
        for (sub, sup) in kb.subclass_axioms() {
            if out.contains(sub) && !out.contains(sup) {
                out.insert(sup.to_string());
                grew = true;
            }
        }
        if !grew {
            return out;
        }
    }
}

/// Brute-force degree of `ind` in `concept`: direct recursion over the
/// assertion lists, with no index structures and no caching. Conjuncts
/// fold left to right, mirroring the evaluator's order so results are
/// comparable bit for bit.
pub fn brute_force_degree(
    kb: &KnowledgeBase,
    conj: &dyn TruthFunctions,
    ind: &str,
    concept: &Concept,
) -> f64 {
    match concept {
        Concept::Top => 1.0,
        Concept::Atomic(name) => {
            if entailed_by_fixpoint(kb, ind).contains(name) {
                1.0
            } else {
                0.0
            }
        }
        Concept::SomeObject { property, filler } => kb
            .role_successors(ind, property)
            .iter()
            .map(|succ| brute_force_degree(kb, conj, succ, filler))
            .fold(0.0, f64::max),
        Concept::SomeData { property, set } => kb
            .data_values(ind, property)
            .iter()
            .map(|v| match v {
                Value::Num(x) => set.shape.grade_numeric(*x),
                Value::Bool(bv) => set.shape.grade_boolean(*bv),
            })
            .fold(0.0, f64::max),
        Concept::And(parts) => {
            let mut acc = brute_force_degree(kb, conj, ind, &parts[0]);
            for part in &parts[1..] {
                acc = conj.tnorm(acc, brute_force_degree(kb, conj, ind, part));
            }
            acc
        }
    }
}
