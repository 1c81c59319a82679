//! Downward refinement of concept terms.
//!
//! Refinement specialises a body one step at a time: descend the class
//! hierarchy, refine an existential filler, or append one more conjunct
//! drawn from the atom pool (classes, `some r top`, graded datatype
//! restrictions, boolean tests). Conjunctions refine by replacing a single
//! conjunct, which after normalisation also covers widening them.
//!
//! Every batch is bounded (conjunction width at any nesting level, role
//! depth), free of duplicates, never contains the input itself, and is
//! returned in canonical text order so runs are reproducible.

use std::collections::BTreeMap;

use crate::fuzzify::FuzzySetFamily;
use crate::fuzzy::FuzzySet;
use crate::kb::{Concept, DataKind, KnowledgeBase};

/// Precomputed refinement context for one knowledge base and one set of
/// fuzzy-set families.
pub struct RefinementOperator {
    max_conjuncts: usize,
    max_role_depth: usize,
    /// Strict subsumees per class (descendants that are not equivalents).
    subsumees: BTreeMap<String, Vec<String>>,
    /// Refinements of the top concept; also the conjunct pool.
    top_atoms: Vec<Concept>,
}

impl RefinementOperator {
    pub fn new(
        kb: &KnowledgeBase,
        families: &BTreeMap<String, FuzzySetFamily>,
        max_conjuncts: usize,
        max_role_depth: usize,
    ) -> Self {
        let closure = kb.subclass_closure();
        let mut subsumees: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (sub, sups) in closure {
            for sup in sups {
                if sub == sup {
                    continue;
                }
                // Skip equivalents: classes on a cycle subsume each other.
                let mutual = closure
                    .get(sup)
                    .map(|s| s.contains(sub))
                    .unwrap_or(false);
                if !mutual {
                    subsumees.entry(sup.clone()).or_default().push(sub.clone());
                }
            }
        }

        let mut top_atoms = Vec::new();
        for class in kb.classes() {
            top_atoms.push(Concept::atomic(class));
        }
        for prop in kb.object_properties() {
            top_atoms.push(Concept::some_object(prop, Concept::Top));
        }
        for family in families.values() {
            for set in &family.sets {
                top_atoms.push(Concept::some_data(family.property.clone(), set.clone()));
            }
        }
        for (prop, kind) in kb.data_properties() {
            if kind == DataKind::Boolean {
                top_atoms.push(Concept::some_data(prop, FuzzySet::boolean(true)));
                top_atoms.push(Concept::some_data(prop, FuzzySet::boolean(false)));
            }
        }

        RefinementOperator {
            max_conjuncts,
            max_role_depth,
            subsumees,
            top_atoms,
        }
    }

    /// One conjunct appended from the atom pool.
    fn widened(&self, c: &Concept) -> Vec<Concept> {
        self.top_atoms
            .iter()
            .map(|x| Concept::and(vec![c.clone(), x.clone()]))
            .collect()
    }

    fn raw(&self, c: &Concept) -> Vec<Concept> {
        match c {
            Concept::Top => self.top_atoms.clone(),
            Concept::Atomic(name) => {
                let mut out: Vec<Concept> = self
                    .subsumees
                    .get(name)
                    .into_iter()
                    .flatten()
                    .map(Concept::atomic)
                    .collect();
                out.extend(self.widened(c));
                out
            }
            Concept::SomeObject { property, filler } => {
                let mut out: Vec<Concept> = self
                    .raw(filler)
                    .into_iter()
                    .map(|f| Concept::some_object(property.clone(), f))
                    .collect();
                out.extend(self.widened(c));
                out
            }
            Concept::SomeData { .. } => self.widened(c),
            Concept::And(conjuncts) => {
                let mut out = Vec::new();
                for (i, ci) in conjuncts.iter().enumerate() {
                    for refined in self.raw(ci) {
                        let mut parts = conjuncts.clone();
                        parts[i] = refined;
                        out.push(Concept::and(parts));
                    }
                }
                out
            }
        }
    }

    /// All one-step refinements of `c` within the structural bounds,
    /// deduplicated and in canonical text order.
    pub fn refine(&self, c: &Concept) -> Vec<Concept> {
        let mut keyed: Vec<(String, Concept)> = self
            .raw(c)
            .into_iter()
            .filter(|cand| {
                cand != c
                    && cand.max_conjunction_width() <= self.max_conjuncts
                    && cand.role_depth() <= self.max_role_depth
            })
            .map(|cand| (cand.render(), cand))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.dedup_by(|a, b| a.1 == b.1);
        keyed.into_iter().map(|(_, c)| c).collect()
    }
}
