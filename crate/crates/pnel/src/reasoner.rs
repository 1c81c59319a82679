//! Graded entailment over a crisp knowledge base.
//!
//! The degree to which an individual belongs to a concept is computed
//! structurally: atomic membership consults the subclass closure,
//! existential restrictions maximise over asserted successors or values,
//! and conjunctions fold the configured t-norm. On knowledge bases whose
//! terminology is a plain class hierarchy this coincides with the best
//! entailment degree of the corresponding graded ontology.
//!
//! An [`Evaluator`] owns a concept-extension cache that tolerates
//! concurrent reads and duplicate inserts, so scoring may fan out across
//! threads.

use std::collections::BTreeMap;
use std::collections::BTreeSet;
use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::fuzzy::{star, truth, FuzzyDatatype, TruthFunctions};
use crate::kb::{Concept, Hypothesis, KnowledgeBase, Value, WeightedRule};

/// Set of individuals by stable index.
pub type IndSet = BTreeSet<u32>;

/// Degree evaluator bound to one knowledge base and one pair of
/// truth-function families (conjunction, rule implication).
pub struct Evaluator<'k> {
    kb: &'k KnowledgeBase,
    conj: &'static dyn TruthFunctions,
    gci: &'static dyn TruthFunctions,
    /// Entailed atomic classes per individual (assertions closed upward).
    entailed: Vec<BTreeSet<String>>,
    /// Successor indices per object property, per individual.
    successors: BTreeMap<String, Vec<Vec<u32>>>,
    /// Asserted values per data property, per individual.
    values: BTreeMap<String, Vec<Vec<Value>>>,
    /// Extensions of non-conjunctive concepts.
    cache: RwLock<HashMap<Concept, Arc<Vec<f64>>>>,
}

impl<'k> Evaluator<'k> {
    pub fn new(
        kb: &'k KnowledgeBase,
        conj: &'static dyn TruthFunctions,
        gci: &'static dyn TruthFunctions,
    ) -> Self {
        let n = kb.individual_count();
        let mut entailed = vec![BTreeSet::new(); n];
        for (i, name) in kb.individuals().iter().enumerate() {
            for asserted in kb.asserted_classes(name) {
                if let Some(sups) = kb.superclasses(asserted) {
                    entailed[i].extend(sups.iter().cloned());
                }
            }
        }
        let mut successors = BTreeMap::new();
        for prop in kb.object_properties() {
            let mut per_ind = vec![Vec::new(); n];
            for (i, name) in kb.individuals().iter().enumerate() {
                per_ind[i] = kb
                    .role_successors(name, prop)
                    .iter()
                    .filter_map(|b| kb.individual_index(b))
                    .collect();
            }
            successors.insert(prop.to_string(), per_ind);
        }
        let mut values = BTreeMap::new();
        for (prop, _) in kb.data_properties() {
            let mut per_ind = vec![Vec::new(); n];
            for (i, name) in kb.individuals().iter().enumerate() {
                per_ind[i] = kb.data_values(name, prop).to_vec();
            }
            values.insert(prop.to_string(), per_ind);
        }
        Evaluator {
            kb,
            conj,
            gci,
            entailed,
            successors,
            values,
            cache: RwLock::new(HashMap::new()),
        }
    }

    /// Goedel conjunctions with Lukasiewicz rule implications.
    pub fn with_defaults(kb: &'k KnowledgeBase) -> Self {
        Evaluator::new(kb, &truth::Goedel, &truth::Lukasiewicz)
    }

    pub fn kb(&self) -> &'k KnowledgeBase {
        self.kb
    }

    pub fn conjunction_family(&self) -> &'static dyn TruthFunctions {
        self.conj
    }

    pub fn implication_family(&self) -> &'static dyn TruthFunctions {
        self.gci
    }

    /// Every individual of the knowledge base.
    pub fn all_individuals(&self) -> IndSet {
        (0..self.kb.individual_count() as u32).collect()
    }

    fn grade_value(set: &FuzzyDatatype, v: &Value) -> f64 {
        match v {
            Value::Num(x) => set.grade_numeric(*x),
            Value::Bool(b) => set.grade_boolean(*b),
        }
    }

    fn compute_extension(&self, concept: &Concept) -> Vec<f64> {
        let n = self.kb.individual_count();
        match concept {
            Concept::Top => vec![1.0; n],
            Concept::Atomic(name) => (0..n)
                .map(|i| {
                    if self.entailed[i].contains(name) {
                        1.0
                    } else {
                        0.0
                    }
                })
                .collect(),
            Concept::SomeObject { property, filler } => {
                let filler_ext = self.extension(filler);
                match self.successors.get(property) {
                    None => vec![0.0; n],
                    Some(per_ind) => (0..n)
                        .map(|i| {
                            per_ind[i]
                                .iter()
                                .map(|&b| filler_ext[b as usize])
                                .fold(0.0, f64::max)
                        })
                        .collect(),
                }
            }
            Concept::SomeData { property, set } => match self.values.get(property) {
                None => vec![0.0; n],
                Some(per_ind) => (0..n)
                    .map(|i| {
                        per_ind[i]
                            .iter()
                            .map(|v| Self::grade_value(&set.shape, v))
                            .fold(0.0, f64::max)
                    })
                    .collect(),
            },
            Concept::And(conjuncts) => {
                let mut ext = self.extension(&conjuncts[0]).as_ref().clone();
                for c in &conjuncts[1..] {
                    let ce = self.extension(c);
                    for (x, y) in ext.iter_mut().zip(ce.iter()) {
                        *x = self.conj.tnorm(*x, *y);
                    }
                }
                ext
            }
        }
    }

    /// Degrees of every individual in `concept`, cached for atoms and
    /// existential restrictions (conjunctions fold their cached conjuncts).
    pub fn extension(&self, concept: &Concept) -> Arc<Vec<f64>> {
        if matches!(concept, Concept::And(_)) {
            return Arc::new(self.compute_extension(concept));
        }
        if let Some(hit) = self.cache.read().unwrap().get(concept) {
            return Arc::clone(hit);
        }
        let ext = Arc::new(self.compute_extension(concept));
        // A concurrent insert of the same concept computes the same vector,
        // so keeping whichever arrived first is sound.
        let mut w = self.cache.write().unwrap();
        Arc::clone(w.entry(concept.clone()).or_insert(ext))
    }

    /// Degree of `ind` in `concept`.
    ///
    /// Panics if the individual is not declared; callers resolve names
    /// against the same knowledge base this evaluator was built on.
    pub fn bed(&self, ind: &str, concept: &Concept) -> f64 {
        let idx = self
            .kb
            .individual_index(ind)
            .unwrap_or_else(|| panic!("undeclared individual `{ind}`"));
        self.extension(concept)[idx as usize]
    }

    /// Sum of degrees over a set of individuals.
    pub fn fuzzy_cardinality(&self, concept: &Concept, over: &IndSet) -> f64 {
        let ext = self.extension(concept);
        over.iter().map(|&i| ext[i as usize]).sum()
    }

    /// Count of strictly positive degrees over a set of individuals.
    pub fn crisp_cardinality(&self, concept: &Concept, over: &IndSet) -> usize {
        let ext = self.extension(concept);
        over.iter().filter(|&&i| ext[i as usize] > 0.0).count()
    }

    /// Share of the concept's graded extension that lies in `pos`:
    /// cardinality over `pos` divided by cardinality over all individuals.
    /// Zero denominators yield 0.
    pub fn confidence(&self, concept: &Concept, pos: &IndSet) -> f64 {
        let ext = self.extension(concept);
        let total: f64 = ext.iter().sum();
        if total == 0.0 {
            return 0.0;
        }
        let in_pos: f64 = pos.iter().map(|&i| ext[i as usize]).sum();
        in_pos / total
    }

    /// Mean degree of the concept over `over`. Zero denominators yield 0.
    pub fn support(&self, concept: &Concept, over: &IndSet) -> f64 {
        if over.is_empty() {
            return 0.0;
        }
        self.fuzzy_cardinality(concept, over) / over.len() as f64
    }

    /// Degree granted to individual `idx` by one weighted rule: the body
    /// degree combined with the rule degree under the implication family's
    /// t-norm (graded modus ponens).
    pub fn rule_value(&self, rule: &WeightedRule, idx: u32) -> f64 {
        let body = self.extension(&rule.body)[idx as usize];
        self.gci.tnorm(body, rule.degree)
    }

    fn side_values(&self, rules: &[WeightedRule]) -> Vec<f64> {
        let n = self.kb.individual_count();
        let mut best = vec![0.0f64; n];
        for rule in rules {
            let ext = self.extension(&rule.body);
            for i in 0..n {
                best[i] = best[i].max(self.gci.tnorm(ext[i], rule.degree));
            }
        }
        best
    }

    /// Classification degree of every individual: positive and negative
    /// rule values are aggregated by maximum on each side, then combined so
    /// the positive side survives only when it strictly dominates.
    pub fn hypothesis_values(&self, h: &Hypothesis) -> Vec<f64> {
        let p = self.side_values(&h.p_rules);
        if h.n_rules.is_empty() {
            return p;
        }
        let n = self.side_values(&h.n_rules);
        p.into_iter().zip(n).map(|(p, n)| star(p, n)).collect()
    }

    /// Degree of one individual under the full hypothesis.
    pub fn hypothesis_value(&self, h: &Hypothesis, idx: u32) -> f64 {
        self.hypothesis_values(h)[idx as usize]
    }

    /// Individuals whose hypothesis degree clears `theta`; a `theta` of 0
    /// means any strictly positive degree.
    pub fn coverage(&self, h: &Hypothesis, theta: f64) -> IndSet {
        self.hypothesis_values(h)
            .iter()
            .enumerate()
            .filter(|(_, v)| if theta > 0.0 { **v >= theta } else { **v > 0.0 })
            .map(|(i, _)| i as u32)
            .collect()
    }

    /// Degree and crisp verdict for a named individual.
    pub fn classify(&self, h: &Hypothesis, ind: &str) -> (f64, bool) {
        let idx = self
            .kb
            .individual_index(ind)
            .unwrap_or_else(|| panic!("undeclared individual `{ind}`"));
        let v = self.hypothesis_value(h, idx);
        (v, v > 0.0)
    }
}
