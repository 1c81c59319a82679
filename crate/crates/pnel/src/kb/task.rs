//! Learning tasks, weighted rules and two-sided hypotheses.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kb::{Concept, KnowledgeBase};

/// Example label for one individual.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Label {
    Positive,
    Negative,
    Unlabelled,
}

/// Per-stage search parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StageParams {
    /// Minimum confidence a body must reach to be accepted.
    pub theta: f64,
    /// Maximum support over the non-positives a body may have.
    pub eta: f64,
    /// Upper bound on conjunction width.
    pub max_conjuncts: usize,
    /// Upper bound on existential nesting depth.
    pub max_role_depth: usize,
}

impl StageParams {
    /// Defaults for the stage that covers the positive examples.
    pub fn positive_stage() -> Self {
        StageParams {
            theta: 0.1,
            eta: 1.0,
            max_conjuncts: 5,
            max_role_depth: 1,
        }
    }

    /// Defaults for the stage that rules out false positives.
    pub fn negative_stage() -> Self {
        StageParams {
            theta: 0.3,
            eta: 0.2,
            max_conjuncts: 10,
            max_role_depth: 1,
        }
    }

    fn validate(&self, stage: &str) -> Result<()> {
        if !(0.0..=1.0).contains(&self.theta) || !self.theta.is_finite() {
            return Err(Error::InvalidTask(format!(
                "{stage} confidence threshold must lie in [0, 1], got {}",
                self.theta
            )));
        }
        if !(0.0..=1.0).contains(&self.eta) || !self.eta.is_finite() {
            return Err(Error::InvalidTask(format!(
                "{stage} support threshold must lie in [0, 1], got {}",
                self.eta
            )));
        }
        if self.max_conjuncts == 0 {
            return Err(Error::InvalidTask(format!(
                "{stage} conjunction bound must be at least 1"
            )));
        }
        Ok(())
    }
}

/// Everything a learning run needs besides the knowledge base.
#[derive(Debug, Clone)]
pub struct LearningTask {
    /// Fresh name the learnt rules will target.
    pub target: String,
    /// Labels by individual; anything absent counts as unlabelled.
    pub labels: BTreeMap<String, Label>,
    pub p_stage: StageParams,
    pub n_stage: StageParams,
    /// Number of fuzzy sets per numeric property (3, 5 or 7).
    pub fuzzy_sets: usize,
    /// Registry name of the fuzzification method.
    pub fuzzifier: String,
    /// Fuzziness exponent of the clustering fuzzifier.
    pub cmeans_m: f64,
    /// Convergence tolerance on membership change for the clustering fuzzifier.
    pub cmeans_epsilon: f64,
    /// Iteration cap for the clustering fuzzifier.
    pub cmeans_max_iterations: usize,
    /// Registry name of the family used for conjunctions.
    pub conjunction_family: String,
    /// Registry name of the family used for rule implications.
    pub gci_family: String,
    /// Size of the backtracking pool in the axiom search.
    pub backtrack: usize,
    pub seed: u64,
}

impl LearningTask {
    /// A task with the default parameters.
    pub fn new(target: impl Into<String>, labels: BTreeMap<String, Label>) -> Self {
        LearningTask {
            target: target.into(),
            labels,
            p_stage: StageParams::positive_stage(),
            n_stage: StageParams::negative_stage(),
            fuzzy_sets: 3,
            fuzzifier: "uniform".to_string(),
            cmeans_m: 2.0,
            cmeans_epsilon: 0.05,
            cmeans_max_iterations: 100,
            conjunction_family: "goedel".to_string(),
            gci_family: "lukasiewicz".to_string(),
            backtrack: 5,
            seed: 0,
        }
    }

    pub fn positives(&self) -> impl Iterator<Item = &str> {
        self.labels
            .iter()
            .filter(|(_, l)| **l == Label::Positive)
            .map(|(n, _)| n.as_str())
    }

    pub fn negatives(&self) -> impl Iterator<Item = &str> {
        self.labels
            .iter()
            .filter(|(_, l)| **l == Label::Negative)
            .map(|(n, _)| n.as_str())
    }

    pub fn validate(&self, kb: &KnowledgeBase) -> Result<()> {
        if self.target.is_empty() {
            return Err(Error::InvalidTask("empty target name".into()));
        }
        if kb.has_class(&self.target) {
            return Err(Error::InvalidTask(format!(
                "target `{}` is already a class in the knowledge base",
                self.target
            )));
        }
        if self.positives().next().is_none() {
            return Err(Error::InvalidTask("no positive examples".into()));
        }
        for name in self.labels.keys() {
            if !kb.has_individual(name) {
                return Err(Error::Undeclared {
                    kind: "individual",
                    name: name.clone(),
                });
            }
        }
        self.p_stage.validate("positive stage")?;
        self.n_stage.validate("negative stage")?;
        if ![3, 5, 7].contains(&self.fuzzy_sets) {
            return Err(Error::InvalidTask(format!(
                "fuzzy set count must be 3, 5 or 7, got {}",
                self.fuzzy_sets
            )));
        }
        if !(self.cmeans_m > 1.0) || !self.cmeans_m.is_finite() {
            return Err(Error::InvalidTask(format!(
                "fuzziness exponent must exceed 1, got {}",
                self.cmeans_m
            )));
        }
        if !(self.cmeans_epsilon >= 0.0) || !self.cmeans_epsilon.is_finite() {
            return Err(Error::InvalidTask(format!(
                "convergence tolerance must be non-negative, got {}",
                self.cmeans_epsilon
            )));
        }
        if self.cmeans_max_iterations == 0 {
            return Err(Error::InvalidTask(
                "clustering iteration cap must be at least 1".into(),
            ));
        }
        if crate::fuzzy::family(&self.conjunction_family).is_none() {
            return Err(Error::InvalidTask(format!(
                "unknown truth-function family `{}`",
                self.conjunction_family
            )));
        }
        if crate::fuzzy::family(&self.gci_family).is_none() {
            return Err(Error::InvalidTask(format!(
                "unknown truth-function family `{}`",
                self.gci_family
            )));
        }
        if self.backtrack == 0 {
            return Err(Error::InvalidTask("backtrack pool must hold at least 1 entry".into()));
        }
        Ok(())
    }
}

/// One weighted concept-inclusion rule: `body` implies `head` to `degree`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedRule {
    pub body: Concept,
    pub head: String,
    pub degree: f64,
}

/// Learnt classifier: positive rules vote for the target, negative rules
/// veto by grading likely false positives.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Hypothesis {
    pub target: String,
    pub p_rules: Vec<WeightedRule>,
    pub n_rules: Vec<WeightedRule>,
}

impl Hypothesis {
    pub fn empty(target: impl Into<String>) -> Self {
        Hypothesis {
            target: target.into(),
            p_rules: Vec::new(),
            n_rules: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.p_rules.is_empty() && self.n_rules.is_empty()
    }

    /// Head name shared by the negative rules, if any were learnt.
    pub fn negative_head(&self) -> Option<&str> {
        self.n_rules.first().map(|r| r.head.as_str())
    }
}
