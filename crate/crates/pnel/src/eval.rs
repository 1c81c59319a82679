//! Cross-validated evaluation of learnt classifiers.
//!
//! Examples are split into stratified folds (positives and negatives dealt
//! separately after a seeded shuffle). For each fold the learner runs on a
//! view of the knowledge base with every assertion naming a test individual
//! removed — declarations stay, so the individuals still exist but carry no
//! information. The learnt classifier is then applied to the test
//! individuals against the full knowledge base.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fuzzy;
use crate::kb::{Hypothesis, KnowledgeBase, Label, LearningTask};
use crate::learn::learn_classifier;
use crate::reasoner::Evaluator;

/// Precision, recall and F1 from raw counts. All three fall back to zero
/// when their denominator vanishes.
pub fn metrics_from_outcomes(tp: usize, fp: usize, fn_: usize) -> (f64, f64, f64) {
    let precision = if tp + fp == 0 {
        0.0
    } else {
        tp as f64 / (tp + fp) as f64
    };
    let recall = if tp + fn_ == 0 {
        0.0
    } else {
        tp as f64 / (tp + fn_) as f64
    };
    let f1 = if precision + recall == 0.0 {
        0.0
    } else {
        2.0 * precision * recall / (precision + recall)
    };
    (precision, recall, f1)
}

/// Stratified fold assignment: shuffle positives and negatives separately
/// with a seeded generator, then deal each stratum round-robin. Folds are
/// returned as sorted name lists.
pub fn make_folds(task: &LearningTask, k: usize, seed: u64) -> Result<Vec<Vec<String>>> {
    if k < 2 {
        return Err(Error::Folds(format!("need at least 2 folds, got {k}")));
    }
    let mut positives: Vec<&str> = task.positives().collect();
    let mut negatives: Vec<&str> = task.negatives().collect();
    if positives.len() < k {
        return Err(Error::Folds(format!(
            "{} positive examples cannot fill {k} folds",
            positives.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    positives.shuffle(&mut rng);
    negatives.shuffle(&mut rng);
    let mut folds: Vec<Vec<String>> = vec![Vec::new(); k];
    for (i, name) in positives.iter().chain(negatives.iter()).enumerate() {
        folds[i % k].push(name.to_string());
    }
    for fold in &mut folds {
        fold.sort();
    }
    Ok(folds)
}

/// Outcome of one fold.
#[derive(Debug, Clone)]
pub struct FoldReport {
    pub fold: usize,
    pub hypothesis: Hypothesis,
    pub tp: usize,
    pub fp: usize,
    /// Positives of the fold the classifier missed.
    pub missed: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    /// Wall-clock time spent learning and scoring this fold.
    pub seconds: f64,
}

/// Macro-averaged cross-validation result.
#[derive(Debug, Clone)]
pub struct CrossValReport {
    pub target: String,
    pub folds: Vec<FoldReport>,
    pub macro_precision: f64,
    pub macro_recall: f64,
    pub macro_f1: f64,
}

/// Run stratified `k`-fold cross-validation for one task. Folds run in
/// parallel; their order in the report is fixed regardless of scheduling.
pub fn cross_validate(
    kb: &KnowledgeBase,
    task: &LearningTask,
    k: usize,
    seed: u64,
) -> Result<CrossValReport> {
    task.validate(kb)?;
    let folds = make_folds(task, k, seed)?;
    let conj = fuzzy::family(&task.conjunction_family).expect("validated family");
    let gci = fuzzy::family(&task.gci_family).expect("validated family");
    let full = Evaluator::new(kb, conj, gci);

    let reports: Vec<FoldReport> = folds
        .par_iter()
        .enumerate()
        .map(|(i, test)| -> Result<FoldReport> {
            let started = Instant::now();
            let hidden: BTreeSet<String> = test.iter().cloned().collect();
            let train_kb = kb.without_assertions_of(&hidden);
            let mut train_task = task.clone();
            train_task.labels.retain(|name, _| !hidden.contains(name));
            let outcome = learn_classifier(&train_kb, &train_task)?;

            let mut tp = 0;
            let mut fp = 0;
            let mut missed = 0;
            for name in test {
                let positive = task.labels.get(name) == Some(&Label::Positive);
                let (_, covered) = full.classify(&outcome.hypothesis, name);
                match (covered, positive) {
                    (true, true) => tp += 1,
                    (true, false) => fp += 1,
                    (false, true) => missed += 1,
                    (false, false) => {}
                }
            }
            let (precision, recall, f1) = metrics_from_outcomes(tp, fp, missed);
            Ok(FoldReport {
                fold: i,
                hypothesis: outcome.hypothesis,
                tp,
                fp,
                missed,
                precision,
                recall,
                f1,
                seconds: started.elapsed().as_secs_f64(),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let n = reports.len() as f64;
    let macro_precision = reports.iter().map(|r| r.precision).sum::<f64>() / n;
    let macro_recall = reports.iter().map(|r| r.recall).sum::<f64>() / n;
    let macro_f1 = reports.iter().map(|r| r.f1).sum::<f64>() / n;
    Ok(CrossValReport {
        target: task.target.clone(),
        folds: reports,
        macro_precision,
        macro_recall,
        macro_f1,
    })
}
