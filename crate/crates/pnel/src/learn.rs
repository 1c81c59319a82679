//! Rule induction.
//!
//! The search is greedy: starting from the top concept, one axiom body is
//! specialised step by step along the refinement operator, choosing the
//! candidate with the best information gain over the still-uncovered
//! positives. When no candidate improves, the body is accepted if it clears
//! the confidence threshold on the stage positives and stays under the
//! support threshold on the non-positives; otherwise the search jumps to
//! the best entry of a bounded backtracking pool (ranked by confidence) and
//! gives up when the pool runs dry.
//!
//! A stage repeats that search, removing the positives each accepted rule
//! covers, until everything is covered or no new rule emerges. The full
//! learner runs two stages: one covers the positive examples, a second
//! (fed by the false positives of the first) learns rules that veto them.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::fuzzify::{self, CMeansConfig, FuzzySetFamily};
use crate::fuzzy;
use crate::kb::{Concept, Hypothesis, KnowledgeBase, LearningTask, StageParams, WeightedRule};
use crate::reasoner::{Evaluator, IndSet};
use crate::refine::RefinementOperator;

/// Information gain of specialising `current` into `candidate`, measured
/// over the positives `pos`: the conjunction mass the candidate keeps on
/// the positives, scaled by the confidence improvement (in bits). Zero when
/// the candidate keeps no positive mass or either confidence vanishes.
pub fn gain(ev: &Evaluator, candidate: &Concept, current: &Concept, pos: &IndSet) -> f64 {
    let cand_ext = ev.extension(candidate);
    let cur_ext = ev.extension(current);
    let conj = ev.conjunction_family();
    let p: f64 = pos
        .iter()
        .map(|&i| conj.tnorm(cand_ext[i as usize], cur_ext[i as usize]))
        .sum();
    if p == 0.0 {
        return 0.0;
    }
    let cf_cand = ev.confidence(candidate, pos);
    let cf_cur = ev.confidence(current, pos);
    if cf_cand == 0.0 || cf_cur == 0.0 {
        return 0.0;
    }
    p * (cf_cand.log2() - cf_cur.log2())
}

/// Entry of the backtracking pool.
struct PoolEntry {
    confidence: f64,
    conjuncts: usize,
    render: String,
    concept: Concept,
}

impl PoolEntry {
    /// Pool order: higher confidence first, then narrower bodies, then
    /// canonical text order.
    fn precedes(&self, other: &PoolEntry) -> std::cmp::Ordering {
        other
            .confidence
            .total_cmp(&self.confidence)
            .then(self.conjuncts.cmp(&other.conjuncts))
            .then(self.render.cmp(&other.render))
    }
}

/// Search one axiom body. `pos` drives the gain (the positives still to
/// cover), `full_pos` the acceptance confidence (all stage positives), `np`
/// the acceptance support (negatives and unlabelled). Returns `None` when
/// the search exhausts its backtracking pool without an acceptable body.
pub fn learn_one_axiom(
    ev: &Evaluator,
    op: &RefinementOperator,
    pos: &IndSet,
    full_pos: &IndSet,
    np: &IndSet,
    params: &StageParams,
    backtrack: usize,
) -> Option<Concept> {
    let conj = ev.conjunction_family();
    let mut current = Concept::Top;
    let mut visited: BTreeSet<Concept> = BTreeSet::from([current.clone()]);
    let mut ever_pooled: BTreeSet<Concept> = BTreeSet::new();
    let mut pool: Vec<PoolEntry> = Vec::new();

    loop {
        let candidates = op.refine(&current);
        let cur_ext = ev.extension(&current);
        let cf_cur = ev.confidence(&current, pos);

        // Score the batch; remember the best strict improvement.
        let mut best: Option<(f64, f64, usize, usize)> = None; // gain, cf, width, index
        let mut confidences = Vec::with_capacity(candidates.len());
        for (i, cand) in candidates.iter().enumerate() {
            let ext = ev.extension(cand);
            let total: f64 = ext.iter().sum();
            let on_pos: f64 = pos.iter().map(|&a| ext[a as usize]).sum();
            let cf = if total == 0.0 { 0.0 } else { on_pos / total };
            confidences.push(cf);

            let p: f64 = pos
                .iter()
                .map(|&a| conj.tnorm(ext[a as usize], cur_ext[a as usize]))
                .sum();
            let g = if p == 0.0 || cf == 0.0 || cf_cur == 0.0 {
                0.0
            } else {
                p * (cf.log2() - cf_cur.log2())
            };
            if g > 0.0 {
                let improves = match best {
                    None => true,
                    Some((bg, bcf, bw, _)) => {
                        g > bg
                            || (g == bg
                                && (cf > bcf || (cf == bcf && cand.conjunct_count() < bw)))
                    }
                };
                if improves {
                    best = Some((g, cf, cand.conjunct_count(), i));
                }
            }
        }

        // Feed the pool with the alternatives seen in this batch.
        let chosen = best.map(|(_, _, _, i)| i);
        for (i, cand) in candidates.iter().enumerate() {
            if chosen == Some(i) || confidences[i] <= 0.0 {
                continue;
            }
            if visited.contains(cand) || ever_pooled.contains(cand) {
                continue;
            }
            ever_pooled.insert(cand.clone());
            pool.push(PoolEntry {
                confidence: confidences[i],
                conjuncts: cand.conjunct_count(),
                render: cand.render(),
                concept: cand.clone(),
            });
        }
        pool.sort_by(PoolEntry::precedes);
        pool.truncate(backtrack);

        match chosen {
            Some(i) => {
                current = candidates[i].clone();
                visited.insert(current.clone());
            }
            None => {
                // Stalled: accept, backtrack, or give up.
                if ev.confidence(&current, full_pos) >= params.theta
                    && ev.support(&current, np) <= params.eta
                {
                    return Some(current);
                }
                loop {
                    if pool.is_empty() {
                        return None;
                    }
                    let entry = pool.remove(0);
                    if !visited.contains(&entry.concept) {
                        current = entry.concept;
                        visited.insert(current.clone());
                        break;
                    }
                }
            }
        }
    }
}

/// Covering loop of one stage: learn axioms until the positives are covered
/// or no further acceptable body exists. Each rule is weighted by its
/// confidence over the full stage positives, and the positives it grades
/// above zero are removed before the next round.
pub fn learn_stage(
    ev: &Evaluator,
    op: &RefinementOperator,
    head: &str,
    stage_pos: &IndSet,
    np: &IndSet,
    params: &StageParams,
    backtrack: usize,
) -> Vec<WeightedRule> {
    let mut rules: Vec<WeightedRule> = Vec::new();
    let mut pos = stage_pos.clone();
    while !pos.is_empty() {
        let Some(body) = learn_one_axiom(ev, op, &pos, stage_pos, np, params, backtrack) else {
            break;
        };
        if rules.iter().any(|r| r.body == body) {
            break;
        }
        let rule = WeightedRule {
            degree: ev.confidence(&body, stage_pos),
            body,
            head: head.to_string(),
        };
        pos.retain(|&a| ev.rule_value(&rule, a) == 0.0);
        rules.push(rule);
    }
    rules
}

/// Everything a learning run produces.
#[derive(Debug, Clone)]
pub struct LearnOutcome {
    pub hypothesis: Hypothesis,
    /// Fuzzy-set families minted for the run (needed by the exporter).
    pub families: BTreeMap<String, FuzzySetFamily>,
    /// Non-fatal diagnostics, e.g. properties skipped by fuzzification.
    pub warnings: Vec<String>,
}

/// Head name for the rules that veto false positives. Never asserted into
/// the knowledge base; suffixed until it clashes with nothing.
fn false_positive_head(kb: &KnowledgeBase, target: &str) -> String {
    let mut name = format!("FALSEP_{target}");
    while kb.has_class(&name) || name == target {
        name.push_str("_aux");
    }
    name
}

/// Run the full two-stage learner for one task.
pub fn learn_classifier(kb: &KnowledgeBase, task: &LearningTask) -> Result<LearnOutcome> {
    task.validate(kb)?;
    let conj = fuzzy::family(&task.conjunction_family).expect("validated family");
    let gci = fuzzy::family(&task.gci_family).expect("validated family");
    let cmeans = CMeansConfig {
        m: task.cmeans_m,
        epsilon: task.cmeans_epsilon,
        max_iterations: task.cmeans_max_iterations,
        seed: task.seed,
    };
    let method = fuzzify::fuzzifier(&task.fuzzifier, task.fuzzy_sets, cmeans).ok_or_else(|| {
        Error::InvalidTask(format!("unknown fuzzification method `{}`", task.fuzzifier))
    })?;
    let (families, warnings) = fuzzify::build_families(kb, method.as_ref());
    let ev = Evaluator::new(kb, conj, gci);

    let index = |name: &str| kb.individual_index(name).expect("validated individual");
    let pos: IndSet = task.positives().map(index).collect();
    let neg: IndSet = task.negatives().map(index).collect();
    let all = ev.all_individuals();
    // Non-positives for the covering stage: negatives plus unlabelled.
    let np_p: IndSet = all.difference(&pos).copied().collect();
    debug_assert!(neg.is_subset(&np_p));

    let rho_p = RefinementOperator::new(
        kb,
        &families,
        task.p_stage.max_conjuncts,
        task.p_stage.max_role_depth,
    );
    let p_rules = learn_stage(
        &ev,
        &rho_p,
        &task.target,
        &pos,
        &np_p,
        &task.p_stage,
        task.backtrack,
    );
    if p_rules.is_empty() {
        return Ok(LearnOutcome {
            hypothesis: Hypothesis::empty(&task.target),
            families,
            warnings,
        });
    }

    let covering = Hypothesis {
        target: task.target.clone(),
        p_rules,
        n_rules: Vec::new(),
    };
    let covered = ev.coverage(&covering, task.p_stage.theta);
    let false_pos: IndSet = covered.difference(&pos).copied().collect();
    if false_pos.is_empty() {
        return Ok(LearnOutcome {
            hypothesis: covering,
            families,
            warnings,
        });
    }

    // Second stage: cover the false positives, avoiding the true positives.
    let np_n: IndSet = all.difference(&false_pos).copied().collect();
    let rho_n = RefinementOperator::new(
        kb,
        &families,
        task.n_stage.max_conjuncts,
        task.n_stage.max_role_depth,
    );
    let n_rules = learn_stage(
        &ev,
        &rho_n,
        &false_positive_head(kb, &task.target),
        &false_pos,
        &np_n,
        &task.n_stage,
        task.backtrack,
    );

    Ok(LearnOutcome {
        hypothesis: Hypothesis {
            target: task.target.clone(),
            p_rules: covering.p_rules,
            n_rules,
        },
        families,
        warnings,
    })
}
