//! Truth-function families for graded logical connectives.
//!
//! A family bundles a t-norm, its dual t-conorm, the residuated implication
//! and a negation, all over degrees in `[0, 1]`. The three classical families
//! are stateless singletons registered by name, so a run can combine, say,
//! minimum conjunctions with Lukasiewicz implications straight from config
//! keys.

/// Connectives of one fuzzy logic. Inputs must already lie in `[0, 1]`;
/// values outside that range are a caller bug and only checked in debug
/// builds.
pub trait TruthFunctions: Send + Sync {
    /// Registry name, lower case.
    fn name(&self) -> &'static str;
    /// Conjunction (t-norm).
    fn tnorm(&self, x: f64, y: f64) -> f64;
    /// Disjunction (t-conorm).
    fn tconorm(&self, x: f64, y: f64) -> f64;
    /// Residuated implication.
    fn implication(&self, x: f64, y: f64) -> f64;
    /// Negation.
    fn negation(&self, x: f64) -> f64;
}

#[inline]
fn check_degree(x: f64) {
    debug_assert!(
        (0.0..=1.0).contains(&x),
        "degree out of range: {x}"
    );
}

/// Lukasiewicz connectives: bounded sum and difference.
pub struct Lukasiewicz;

impl TruthFunctions for Lukasiewicz {
    fn name(&self) -> &'static str {
        "lukasiewicz"
    }

    fn tnorm(&self, x: f64, y: f64) -> f64 {
        check_degree(x);
        check_degree(y);
        (x + y - 1.0).max(0.0)
    }

    fn tconorm(&self, x: f64, y: f64) -> f64 {
        check_degree(x);
        check_degree(y);
        (x + y).min(1.0)
    }

    fn implication(&self, x: f64, y: f64) -> f64 {
        check_degree(x);
        check_degree(y);
        (1.0 - x + y).min(1.0)
    }

    fn negation(&self, x: f64) -> f64 {
        check_degree(x);
        1.0 - x
    }
}

/// Goedel connectives: minimum and maximum.
pub struct Goedel;

impl TruthFunctions for Goedel {
    fn name(&self) -> &'static str {
        "goedel"
    }

    fn tnorm(&self, x: f64, y: f64) -> f64 {
        check_degree(x);
        check_degree(y);
        x.min(y)
    }

    fn tconorm(&self, x: f64, y: f64) -> f64 {
        check_degree(x);
        check_degree(y);
        x.max(y)
    }

    fn implication(&self, x: f64, y: f64) -> f64 {
        check_degree(x);
        check_degree(y);
        if x <= y {
            1.0
        } else {
            y
        }
    }

    fn negation(&self, x: f64) -> f64 {
        check_degree(x);
        if x == 0.0 {
            1.0
        } else {
            0.0
        }
    }
}

/// Product connectives: algebraic product and probabilistic sum.
pub struct Product;

impl TruthFunctions for Product {
    fn name(&self) -> &'static str {
        "product"
    }

    fn tnorm(&self, x: f64, y: f64) -> f64 {
        check_degree(x);
        check_degree(y);
        x * y
    }

    fn tconorm(&self, x: f64, y: f64) -> f64 {
        check_degree(x);
        check_degree(y);
        x + y - x * y
    }

    fn implication(&self, x: f64, y: f64) -> f64 {
        check_degree(x);
        check_degree(y);
        if x <= y {
            1.0
        } else {
            y / x
        }
    }

    fn negation(&self, x: f64) -> f64 {
        check_degree(x);
        if x == 0.0 {
            1.0
        } else {
            0.0
        }
    }
}

/// Every registered family, in registry order.
pub static FAMILIES: [&dyn TruthFunctions; 3] = [&Lukasiewicz, &Goedel, &Product];

/// Look a family up by its registry name.
pub fn family(name: &str) -> Option<&'static dyn TruthFunctions> {
    FAMILIES.iter().copied().find(|f| f.name() == name)
}

/// Quantifier used to aggregate several degrees into one.
///
/// The classifier combines rule values with `Max` on both the positive and
/// the negative side; the other quantifiers are available for ad-hoc
/// aggregation but are never selected by the learner.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AggregationChoice {
    Max,
    Min,
    /// Weight-normalised sum; zero total weight yields 0.
    WeightedSum,
}

impl AggregationChoice {
    /// Aggregate `values` (optionally weighted). Empty input yields 0.
    pub fn apply(&self, values: &[f64], weights: &[f64]) -> f64 {
        if values.is_empty() {
            return 0.0;
        }
        match self {
            AggregationChoice::Max => values.iter().copied().fold(0.0, f64::max),
            AggregationChoice::Min => values.iter().copied().fold(1.0, f64::min),
            AggregationChoice::WeightedSum => {
                debug_assert_eq!(values.len(), weights.len());
                let total: f64 = weights.iter().sum();
                if total == 0.0 {
                    0.0
                } else {
                    values
                        .iter()
                        .zip(weights)
                        .map(|(v, w)| v * w)
                        .sum::<f64>()
                        / total
                }
            }
        }
    }
}

/// Final two-sided combination: keep the positive degree only when it
/// strictly dominates the negative one.
#[inline]
pub fn star(p: f64, n: f64) -> f64 {
    if p > n {
        p
    } else {
        0.0
    }
}
