//! Concept terms of the hypothesis language.
//!
//! Bodies are built from the top concept, atomic classes, existential
//! object restrictions, existential datatype restrictions and conjunction.
//! Conjunctions are normalised on construction (flattened, sorted, without
//! duplicates or redundant top conjuncts) so structural equality doubles as
//! canonical identity.

use crate::fuzzy::FuzzySet;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    /// The top concept, true of every individual.
    Top,
    /// An atomic class.
    Atomic(String),
    /// Existential restriction through an object property.
    SomeObject { property: String, filler: Box<Concept> },
    /// Existential restriction on a data property graded by a fuzzy set.
    SomeData { property: String, set: FuzzySet },
    /// Conjunction of two or more normalised conjuncts.
    And(Vec<Concept>),
}

impl Concept {
    pub fn atomic(name: impl Into<String>) -> Concept {
        Concept::Atomic(name.into())
    }

    pub fn some_object(property: impl Into<String>, filler: Concept) -> Concept {
        Concept::SomeObject {
            property: property.into(),
            filler: Box::new(filler),
        }
    }

    pub fn some_data(property: impl Into<String>, set: FuzzySet) -> Concept {
        Concept::SomeData {
            property: property.into(),
            set,
        }
    }

    /// Normalising conjunction: flattens nested conjunctions, drops top
    /// conjuncts and duplicates, sorts canonically. Collapses to the single
    /// conjunct (or to top) when fewer than two remain.
    pub fn and(conjuncts: Vec<Concept>) -> Concept {
        let mut flat = Vec::with_capacity(conjuncts.len());
        for c in conjuncts {
            match c {
                Concept::Top => {}
                Concept::And(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        flat.sort();
        flat.dedup();
        match flat.len() {
            0 => Concept::Top,
            1 => flat.pop().unwrap(),
            _ => Concept::And(flat),
        }
    }

    /// Number of top-level conjuncts (1 for anything but a conjunction).
    pub fn conjunct_count(&self) -> usize {
        match self {
            Concept::And(cs) => cs.len(),
            _ => 1,
        }
    }

    /// Largest conjunction width anywhere in the term, fillers included.
    pub fn max_conjunction_width(&self) -> usize {
        match self {
            Concept::And(cs) => cs
                .iter()
                .map(Concept::max_conjunction_width)
                .max()
                .unwrap_or(0)
                .max(cs.len()),
            Concept::SomeObject { filler, .. } => filler.max_conjunction_width(),
            _ => 1,
        }
    }

    /// Maximum nesting depth of existential restrictions.
    pub fn role_depth(&self) -> usize {
        match self {
            Concept::Top | Concept::Atomic(_) => 0,
            Concept::SomeObject { filler, .. } => 1 + filler.role_depth(),
            Concept::SomeData { .. } => 1,
            Concept::And(cs) => cs.iter().map(Concept::role_depth).max().unwrap_or(0),
        }
    }

    /// Canonical textual rendering, also used by the exporter.
    pub fn render(&self) -> String {
        match self {
            Concept::Top => "*top*".to_string(),
            Concept::Atomic(name) => name.clone(),
            Concept::SomeObject { property, filler } => {
                format!("(some {property} {})", filler.render())
            }
            Concept::SomeData { property, set } => format!("(some {property} {})", set.label),
            Concept::And(cs) => {
                let parts: Vec<String> = cs.iter().map(Concept::render).collect();
                format!("(and {})", parts.join(" "))
            }
        }
    }
}

impl std::fmt::Display for Concept {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}
