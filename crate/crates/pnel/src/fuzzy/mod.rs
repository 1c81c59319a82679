//! Graded truth values: connective families, aggregation, membership shapes.

pub mod membership;
pub mod truth;

pub use membership::{FuzzyDatatype, FuzzySet};
pub use truth::{family, star, AggregationChoice, TruthFunctions};
