//! Two-stage induction of weighted fuzzy class-inclusion rules.
//!
//! Given a knowledge base (classes with a subclass hierarchy, object
//! properties, numeric and boolean data properties) and a set of
//! positively/negatively labelled individuals, the learner produces a
//! classifier made of weighted rules whose bodies are concept terms built
//! from conjunction and existential restrictions. Numeric properties are
//! made symbolic by fuzzification (uniform partitions or fuzzy c-means);
//! rule search is a greedy gain-driven specialisation with bounded
//! backtracking; a first stage covers the positives and a second stage
//! learns rules that veto the first stage's false positives. The final
//! classifier grades an individual positive when its best positive-rule
//! value strictly exceeds its best veto value.
//!
//! The crate ships a small toolchain around the learner: native text
//! formats for knowledge bases and example labellings, a CSV converter,
//! stratified cross-validation, and export/import of learnt classifiers in
//! a fuzzy-OWL-style syntax. See the `pnel` binary for the command-line
//! surface.

pub mod cli;
pub mod error;
pub mod eval;
pub mod fuzzify;
pub mod fuzzy;
pub mod io;
pub mod kb;
pub mod learn;
pub mod reasoner;
pub mod refine;

pub use error::{Error, Result};
