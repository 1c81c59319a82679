//! Knowledge bases, concept terms and learning tasks.

mod concept;
mod model;
mod task;

pub use concept::Concept;
pub use model::{DataKind, KbBuilder, KnowledgeBase, Value};
pub use task::{Hypothesis, Label, LearningTask, StageParams, WeightedRule};
