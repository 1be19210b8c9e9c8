//! Embedded resolution of plane-curve germs by point blowups.

pub mod relations;
pub mod resolver;
pub mod tree;

pub use relations::{lemma_check, relations_check, RelationsReport};
pub use resolver::{resolve_germ, DEFAULT_MAX_STEPS};
pub use tree::{resolution_candidate_poles, ExceptionalCurve, Node, ResolutionTree, StrictComponent};
