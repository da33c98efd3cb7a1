//! Crossingless matchings and the structure built on them: gluing into
//! closed diagrams, arrow moves and the partial order they generate, the
//! arc graph of a matching, and admissible subsets.

mod diagram;
mod graph;
mod matching;
mod order;
mod subset;

pub use diagram::{distance, glue, ClosedDiagram};
pub use graph::{bottom_arc_count, matching_graph, MatchingGraph};
pub use matching::{binomial, catalan, enumerate_matchings, Matching};
pub use order::{arrow_targets, arrows, find_sink, total_order, ArrowPoset};
pub use subset::{admissible_subsets, AdmissibleSubset, Subset, MAX_POINTS};
