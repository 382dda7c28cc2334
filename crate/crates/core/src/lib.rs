//! Optimal and best-known bounded-weight binary codes through maximum clique.
//!
//! A code of length `n` with minimum distance `d` whose words have weight at
//! most `w` (or exactly `w`) is a clique in the graph on admissible words
//! where two words are adjacent iff they differ in at least `d` positions.
//! [`graph::build_graph`] builds that graph, [`exact`] finds maximum cliques
//! by branch and bound, [`greedy`] runs the randomized semi-exhaustive
//! heuristic, and [`bounds`] evaluates the residue-patching lower bound
//! against the bundled reference tables.
//!
//! ```
//! use bwcode::{build_graph, max_clique_exact, CodeParams, ExactOptions};
//!
//! let graph = build_graph(&CodeParams::bounded(6, 4, 3).unwrap()).unwrap();
//! let result = max_clique_exact(graph.adjacency(), &ExactOptions::default());
//! assert_eq!(result.size, 4);
//! assert!(result.proven_optimal);
//! ```

pub mod bitset;
pub mod bounds;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod exact;
pub mod graph;
pub mod greedy;
pub mod oracle;
pub mod words;

pub use bounds::{patch_lower_bound, ReferenceTable};
pub use corpus::{parse_code_file, serialize_code, verify_code, Code, Provenance};
pub use error::{Error, Result};
pub use exact::{max_clique_exact, Bound, ExactOptions, ExactResult};
pub use graph::{build_graph, clique_is_code, export_dimacs, BitGraph, CompatibilityGraph};
pub use greedy::{greedy_once, greedy_restarts, GreedyConfig, GreedyResult};
pub use words::{hamming_distance, weight, CodeParams, WeightMode, Word};
