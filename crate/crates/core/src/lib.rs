//! Solvers for maximum-weight induced sparse subgraph problems — independent
//! set, induced d-degenerate subgraph, induced packing, and treedepth-bounded
//! properties defined by threshold automata — on graphs with no long induced
//! path (`P_t`-free) or no long induced cycle (`C_{>t}`-free).
//!
//! The solvers run a level-annotated branching recursion whose nodes filter,
//! split, or branch on a pivot vertex chosen through bucket statistics over
//! induced paths or tripods. Brute-force oracles, generators, and recursion
//! instrumentation support end-to-end verification at small scale.

pub mod blob;
pub mod branching;
pub mod buckets;
pub mod error;
pub mod gen;
pub mod graph;
pub mod separator;
pub mod oracle;
pub mod td;

pub use blob::{approx_largest_induced_class, blob_graph, solve_max_induced_packing};
pub use branching::{solve_max_degenerate, solve_mwis, Mode, Solution, SolveConfig, SolveStats};
pub use error::{Error, Result, Violation};
pub use graph::{
    connected_components, greedy_degeneracy_ordering, induced_subgraph, parse_graph,
    serialize_graph, validate_degeneracy_ordering, Graph, Positions, VertexSet,
};
pub use td::{
    builtin_automaton, make_proper, parse_automaton, Builtin, ThresholdAutomaton,
    TreedepthDecomposition,
};
