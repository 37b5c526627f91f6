//! Treedepth-automaton machinery: threshold automata over bounded-depth
//! forests, treedepth decompositions, and the branching solver for maximum
//! induced subgraphs whose proper decompositions the automaton accepts.

mod automaton;
mod decomposition;

pub use automaton::{
    builtin_automaton, cap_multiset, default_label, default_labeller, parse_automaton,
    run_automaton, Builtin, Labelling, StateMultiset, Symbol, ThresholdAutomaton, Transition,
};
pub use decomposition::{is_proper, make_proper, TreedepthDecomposition};
