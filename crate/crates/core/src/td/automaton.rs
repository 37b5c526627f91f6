//! Threshold automata: bottom-up forest automata whose transitions read the
//! multiset of child states capped at a threshold.

use super::decomposition::TreedepthDecomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

/// A label from the alphabet `Σ_d = {1..d} × {0,1}^d`: the depth of a vertex
/// in its decomposition together with one adjacency bit per ancestor depth.
///
/// `adjacency[i]` records whether the vertex is adjacent to its unique
/// ancestor at depth `i + 1`; bits at or past the vertex's own depth are
/// always clear for labels produced by [`default_labeller`]. The textual form
/// is `depth:bits`, for example `2:10` for a depth-2 vertex adjacent to its
/// parent with `d = 2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol {
    pub depth: usize,
    pub adjacency: Vec<bool>,
}

impl Symbol {
    pub fn new(depth: usize, adjacency: Vec<bool>) -> Symbol {
        Symbol { depth, adjacency }
    }

    /// The bit for the ancestor at depth `i` (1-based); clear out of range.
    pub fn bit(&self, i: usize) -> bool {
        i >= 1 && self.adjacency.get(i - 1).copied().unwrap_or(false)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.depth)?;
        for &b in &self.adjacency {
            write!(f, "{}", u8::from(b))?;
        }
        Ok(())
    }
}

impl FromStr for Symbol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Symbol> {
        let bad = || Error::contract("parse_symbol", format!("malformed symbol {s:?}, expected depth:bits"));
        let (depth, bits) = s.split_once(':').ok_or_else(bad)?;
        let depth: usize = depth.parse().map_err(|_| bad())?;
        if depth == 0 {
            return Err(bad());
        }
        let adjacency = bits
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<bool>>>()?;
        Ok(Symbol { depth, adjacency })
    }
}

/// A multiset over the states of an automaton, stored as one multiplicity
/// per state index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateMultiset {
    counts: Vec<u32>,
}

impl StateMultiset {
    /// The empty multiset over `num_states` states.
    pub fn empty(num_states: usize) -> StateMultiset {
        StateMultiset { counts: vec![0; num_states] }
    }

    pub fn from_counts(counts: Vec<u32>) -> StateMultiset {
        StateMultiset { counts }
    }

    /// The multiplicity of state `q`; zero out of range.
    pub fn count(&self, q: usize) -> u32 {
        self.counts.get(q).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| u64::from(c)).sum()
    }

    pub fn add(&mut self, q: usize) {
        self.counts[q] += 1;
    }

    /// Multiset union: per-state sums.
    pub fn plus(&self, other: &StateMultiset) -> StateMultiset {
        let n = self.counts.len().max(other.counts.len());
        StateMultiset {
            counts: (0..n).map(|q| self.count(q) + other.count(q)).collect(),
        }
    }

    /// `self ∧ tau`: every multiplicity reduced to at most `tau`.
    pub fn capped(&self, tau: u32) -> StateMultiset {
        StateMultiset { counts: self.counts.iter().map(|&c| c.min(tau)).collect() }
    }

    pub fn is_capped(&self, tau: u32) -> bool {
        self.counts.iter().all(|&c| c <= tau)
    }
}

/// `M ∧ τ`: caps every multiplicity of `m` at `tau`.
pub fn cap_multiset(m: &StateMultiset, tau: u32) -> StateMultiset {
    m.capped(tau)
}

/// The transition function: a finite table over (symbol, capped child
/// multiset) pairs, or a host callback for families that cannot be tabled
/// up front (the builtin automata work for every `d`). A callback returning
/// `None` means the pair is outside the function's domain.
#[derive(Clone)]
pub enum Transition {
    Table(BTreeMap<(Symbol, StateMultiset), usize>),
    Rule(fn(&Symbol, &StateMultiset) -> Option<usize>),
}

impl fmt::Debug for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Transition::Table(t) => write!(f, "Table({} entries)", t.len()),
            Transition::Rule(_) => write!(f, "Rule(..)"),
        }
    }
}

/// A threshold automaton `(Q, Σ, τ, δ, C)` running bottom-up over labelled
/// forests: the state of a vertex is `δ(label, {{child states}} ∧ τ)`, and a
/// forest is accepted when its capped multiset of root states lies in `C`.
#[derive(Debug, Clone)]
pub struct ThresholdAutomaton {
    states: Vec<String>,
    /// Declared symbols for table-backed automata; empty means the alphabet
    /// is left open (rule-backed automata accept any well-formed symbol).
    alphabet: Vec<Symbol>,
    tau: u32,
    transition: Transition,
    accept: BTreeSet<StateMultiset>,
}

impl ThresholdAutomaton {
    /// Builds a table-backed automaton, validating that state names are
    /// nonempty and distinct, every multiset is capped at `tau`, table
    /// symbols are declared in the alphabet, and no key repeats.
    pub fn from_table(
        states: Vec<String>,
        alphabet: Vec<Symbol>,
        tau: u32,
        entries: Vec<(Symbol, StateMultiset, usize)>,
        accept: Vec<StateMultiset>,
    ) -> Result<ThresholdAutomaton> {
        let err = |msg: String| Error::Contract { op: "automaton", msg };
        if states.is_empty() {
            return Err(err("an automaton needs at least one state".into()));
        }
        let distinct: BTreeSet<&String> = states.iter().collect();
        if distinct.len() != states.len() || states.iter().any(String::is_empty) {
            return Err(err("state names must be nonempty and distinct".into()));
        }
        let declared: BTreeSet<&Symbol> = alphabet.iter().collect();
        let mut table = BTreeMap::new();
        for (sym, multiset, target) in entries {
            if !declared.contains(&sym) {
                return Err(err(format!("transition symbol {sym} is not in the alphabet")));
            }
            if !multiset.is_capped(tau) {
                return Err(err(format!("transition multiset at {sym} exceeds the threshold {tau}")));
            }
            if target >= states.len() {
                return Err(err(format!("transition target state index {target} out of range")));
            }
            if table.insert((sym.clone(), multiset), target).is_some() {
                return Err(err(format!("duplicate transition key at symbol {sym}")));
            }
        }
        let mut accepted = BTreeSet::new();
        for m in accept {
            if !m.is_capped(tau) {
                return Err(err(format!("accepting multiset exceeds the threshold {tau}")));
            }
            accepted.insert(m);
        }
        Ok(ThresholdAutomaton {
            states,
            alphabet,
            tau,
            transition: Transition::Table(table),
            accept: accepted,
        })
    }

    /// Builds a rule-backed automaton; the callback is the whole of `δ`.
    pub fn from_rule(
        states: Vec<String>,
        tau: u32,
        rule: fn(&Symbol, &StateMultiset) -> Option<usize>,
        accept: Vec<StateMultiset>,
    ) -> Result<ThresholdAutomaton> {
        let table_free = ThresholdAutomaton::from_table(states, Vec::new(), tau, Vec::new(), accept)?;
        Ok(ThresholdAutomaton { transition: Transition::Rule(rule), ..table_free })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn state_name(&self, q: usize) -> &str {
        &self.states[q]
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn tau(&self) -> u32 {
        self.tau
    }

    pub fn alphabet(&self) -> &[Symbol] {
        &self.alphabet
    }

    pub fn accepting(&self) -> impl Iterator<Item = &StateMultiset> {
        self.accept.iter()
    }

    /// `δ(symbol, children)`. The multiset must already be capped; an
    /// undefined pair is a configuration error.
    pub fn delta(&self, symbol: &Symbol, children: &StateMultiset) -> Result<usize> {
        debug_assert!(children.is_capped(self.tau));
        let looked_up = match &self.transition {
            Transition::Table(t) => t.get(&(symbol.clone(), children.clone())).copied(),
            Transition::Rule(rule) => rule(symbol, children),
        };
        looked_up.ok_or_else(|| Error::Contract {
            op: "automaton",
            msg: format!("delta is undefined for symbol {symbol} and child multiset {:?}", children),
        })
    }

    /// Whether a capped multiset of root states is accepting.
    pub fn accepts(&self, roots: &StateMultiset) -> bool {
        self.accept.contains(roots)
    }

    /// The largest multiplicity of `q` across all accepting multisets; a
    /// cheap upper bound used to prune root guesses.
    pub(crate) fn max_accepted_count(&self, q: usize) -> u32 {
        self.accept.iter().map(|m| m.count(q)).max().unwrap_or(0)
    }
}

/// The example automata shipped with the solver.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// Accepts exactly the forests whose labels certify an edgeless induced
    /// subgraph: any set adjacency bit leads to the reject state.
    Edgeless,
    /// Accepts forests whose trees are a lone root or a root with exactly
    /// one child adjacent to it and nothing deeper: the vertex set induces a
    /// matching plus isolated vertices.
    InducedMatching,
}

const OK: usize = 0;
const BAD: usize = 1;

fn edgeless_rule(symbol: &Symbol, children: &StateMultiset) -> Option<usize> {
    let edge_seen = symbol.adjacency.iter().any(|&b| b) || children.count(BAD) > 0;
    Some(if edge_seen { BAD } else { OK })
}

fn matching_rule(symbol: &Symbol, children: &StateMultiset) -> Option<usize> {
    if children.count(BAD) > 0 {
        return Some(BAD);
    }
    let kids = children.count(OK);
    let good = match symbol.depth {
        1 => kids <= 1,
        2 => symbol.bit(1) && kids == 0,
        _ => false,
    };
    Some(if good { OK } else { BAD })
}

/// Constructs one of the builtin automata. Both use rule-backed transitions
/// because their tables would depend on the depth bound `d` of the labels.
pub fn builtin_automaton(kind: Builtin) -> ThresholdAutomaton {
    let states = vec!["ok".to_string(), "bad".to_string()];
    let (tau, rule): (u32, fn(&Symbol, &StateMultiset) -> Option<usize>) = match kind {
        Builtin::Edgeless => (1, edgeless_rule),
        // τ = 2 so a root sees the difference between one child and two.
        Builtin::InducedMatching => (2, matching_rule),
    };
    let accept = (0..=tau).map(|k| StateMultiset::from_counts(vec![k, 0])).collect();
    ThresholdAutomaton::from_rule(states, tau, rule, accept)
        .expect("builtin automata are well-formed")
}

/// A labelling of decomposition vertices by alphabet symbols.
pub type Labelling = BTreeMap<usize, Symbol>;

/// The label of one vertex under the default labeller: its depth paired
/// with one adjacency bit per ancestor depth, padded with zeros to `d` bits.
///
/// The label reads only the vertex's root path and the edges between the
/// vertex and that path, so it is unchanged by any extension of the forest
/// below or beside the vertex.
pub fn default_label(g: &Graph, f: &TreedepthDecomposition, v: usize, d: usize) -> Result<Symbol> {
    let path = f.path_from_root(v);
    if path.is_empty() {
        return Err(Error::contract("default_label", format!("vertex {v} is not in the decomposition")));
    }
    let depth = path.len();
    if depth > d {
        return Err(Error::contract(
            "default_label",
            format!("vertex {v} has depth {depth}, beyond the bound {d}"),
        ));
    }
    let adjacency = (0..d).map(|i| i + 1 < depth && g.has_edge(v, path[i])).collect();
    Ok(Symbol { depth, adjacency })
}

/// Labels every vertex of `f` by [`default_label`].
pub fn default_labeller(g: &Graph, f: &TreedepthDecomposition, d: usize) -> Result<Labelling> {
    f.vertices().iter().map(|v| Ok((v, default_label(g, f, v, d)?))).collect()
}

/// Runs the automaton bottom-up over a labelled forest: every vertex gets
/// the state `δ(label, {{child states}} ∧ τ)`, and the forest is accepted
/// when the capped multiset of root states is accepting. Returns the full
/// run `ξ` together with the acceptance verdict.
pub fn run_automaton(
    aut: &ThresholdAutomaton,
    f: &TreedepthDecomposition,
    labels: &Labelling,
) -> Result<(BTreeMap<usize, usize>, bool)> {
    let mut order: Vec<usize> = f.vertices().to_vec();
    order.sort_by_key(|&v| std::cmp::Reverse(f.depth_of(v)));
    let mut run: BTreeMap<usize, usize> = BTreeMap::new();
    for v in order {
        let label = labels.get(&v).ok_or_else(|| {
            Error::contract("run_automaton", format!("vertex {v} has no label"))
        })?;
        let mut children = StateMultiset::empty(aut.num_states());
        for c in f.children_of(v) {
            children.add(run[&c]);
        }
        run.insert(v, aut.delta(label, &children.capped(aut.tau()))?);
    }
    let mut roots = StateMultiset::empty(aut.num_states());
    for r in f.roots() {
        roots.add(run[&r]);
    }
    let accepted = aut.accepts(&roots.capped(aut.tau()));
    Ok((run, accepted))
}

/// On-disk automaton shape: state and symbol names, with multisets written
/// as lists of state names carrying multiplicity by repetition.
#[derive(serde::Deserialize)]
struct AutomatonFile {
    states: Vec<String>,
    alphabet: Vec<String>,
    tau: u32,
    delta: Vec<(String, Vec<String>, String)>,
    accept: Vec<Vec<String>>,
}

/// Parses the JSON automaton format:
/// `{states, alphabet, tau, delta: [[symbol, multiset, state]...], accept: [multiset...]}`.
pub fn parse_automaton(text: &str) -> Result<ThresholdAutomaton> {
    let err = |msg: String| Error::Contract { op: "parse_automaton", msg };
    let file: AutomatonFile =
        serde_json::from_str(text).map_err(|e| err(format!("invalid JSON: {e}")))?;
    let resolve = |name: &str| {
        file.states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| err(format!("unknown state {name:?}")))
    };
    let multiset = |names: &[String]| -> Result<StateMultiset> {
        let mut m = StateMultiset::empty(file.states.len());
        for name in names {
            m.add(resolve(name)?);
        }
        Ok(m)
    };
    let alphabet =
        file.alphabet.iter().map(|s| s.parse()).collect::<Result<Vec<Symbol>>>()?;
    let entries = file
        .delta
        .iter()
        .map(|(sym, names, target)| Ok((sym.parse()?, multiset(names)?, resolve(target)?)))
        .collect::<Result<Vec<_>>>()?;
    let accept =
        file.accept.iter().map(|names| multiset(names)).collect::<Result<Vec<_>>>()?;
    ThresholdAutomaton::from_table(file.states, alphabet, file.tau, entries, accept)
}
