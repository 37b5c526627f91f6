//! Seeded instance generators: G(n, p) with rejection against freeness
//! oracles, random chordal and interval graphs, and deterministic structures.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::{is_long_cycle_free, is_pt_free};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Attempts allowed before a rejection sampler gives up.
pub const REJECTION_BUDGET: u64 = 10_000;

/// Freeness condition a sampled instance must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Freeness {
    /// No constraint beyond connectivity.
    Any,
    /// No induced path on `t` vertices.
    PtFree(usize),
    /// No induced cycle on more than `t` vertices.
    LongCycleFree(usize),
}

/// Vertex-weight distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    Unit,
    /// Uniform in `[lo, hi]`, inclusive.
    Uniform { lo: u64, hi: u64 },
}

/// What to generate.
#[derive(Debug, Clone, PartialEq)]
pub enum GenKind {
    /// Connected G(n, p) resampled until `freeness` holds.
    RandomGnpRejection { n: usize, p: f64, freeness: Freeness },
    /// Intersection graph of random subtrees of a random tree; chordal by
    /// construction, resampled until connected.
    RandomChordal { n: usize },
    /// Intersection graph of random intervals; resampled until connected.
    RandomInterval { n: usize },
    Path { n: usize },
    Cycle { n: usize },
    Grid { rows: usize, cols: usize },
}

/// Generates an instance, deterministically for a fixed seed. Random kinds
/// resample up to [`REJECTION_BUDGET`] times and fail loudly rather than
/// return a non-conforming instance.
pub fn generate_instance(kind: &GenKind, weights: WeightKind, seed: u64) -> Result<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = match *kind {
        GenKind::RandomGnpRejection { n, p, freeness } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::contract("generate_instance", format!("p = {p} outside [0, 1]")));
            }
            sample_until(&mut rng, |rng| gnp(rng, n, p), |g| conforms(g, freeness))?
        }
        GenKind::RandomChordal { n } => {
            sample_until(&mut rng, |rng| random_chordal(rng, n), |g| Ok(g.is_connected()))?
        }
        GenKind::RandomInterval { n } => {
            sample_until(&mut rng, |rng| random_interval(rng, n), |g| Ok(g.is_connected()))?
        }
        GenKind::Path { n } => {
            let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            Graph::new(n, &edges, None)?
        }
        GenKind::Cycle { n } => {
            if n < 3 {
                return Err(Error::contract("generate_instance", "cycle needs n >= 3"));
            }
            let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).chain([(0, n - 1)]).collect();
            Graph::new(n, &edges, None)?
        }
        GenKind::Grid { rows, cols } => {
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    let v = r * cols + c;
                    if c + 1 < cols {
                        edges.push((v, v + 1));
                    }
                    if r + 1 < rows {
                        edges.push((v, v + cols));
                    }
                }
            }
            Graph::new(rows * cols, &edges, None)?
        }
    };
    // Weights are drawn after the structure settles, from the same stream.
    let ws = match weights {
        WeightKind::Unit => vec![1; g.n()],
        WeightKind::Uniform { lo, hi } => {
            if lo > hi {
                return Err(Error::contract("generate_instance", format!("weight range {lo} > {hi}")));
            }
            (0..g.n()).map(|_| rng.gen_range(lo..=hi)).collect()
        }
    };
    Graph::new(g.n(), g.edges(), Some(ws))
}

fn conforms(g: &Graph, freeness: Freeness) -> Result<bool> {
    if !g.is_connected() {
        return Ok(false);
    }
    match freeness {
        Freeness::Any => Ok(true),
        Freeness::PtFree(t) => is_pt_free(g, t),
        Freeness::LongCycleFree(t) => is_long_cycle_free(g, t),
    }
}

fn sample_until(
    rng: &mut ChaCha8Rng,
    mut sample: impl FnMut(&mut ChaCha8Rng) -> Result<Graph>,
    mut accept: impl FnMut(&Graph) -> Result<bool>,
) -> Result<Graph> {
    for _ in 0..REJECTION_BUDGET {
        let g = sample(rng)?;
        if accept(&g)? {
            return Ok(g);
        }
    }
    Err(Error::RejectionBudget { budget: REJECTION_BUDGET })
}

fn gnp(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Result<Graph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges, None)
}

/// Random tree on `n` nodes (each node attaches to a uniform earlier node),
/// one random connected subtree per vertex, edges between intersecting
/// subtrees. Subtree intersection graphs are exactly the chordal graphs.
fn random_chordal(rng: &mut ChaCha8Rng, n: usize) -> Result<Graph> {
    if n == 0 {
        return Graph::new(0, &[], None);
    }
    let mut tree_adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 1..n {
        let parent = rng.gen_range(0..i);
        tree_adj[i].push(parent);
        tree_adj[parent].push(i);
    }
    let mut subtrees: Vec<Vec<usize>> = Vec::with_capacity(n);
    for _ in 0..n {
        let root = rng.gen_range(0..n);
        let mut nodes = vec![root];
        let mut frontier: Vec<usize> = tree_adj[root].clone();
        // Grow by absorbing a random frontier node, stopping early at random.
        while !frontier.is_empty() && rng.gen_bool(0.45) {
            let pick = rng.gen_range(0..frontier.len());
            let node = frontier.swap_remove(pick);
            if nodes.contains(&node) {
                continue;
            }
            nodes.push(node);
            frontier.extend(tree_adj[node].iter().filter(|x| !nodes.contains(x)));
        }
        subtrees.push(nodes);
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if subtrees[u].iter().any(|x| subtrees[v].contains(x)) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges, None)
}

/// Random intervals with endpoints in a small discrete range; edge iff the
/// intervals overlap. Interval graphs are chordal.
fn random_interval(rng: &mut ChaCha8Rng, n: usize) -> Result<Graph> {
    let span = (3 * n.max(1)) as u32;
    let intervals: Vec<(u32, u32)> = (0..n)
        .map(|_| {
            let a = rng.gen_range(0..span);
            let b = rng.gen_range(0..span);
            (a.min(b), a.max(b))
        })
        .collect();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            let (a1, b1) = intervals[u];
            let (a2, b2) = intervals[v];
            if a1.max(a2) <= b1.min(b2) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges, None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{brute_longest_induced_cycle, brute_longest_induced_path};

    #[test]
    fn cycle_five_is_p5_free_and_has_no_longer_cycle() {
        let g = generate_instance(&GenKind::Cycle { n: 5 }, WeightKind::Unit, 0).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.m(), 5);
        assert_eq!(brute_longest_induced_path(&g).unwrap(), 4);
        assert_eq!(brute_longest_induced_cycle(&g).unwrap(), 5);
    }

    #[test]
    fn interval_instances_are_chordal() {
        for seed in [7, 8, 9] {
            let g =
                generate_instance(&GenKind::RandomInterval { n: 10 }, WeightKind::Unit, seed).unwrap();
            assert!(g.is_connected());
            assert!(brute_longest_induced_cycle(&g).unwrap() <= 3);
        }
    }

    #[test]
    fn chordal_instances_are_chordal() {
        for seed in 0..5 {
            let g =
                generate_instance(&GenKind::RandomChordal { n: 12 }, WeightKind::Unit, seed).unwrap();
            assert!(g.is_connected());
            assert!(brute_longest_induced_cycle(&g).unwrap() <= 3);
        }
    }

    #[test]
    fn gnp_rejection_delivers_p6_free_connected_instances() {
        let kind = GenKind::RandomGnpRejection {
            n: 14,
            p: 0.75,
            freeness: Freeness::PtFree(6),
        };
        let g = generate_instance(&kind, WeightKind::Uniform { lo: 1, hi: 100 }, 42).unwrap();
        assert!(g.is_connected());
        assert!(brute_longest_induced_path(&g).unwrap() < 6);
        assert!(g.weights().iter().all(|&w| (1..=100).contains(&w)));
    }

    #[test]
    fn generation_is_deterministic_per_seed() {
        let kind = GenKind::RandomGnpRejection { n: 10, p: 0.5, freeness: Freeness::Any };
        let a = generate_instance(&kind, WeightKind::Uniform { lo: 1, hi: 100 }, 5).unwrap();
        let b = generate_instance(&kind, WeightKind::Uniform { lo: 1, hi: 100 }, 5).unwrap();
        let c = generate_instance(&kind, WeightKind::Uniform { lo: 1, hi: 100 }, 6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn impossible_target_exhausts_the_budget() {
        // A connected 3-vertex graph always contains an induced P₂.
        let kind = GenKind::RandomGnpRejection { n: 3, p: 0.5, freeness: Freeness::PtFree(2) };
        match generate_instance(&kind, WeightKind::Unit, 1) {
            Err(Error::RejectionBudget { budget }) => assert_eq!(budget, REJECTION_BUDGET),
            other => panic!("expected rejection-budget failure, got {other:?}"),
        }
    }

    #[test]
    fn grid_shape() {
        let g = generate_instance(&GenKind::Grid { rows: 3, cols: 4 }, WeightKind::Unit, 0).unwrap();
        assert_eq!(g.n(), 12);
        assert_eq!(g.m(), 17);
        assert!(g.is_connected());
    }
}
