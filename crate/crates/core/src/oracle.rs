//! Brute-force reference solvers and structural checkers. These are the
//! ground truth for the branching solvers, so they use simple exponential
//! enumeration with feasibility pruning and no cleverness.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexSet};
use std::time::{Duration, Instant};

/// Default step budget for the induced path/cycle enumerations.
pub const WITNESS_BUDGET: u64 = 10_000_000;

/// Result of a brute-force optimization: the optimum weight and the
/// lexicographically smallest witness among optima.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub weight: u64,
    pub witness: VertexSet,
    pub elapsed: Duration,
}

/// True if `(w, s)` beats the incumbent under the global tie-breaking rule:
/// larger weight first, then lexicographically smaller sorted vertex list.
fn improves(w: u64, s: &VertexSet, best_w: u64, best_s: &VertexSet) -> bool {
    w > best_w || (w == best_w && s.cmp_lex(best_s) == std::cmp::Ordering::Less)
}

/// Exact maximum-weight independent set by take/skip branching. `n ≤ 24`.
pub fn brute_mwis(g: &Graph) -> Result<OracleResult> {
    if g.n() > 24 {
        return Err(Error::contract("brute_mwis", format!("n = {} exceeds cap 24", g.n())));
    }
    let start = Instant::now();

    fn best(g: &Graph, avail: &VertexSet) -> (u64, VertexSet) {
        let Some(v) = avail.first() else {
            return (0, VertexSet::new());
        };
        let mut rest = avail.clone();
        rest.remove(v);
        let (skip_w, skip_s) = best(g, &rest);
        rest.remove_all(g.neighbors(v));
        let (mut take_w, mut take_s) = best(g, &rest);
        take_w += g.weight(v);
        take_s.insert(v);
        if improves(take_w, &take_s, skip_w, &skip_s) {
            (take_w, take_s)
        } else {
            (skip_w, skip_s)
        }
    }

    let (weight, witness) = best(g, &g.vertices());
    debug_assert_eq!(g.weight_of(&witness)?, weight);
    Ok(OracleResult { weight, witness, elapsed: start.elapsed() })
}

/// True if the subgraph induced by `s` is `d`-degenerate: vertices of degree
/// at most `d` can be peeled until nothing remains.
pub fn is_induced_d_degenerate(g: &Graph, s: &VertexSet, d: usize) -> bool {
    let mut left = s.clone();
    while !left.is_empty() {
        let peelable = left.iter().find(|&v| g.neighbors_in(v, &left).len() <= d);
        match peelable {
            Some(v) => left.remove(v),
            None => return false,
        }
    }
    true
}

/// Exact maximum-weight set inducing a `d`-degenerate subgraph, by subset
/// enumeration. `n ≤ 16`.
pub fn brute_max_degenerate(g: &Graph, d: usize) -> Result<OracleResult> {
    if g.n() > 16 {
        return Err(Error::contract(
            "brute_max_degenerate",
            format!("n = {} exceeds cap 16", g.n()),
        ));
    }
    let start = Instant::now();
    let mut best_w = 0u64;
    let mut best_s = VertexSet::new();
    for mask in 0u32..1 << g.n() {
        let s: VertexSet = (0..g.n()).filter(|&v| mask >> v & 1 == 1).collect();
        if !is_induced_d_degenerate(g, &s, d) {
            continue;
        }
        let w = g.weight_of(&s)?;
        if improves(w, &s, best_w, &best_s) {
            best_w = w;
            best_s = s;
        }
    }
    Ok(OracleResult { weight: best_w, witness: best_s, elapsed: start.elapsed() })
}

/// Shared depth-first enumeration of induced paths.
///
/// State: the current path `v_1..v_k`; `forbidden` holds the path plus the
/// neighborhoods of `v_1..v_{k-1}`, so extension candidates `N(v_k) \
/// forbidden` keep the path induced. Calls `visit(path)` for every enumerated
/// path (of ≥ `min_len` vertices); `visit` returns `true` to stop early.
fn induced_path_dfs(
    g: &Graph,
    path: &mut Vec<usize>,
    forbidden: &VertexSet,
    budget: &mut u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<bool> {
    if *budget == 0 {
        return Err(Error::WitnessBudget { op: "induced path enumeration", budget: WITNESS_BUDGET });
    }
    *budget -= 1;
    if visit(path) {
        return Ok(true);
    }
    let last = *path.last().expect("path is nonempty");
    let mut cands = g.neighbors(last).difference(forbidden);
    let next_forbidden = forbidden.union(g.neighbors(last));
    while let Some(w) = cands.first() {
        cands.remove(w);
        path.push(w);
        let mut f = next_forbidden.clone();
        f.insert(w);
        if induced_path_dfs(g, path, &f, budget, visit)? {
            path.pop();
            return Ok(true);
        }
        path.pop();
    }
    Ok(false)
}

/// Length (vertex count) of the longest induced path; 0 for the empty graph.
/// `n ≤ 24`.
pub fn brute_longest_induced_path(g: &Graph) -> Result<usize> {
    if g.n() > 24 {
        return Err(Error::contract(
            "brute_longest_induced_path",
            format!("n = {} exceeds cap 24", g.n()),
        ));
    }
    longest_induced_path_len(g)
}

/// Uncapped worker behind [`brute_longest_induced_path`]; also used on blob
/// graphs, which exceed the public cap but are dense enough to enumerate.
pub(crate) fn longest_induced_path_len(g: &Graph) -> Result<usize> {
    let mut best = 0usize;
    let mut budget = WITNESS_BUDGET;
    for v in 0..g.n() {
        let mut path = vec![v];
        let mut forbidden = VertexSet::singleton(v);
        forbidden.insert(v);
        induced_path_dfs(g, &mut path, &forbidden, &mut budget, &mut |p| {
            best = best.max(p.len());
            false
        })?;
    }
    Ok(best)
}

/// True if the graph contains an induced path on exactly `k` vertices.
pub fn has_induced_path_on(g: &Graph, k: usize) -> Result<bool> {
    if k == 0 {
        return Ok(true);
    }
    let mut budget = WITNESS_BUDGET;
    for v in 0..g.n() {
        let mut path = vec![v];
        let forbidden = VertexSet::singleton(v);
        let found = induced_path_dfs(g, &mut path, &forbidden, &mut budget, &mut |p| p.len() >= k)?;
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

/// True if the graph has no induced path on `t` vertices (is `P_t`-free).
pub fn is_pt_free(g: &Graph, t: usize) -> Result<bool> {
    Ok(!has_induced_path_on(g, t)?)
}

/// Shared depth-first enumeration of induced cycles.
///
/// Each cycle is visited once, canonically: it starts at its smallest vertex,
/// all other members are larger, and the second vertex is smaller than the
/// last. The partial state is an induced path from the start; a candidate
/// adjacent to the start closes a cycle (length ≥ 3) and is not extended
/// further, since any continuation would see that adjacency as a chord.
fn induced_cycle_dfs(
    g: &Graph,
    path: &mut Vec<usize>,
    forbidden: &VertexSet,
    budget: &mut u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<bool> {
    if *budget == 0 {
        return Err(Error::WitnessBudget {
            op: "induced cycle enumeration",
            budget: WITNESS_BUDGET,
        });
    }
    *budget -= 1;
    let start = path[0];
    let last = *path.last().expect("path is nonempty");
    let mut cands = g.neighbors(last).difference(forbidden);
    // Canonical form: everything after the start is larger than it.
    cands.remove_all(&VertexSet::full(start + 1));
    // Candidates after the next one must avoid `last`'s neighborhood — except
    // the start's, whose adjacencies are handled explicitly as closing edges.
    let next_forbidden =
        if path.len() == 1 { forbidden.clone() } else { forbidden.union(g.neighbors(last)) };
    while let Some(w) = cands.first() {
        cands.remove(w);
        if path.len() >= 2 && g.has_edge(w, start) {
            // Closing edge; canonical orientation has path[1] < w.
            if path[1] < w {
                path.push(w);
                let done = visit(path);
                path.pop();
                if done {
                    return Ok(true);
                }
            }
        } else {
            path.push(w);
            let mut f = next_forbidden.clone();
            f.insert(w);
            if induced_cycle_dfs(g, path, &f, budget, visit)? {
                path.pop();
                return Ok(true);
            }
            path.pop();
        }
    }
    Ok(false)
}

pub(crate) fn for_each_induced_cycle(
    g: &Graph,
    budget: &mut u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<bool> {
    for v in 0..g.n() {
        let mut path = vec![v];
        // The start's neighborhood is not forbidden: the closing edge needs it.
        let forbidden = VertexSet::singleton(v);
        if induced_cycle_dfs(g, &mut path, &forbidden, budget, visit)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Length (vertex count) of the longest induced cycle; 0 if the graph is
/// acyclic. `n ≤ 20`.
pub fn brute_longest_induced_cycle(g: &Graph) -> Result<usize> {
    if g.n() > 20 {
        return Err(Error::contract(
            "brute_longest_induced_cycle",
            format!("n = {} exceeds cap 20", g.n()),
        ));
    }
    longest_induced_cycle_len(g)
}

/// Uncapped worker behind [`brute_longest_induced_cycle`]; also used on blob
/// graphs.
pub(crate) fn longest_induced_cycle_len(g: &Graph) -> Result<usize> {
    let mut best = 0usize;
    let mut budget = WITNESS_BUDGET;
    for_each_induced_cycle(g, &mut budget, &mut |c| {
        best = best.max(c.len());
        false
    })?;
    Ok(best)
}

/// True if some induced cycle has more than `k` vertices.
pub fn has_induced_cycle_longer_than(g: &Graph, k: usize) -> Result<bool> {
    let mut budget = WITNESS_BUDGET;
    for_each_induced_cycle(g, &mut budget, &mut |c| c.len() > k)
}

/// True if every induced cycle has at most `t` vertices (is `C_{>t}`-free).
pub fn is_long_cycle_free(g: &Graph, t: usize) -> Result<bool> {
    Ok(!has_induced_cycle_longer_than(g, t)?)
}

/// Exact maximum-weight packing: a subset of the family, pairwise
/// non-adjacent as sets, maximizing total member weight. `|F| ≤ 18`.
///
/// The witness set contains family indices, not graph vertices.
pub fn brute_max_packing(g: &Graph, family: &[VertexSet], weights: &[u64]) -> Result<OracleResult> {
    if family.len() > 18 {
        return Err(Error::contract(
            "brute_max_packing",
            format!("|F| = {} exceeds cap 18", family.len()),
        ));
    }
    if weights.len() != family.len() {
        return Err(Error::contract(
            "brute_max_packing",
            format!("{} weights for {} members", weights.len(), family.len()),
        ));
    }
    let start = Instant::now();
    // Pairwise adjacency of members, then take/skip over indices.
    let k = family.len();
    let mut conflict: Vec<VertexSet> = vec![VertexSet::new(); k];
    for i in 0..k {
        for j in i + 1..k {
            if g.sets_adjacent(&family[i], &family[j]) {
                conflict[i].insert(j);
                conflict[j].insert(i);
            }
        }
    }
    fn best(conflict: &[VertexSet], weights: &[u64], avail: &VertexSet) -> Result<(u64, VertexSet)> {
        let Some(i) = avail.first() else {
            return Ok((0, VertexSet::new()));
        };
        let mut rest = avail.clone();
        rest.remove(i);
        let (skip_w, skip_s) = best(conflict, weights, &rest)?;
        rest.remove_all(&conflict[i]);
        let (tw, mut take_s) = best(conflict, weights, &rest)?;
        let take_w = tw.checked_add(weights[i]).ok_or(Error::Overflow("packing weight"))?;
        take_s.insert(i);
        if improves(take_w, &take_s, skip_w, &skip_s) {
            Ok((take_w, take_s))
        } else {
            Ok((skip_w, skip_s))
        }
    }
    let (weight, witness) = best(&conflict, weights, &VertexSet::full(k))?;
    Ok(OracleResult { weight, witness, elapsed: start.elapsed() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn make_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges, None).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).chain([(0, n - 1)]).collect();
        make_graph(n, &edges)
    }

    fn path(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        make_graph(n, &edges)
    }

    fn clique(n: usize) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        make_graph(n, &edges)
    }

    #[test]
    fn mwis_on_c5_is_two() {
        let r = brute_mwis(&cycle(5)).unwrap();
        assert_eq!(r.weight, 2);
        assert_eq!(r.witness.to_vec(), vec![0, 2]);
    }

    #[test]
    fn mwis_on_a_clique_picks_the_max_weight() {
        let g = Graph::new(4, &clique(4).edges(), Some(vec![3, 9, 4, 1])).unwrap();
        let r = brute_mwis(&g).unwrap();
        assert_eq!(r.weight, 9);
        assert_eq!(r.witness.to_vec(), vec![1]);
    }

    #[test]
    fn mwis_on_weighted_p4() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)], Some(vec![1, 10, 10, 1])).unwrap();
        let r = brute_mwis(&g).unwrap();
        assert_eq!(r.weight, 11);
        // {0, 2} and {1, 3} both weigh 11; the lex-smaller witness wins.
        assert_eq!(r.witness.to_vec(), vec![0, 2]);
    }

    #[test]
    fn mwis_witness_is_lex_smallest() {
        // Unit-weight P₄ has two optimum sets {0, 2}, {0, 3}, {1, 3}; the
        // lexicographically smallest is {0, 2}.
        let r = brute_mwis(&path(4)).unwrap();
        assert_eq!(r.weight, 2);
        assert_eq!(r.witness.to_vec(), vec![0, 2]);
    }

    #[test]
    fn mwis_cap_enforced() {
        let g = make_graph(25, &[]);
        assert!(brute_mwis(&g).is_err());
    }

    #[test]
    fn degenerate_whole_forest_at_d1() {
        let g = path(6);
        let r = brute_max_degenerate(&g, 1).unwrap();
        assert_eq!(r.weight, 6);
        assert_eq!(r.witness, g.vertices());
    }

    #[test]
    fn degenerate_k4_at_d1_is_an_edge() {
        let r = brute_max_degenerate(&clique(4), 1).unwrap();
        assert_eq!(r.weight, 2);
        assert_eq!(r.witness.to_vec(), vec![0, 1]);
    }

    #[test]
    fn degenerate_c5_at_d1_drops_one_vertex() {
        let r = brute_max_degenerate(&cycle(5), 1).unwrap();
        assert_eq!(r.weight, 4);
    }

    #[test]
    fn degenerate_at_d0_is_mwis() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 3)], Some(vec![2, 7, 1, 8, 3]))
            .unwrap();
        let a = brute_max_degenerate(&g, 0).unwrap();
        let b = brute_mwis(&g).unwrap();
        assert_eq!(a.weight, b.weight);
        assert_eq!(a.witness, b.witness);
    }

    #[test]
    fn longest_path_and_cycle_of_p7() {
        let g = path(7);
        assert_eq!(brute_longest_induced_path(&g).unwrap(), 7);
        assert_eq!(brute_longest_induced_cycle(&g).unwrap(), 0);
    }

    #[test]
    fn longest_path_and_cycle_of_c6() {
        let g = cycle(6);
        assert_eq!(brute_longest_induced_path(&g).unwrap(), 5);
        assert_eq!(brute_longest_induced_cycle(&g).unwrap(), 6);
    }

    #[test]
    fn triangle_is_the_only_cycle_in_a_clique() {
        assert_eq!(brute_longest_induced_cycle(&clique(5)).unwrap(), 3);
    }

    #[test]
    fn freeness_checkers() {
        assert!(is_pt_free(&path(5), 6).unwrap());
        assert!(!is_pt_free(&path(6), 6).unwrap());
        assert!(is_long_cycle_free(&cycle(6), 6).unwrap());
        assert!(!is_long_cycle_free(&cycle(7), 6).unwrap());
        // An empty graph is free of everything.
        assert!(is_pt_free(&make_graph(0, &[]), 2).unwrap());
    }

    #[test]
    fn packing_pairwise_adjacent_family_takes_best_single() {
        // Singletons of a triangle are pairwise adjacent as sets.
        let g = clique(3);
        let family = vec![
            VertexSet::singleton(0),
            VertexSet::singleton(1),
            VertexSet::singleton(2),
        ];
        let r = brute_max_packing(&g, &family, &[4, 9, 5]).unwrap();
        assert_eq!(r.weight, 9);
        assert_eq!(r.witness.to_vec(), vec![1]);
    }

    #[test]
    fn packing_singletons_with_unit_weights_matches_mwis() {
        let g = cycle(5);
        let family: Vec<VertexSet> = (0..5).map(VertexSet::singleton).collect();
        let r = brute_max_packing(&g, &family, &[1; 5]).unwrap();
        assert_eq!(r.weight, brute_mwis(&g).unwrap().weight);
    }

    #[test]
    fn packing_two_disjoint_squares() {
        // Two C₄'s joined by nothing: both fit.
        let g = make_graph(8, &[(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6), (6, 7), (4, 7)]);
        let family = vec![
            [0, 1, 2, 3].into_iter().collect::<VertexSet>(),
            [4, 5, 6, 7].into_iter().collect::<VertexSet>(),
        ];
        let r = brute_max_packing(&g, &family, &[1, 1]).unwrap();
        assert_eq!(r.weight, 2);
        assert_eq!(r.witness.to_vec(), vec![0, 1]);
    }

    #[test]
    fn packing_respects_set_adjacency_without_shared_vertices() {
        // Members {0} and {1} are disjoint but joined by an edge.
        let g = path(2);
        let family = vec![VertexSet::singleton(0), VertexSet::singleton(1)];
        let r = brute_max_packing(&g, &family, &[1, 1]).unwrap();
        assert_eq!(r.weight, 1);
    }
}
