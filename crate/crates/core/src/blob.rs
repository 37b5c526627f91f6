//! Packing families of connected pieces by solving weighted independent set
//! on the pieces' touch graph.

use crate::branching::{solve_mwis, SolveConfig, SolveStats};
use crate::error::{Error, Result, Violation};
use crate::graph::{induced_subgraph, Graph, VertexSet};
use crate::oracle::{for_each_induced_cycle, WITNESS_BUDGET};

/// One packable piece: a connected chunk of the host graph together with the
/// reward for including it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyMember {
    pub vertices: VertexSet,
    pub weight: u64,
}

impl FamilyMember {
    pub fn new(vertices: VertexSet, weight: u64) -> FamilyMember {
        FamilyMember { vertices, weight }
    }
}

/// The touch graph of a family: one node per member, weighted by the
/// member's reward, with an edge wherever two members share a vertex or are
/// joined by a host edge. Node `i` stands for `members[i]`.
#[derive(Debug, Clone)]
pub struct BlobGraph {
    pub graph: Graph,
    pub members: Vec<FamilyMember>,
}

/// Builds the touch graph of `family` over `g`. Members must be nonempty and
/// induce connected subgraphs; duplicates are allowed and become distinct,
/// mutually adjacent nodes.
pub fn blob_graph(g: &Graph, family: &[FamilyMember]) -> Result<BlobGraph> {
    for (i, m) in family.iter().enumerate() {
        if m.vertices.last().map_or(false, |v| v >= g.n()) {
            return Err(Error::contract(
                "blob_graph",
                format!("family member {i} = {:?} reaches outside the graph", m.vertices.to_vec()),
            ));
        }
        if m.vertices.is_empty() || !g.is_connected_within(&m.vertices) {
            return Err(Error::contract(
                "blob_graph",
                format!(
                    "family member {i} = {:?} does not induce a nonempty connected subgraph",
                    m.vertices.to_vec()
                ),
            ));
        }
    }
    let mut edges = Vec::new();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if g.sets_adjacent(&family[i].vertices, &family[j].vertices) {
                edges.push((i, j));
            }
        }
    }
    let weights = family.iter().map(|m| m.weight).collect();
    Ok(BlobGraph {
        graph: Graph::new(family.len(), &edges, Some(weights))?,
        members: family.to_vec(),
    })
}

/// A selected packing: indices into the family, their total reward, and the
/// union of the chosen pieces in the host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Packing {
    pub chosen: Vec<usize>,
    pub weight: u64,
    pub vertices: VertexSet,
}

/// Picks a maximum-reward subfamily whose members are pairwise non-touching,
/// so that the components of the chosen union are exactly the chosen members.
/// Equivalent to weighted independent set on the touch graph, which inherits
/// the host graph's freeness; `cfg` must therefore ask for degeneracy 0, and
/// its `t`/`mode` describe the host graph.
pub fn solve_max_induced_packing(
    g: &Graph,
    family: &[FamilyMember],
    cfg: &SolveConfig,
) -> Result<(Packing, SolveStats)> {
    if cfg.d != 0 {
        return Err(Error::contract(
            "solve_max_induced_packing",
            "packing reduces to independent set; the configuration must use degeneracy 0",
        ));
    }
    let blob = blob_graph(g, family)?;
    let (sol, stats) = solve_mwis(&blob.graph, cfg)?;
    let chosen: Vec<usize> = sol.set.iter().collect();
    let mut vertices = VertexSet::new();
    let mut weight = 0u64;
    for &i in &chosen {
        vertices.union_with(&family[i].vertices);
        weight = weight
            .checked_add(family[i].weight)
            .ok_or(Error::Overflow("packing weight"))?;
    }
    if weight != sol.weight {
        return Err(Violation::new(
            "packing",
            format!("chosen members sum to {weight} but the solver reported {}", sol.weight),
            chosen.clone(),
        )
        .into());
    }
    // Non-touching connected members are exactly the components of their
    // union; any mismatch means the reduction was violated.
    let comps = g.components_within(&vertices);
    let mut want: Vec<VertexSet> = chosen.iter().map(|&i| family[i].vertices.clone()).collect();
    want.sort_by(|a, b| a.cmp_lex(b));
    if comps != want {
        return Err(Violation::new(
            "packing",
            "the chosen members are not the components of their union",
            vertices.to_vec(),
        )
        .into());
    }
    Ok((Packing { chosen, weight, vertices }, stats))
}

/// Approximates the largest induced subgraph whose components all satisfy
/// `predicate`, by packing connected pieces of at most `c` vertices. When the
/// target class is weakly hyperfinite with constant `c = c(eps)`, the output
/// covers at least a `1 - eps` fraction of the optimum; the component
/// property of the output is verified unconditionally. `predicate` is
/// evaluated on induced subgraphs of at most `c` vertices and should be
/// deletion-closed for the guarantee to mean anything.
pub fn approx_largest_induced_class<P>(
    g: &Graph,
    eps: f64,
    predicate: P,
    c: usize,
    cfg: &SolveConfig,
) -> Result<(VertexSet, SolveStats)>
where
    P: Fn(&Graph) -> bool,
{
    if !eps.is_finite() || eps <= 0.0 {
        return Err(Error::contract(
            "approx_largest_induced_class",
            format!("accuracy eps = {eps} must be positive and finite"),
        ));
    }
    if c == 0 {
        return Err(Error::contract(
            "approx_largest_induced_class",
            "the component size bound must be at least 1",
        ));
    }
    let mut family = Vec::new();
    for s in enumerate_connected_sets(g, c)? {
        let (sub, _) = induced_subgraph(g, &s);
        if predicate(&sub) {
            family.push(FamilyMember::new(s.clone(), s.len() as u64));
        }
    }
    let (packing, stats) = solve_max_induced_packing(g, &family, cfg)?;
    for comp in g.components_within(&packing.vertices) {
        if comp.len() > c || !predicate(&induced_subgraph(g, &comp).0) {
            return Err(Violation::new(
                "approx_largest_induced_class",
                "a component of the output violates the class predicate",
                comp.to_vec(),
            )
            .into());
        }
    }
    Ok((packing.vertices, stats))
}

/// Every nonempty vertex set of at most `max_size` vertices inducing a
/// connected subgraph, sorted lexicographically. Errors when more than the
/// enumeration budget would be listed.
pub fn enumerate_connected_sets(g: &Graph, max_size: usize) -> Result<Vec<VertexSet>> {
    // Each set is generated once, rooted at its smallest vertex: the frontier
    // holds unprocessed extension candidates, and a candidate popped from it
    // contributes only its neighbors that see nothing of the current set.
    fn extend(
        g: &Graph,
        s: &mut VertexSet,
        frontier: &VertexSet,
        root: usize,
        max_size: usize,
        budget: &mut u64,
        out: &mut Vec<VertexSet>,
    ) -> Result<()> {
        if *budget == 0 {
            return Err(Error::WitnessBudget {
                op: "connected set enumeration",
                budget: WITNESS_BUDGET,
            });
        }
        *budget -= 1;
        out.push(s.clone());
        if s.len() == max_size {
            return Ok(());
        }
        let seen = g.closed_neighborhood(s);
        let mut left = frontier.clone();
        while let Some(w) = left.first() {
            left.remove(w);
            let mut fresh = g.neighbors(w).difference(&seen);
            fresh.remove_all(&VertexSet::full(root + 1));
            fresh.union_with(&left);
            s.insert(w);
            extend(g, s, &fresh, root, max_size, budget, out)?;
            s.remove(w);
        }
        Ok(())
    }

    let mut out = Vec::new();
    let mut budget = WITNESS_BUDGET;
    for root in 0..g.n() {
        let mut s = VertexSet::singleton(root);
        let mut frontier = g.neighbors(root).clone();
        frontier.remove_all(&VertexSet::full(root + 1));
        extend(g, &mut s, &frontier, root, max_size.max(1), &mut budget, &mut out)?;
    }
    out.sort_by(|a, b| a.cmp_lex(b));
    Ok(out)
}

/// Vertex sets of all induced cycles (three or more vertices), sorted
/// lexicographically.
pub fn enumerate_induced_cycles(g: &Graph) -> Result<Vec<VertexSet>> {
    let mut out = Vec::new();
    let mut budget = WITNESS_BUDGET;
    for_each_induced_cycle(g, &mut budget, &mut |cycle| {
        let mut s = VertexSet::new();
        for &v in cycle {
            s.insert(v);
        }
        out.push(s);
        false
    })?;
    out.sort_by(|a, b| a.cmp_lex(b));
    Ok(out)
}

/// The family of single vertices, each rewarded with its host weight;
/// packing it is exactly weighted independent set on the host.
pub fn singleton_family(g: &Graph) -> Vec<FamilyMember> {
    (0..g.n()).map(|v| FamilyMember::new(VertexSet::singleton(v), g.weight(v))).collect()
}

/// The family of all induced cycles at unit reward, so an optimal packing is
/// a largest collection of pairwise non-touching induced cycles.
pub fn cycle_family(g: &Graph) -> Result<Vec<FamilyMember>> {
    Ok(enumerate_induced_cycles(g)?
        .into_iter()
        .map(|s| FamilyMember::new(s, 1))
        .collect())
}

/// The family of all connected sets of at most `c` vertices, each rewarded
/// with its size, so an optimal packing covers the most vertices.
pub fn bounded_size_family(g: &Graph, c: usize) -> Result<Vec<FamilyMember>> {
    Ok(enumerate_connected_sets(g, c)?
        .into_iter()
        .map(|s| {
            let w = s.len() as u64;
            FamilyMember::new(s, w)
        })
        .collect())
}

/// No edges at all.
pub fn is_edgeless(g: &Graph) -> bool {
    g.m() == 0
}

/// Acyclic: the edge count falls short of the vertex count by exactly the
/// number of components.
pub fn is_forest(g: &Graph) -> bool {
    g.m() + crate::graph::connected_components(g).len() == g.n()
}

/// Predicate factory: every vertex has degree at most `k`.
pub fn max_degree_at_most(k: usize) -> impl Fn(&Graph) -> bool {
    move |g: &Graph| (0..g.n()).all(|v| g.degree(v) <= k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::branching::Mode;
    use crate::oracle::{
        brute_mwis, longest_induced_cycle_len, longest_induced_path_len,
    };

    fn make_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges, None).unwrap()
    }

    fn set(vs: &[usize]) -> VertexSet {
        let mut s = VertexSet::new();
        for &v in vs {
            s.insert(v);
        }
        s
    }

    fn member(vs: &[usize], weight: u64) -> FamilyMember {
        FamilyMember::new(set(vs), weight)
    }

    fn big_budget(d: usize, t: usize, mode: Mode) -> SolveConfig {
        SolveConfig { node_budget: 100_000_000, ..SolveConfig::new(d, t, mode) }
    }

    #[test]
    fn connected_sets_of_a_path_are_the_six_intervals() {
        let g = make_graph(3, &[(0, 1), (1, 2)]);
        let sets = enumerate_connected_sets(&g, 3).unwrap();
        let want: Vec<VertexSet> =
            [&[0][..], &[0, 1], &[0, 1, 2], &[1], &[1, 2], &[2]].iter().map(|vs| set(vs)).collect();
        assert_eq!(sets, want);
        assert_eq!(enumerate_connected_sets(&g, 1).unwrap().len(), 3);
    }

    #[test]
    fn connected_sets_of_a_star_skip_the_leaf_pairs() {
        // Star center 0: any set of two or more leaves without the center is
        // disconnected, so the count is 4 + 3 + 3 + 1.
        let g = make_graph(4, &[(0, 1), (0, 2), (0, 3)]);
        let sets = enumerate_connected_sets(&g, 4).unwrap();
        assert_eq!(sets.len(), 11);
        assert!(sets.iter().all(|s| g.is_connected_within(s)));
    }

    #[test]
    fn induced_cycles_of_the_house_are_the_square_and_the_triangle() {
        let g = make_graph(5, &[(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 4)]);
        let cycles = enumerate_induced_cycles(&g).unwrap();
        assert_eq!(cycles, vec![set(&[0, 1, 2, 3]), set(&[2, 3, 4])]);
    }

    #[test]
    fn blob_of_a_path_is_one_edge_short_of_complete() {
        // On a path a-b-c, every pair of connected subsets touches except the
        // two endpoint singletons.
        let g = make_graph(3, &[(0, 1), (1, 2)]);
        let family = bounded_size_family(&g, 3).unwrap();
        let blob = blob_graph(&g, &family).unwrap();
        assert_eq!(blob.graph.n(), 6);
        assert_eq!(blob.graph.m(), 14);
        let a = family.iter().position(|m| m.vertices == set(&[0])).unwrap();
        let c = family.iter().position(|m| m.vertices == set(&[2])).unwrap();
        assert!(!blob.graph.has_edge(a, c));
    }

    #[test]
    fn members_in_different_components_stay_apart() {
        let g = make_graph(3, &[(0, 1)]);
        let blob = blob_graph(&g, &[member(&[0, 1], 1), member(&[2], 1)]).unwrap();
        assert_eq!(blob.graph.m(), 0);
    }

    #[test]
    fn duplicate_members_are_distinct_and_touching() {
        let g = make_graph(1, &[]);
        let blob = blob_graph(&g, &[member(&[0], 1), member(&[0], 2)]).unwrap();
        assert_eq!(blob.graph.n(), 2);
        assert!(blob.graph.has_edge(0, 1));
    }

    #[test]
    fn bad_members_are_rejected_by_name() {
        let g = make_graph(3, &[(0, 1), (1, 2)]);
        for bad in [&[0, 2][..], &[], &[5]] {
            let err = blob_graph(&g, &[member(bad, 1)]).unwrap_err();
            assert!(matches!(err, Error::Contract { .. }), "{bad:?} gave {err:?}");
        }
    }

    #[test]
    fn packing_singletons_is_weighted_independent_set() {
        let g = Graph::new(
            5,
            &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)],
            Some(vec![2, 5, 3, 1, 1]),
        )
        .unwrap();
        let family = singleton_family(&g);
        let (packing, _) =
            solve_max_induced_packing(&g, &family, &big_budget(0, 6, Mode::PtFree)).unwrap();
        let want = brute_mwis(&g).unwrap();
        assert_eq!(packing.weight, want.weight);
        assert_eq!(packing.vertices, want.witness);
    }

    #[test]
    fn cycle_packing_takes_both_distant_squares() {
        // Two squares joined by a long path: the only induced cycles are the
        // squares themselves, and they do not touch.
        let mut edges = vec![(0, 1), (1, 2), (2, 3), (0, 3)];
        edges.extend([(3, 4), (4, 5), (5, 6), (6, 7), (7, 8)]);
        edges.extend([(8, 9), (9, 10), (10, 11), (8, 11)]);
        let g = make_graph(12, &edges);
        let family = cycle_family(&g).unwrap();
        assert_eq!(family.len(), 2);
        let (packing, _) =
            solve_max_induced_packing(&g, &family, &big_budget(0, 6, Mode::LongCycleFree)).unwrap();
        assert_eq!(packing.weight, 2);
        assert_eq!(packing.chosen, vec![0, 1]);
        assert_eq!(packing.vertices, set(&[0, 1, 2, 3, 8, 9, 10, 11]));
    }

    #[test]
    fn empty_family_packs_nothing() {
        let g = make_graph(3, &[(0, 1), (1, 2)]);
        let (packing, _) =
            solve_max_induced_packing(&g, &[], &big_budget(0, 6, Mode::PtFree)).unwrap();
        assert_eq!(packing, Packing { chosen: vec![], weight: 0, vertices: VertexSet::new() });
    }

    #[test]
    fn packing_matches_the_brute_oracle() {
        // All six connected subsets of a path, weighted so the two endpoint
        // singletons together beat the heavy whole.
        let g = make_graph(3, &[(0, 1), (1, 2)]);
        let sets = enumerate_connected_sets(&g, 3).unwrap();
        let weights = [5u64, 1, 9, 1, 1, 5];
        let family: Vec<FamilyMember> = sets
            .iter()
            .zip(weights)
            .map(|(s, w)| FamilyMember::new(s.clone(), w))
            .collect();
        let (packing, _) =
            solve_max_induced_packing(&g, &family, &big_budget(0, 6, Mode::PtFree)).unwrap();
        let want = crate::oracle::brute_max_packing(&g, &sets, &weights).unwrap();
        assert_eq!(packing.weight, 10);
        assert_eq!(packing.weight, want.weight);
        assert_eq!(set(&packing.chosen), want.witness);
    }

    #[test]
    fn degenerate_configurations_are_rejected() {
        let g = make_graph(2, &[(0, 1)]);
        let err = solve_max_induced_packing(&g, &[], &big_budget(1, 6, Mode::PtFree)).unwrap_err();
        assert!(matches!(err, Error::Contract { .. }));
    }

    #[test]
    fn blob_preserves_the_longest_induced_path_and_cycle() {
        let fixtures = [
            make_graph(4, &[(0, 1), (1, 2), (2, 3)]),
            make_graph(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]),
            make_graph(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]),
        ];
        for g in &fixtures {
            let family = bounded_size_family(g, g.n()).unwrap();
            let blob = blob_graph(g, &family).unwrap();
            assert_eq!(
                longest_induced_path_len(&blob.graph).unwrap(),
                longest_induced_path_len(g).unwrap()
            );
            let host_cycle = longest_induced_cycle_len(g).unwrap();
            let blob_cycle = longest_induced_cycle_len(&blob.graph).unwrap();
            if host_cycle == 0 {
                assert!(blob_cycle <= 3, "forest blob may gain only triangles");
            } else {
                assert_eq!(blob_cycle, host_cycle);
            }
        }
    }

    #[test]
    fn approx_with_singleton_pieces_is_exact_independent_set() {
        let g = make_graph(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]);
        let (x, _) =
            approx_largest_induced_class(&g, 0.5, is_edgeless, 1, &big_budget(0, 6, Mode::PtFree))
                .unwrap();
        assert_eq!(x, set(&[0, 3, 4]));
    }

    #[test]
    fn approx_covers_the_best_low_degree_subgraph() {
        // With a size bound beyond any candidate, the family is complete and
        // the packing is exact: compare against direct enumeration.
        let g = make_graph(5, &[(0, 1), (0, 2), (1, 2), (1, 3), (2, 4)]);
        let pred = max_degree_at_most(2);
        let (x, _) =
            approx_largest_induced_class(&g, 0.5, &pred, 64, &big_budget(0, 6, Mode::PtFree))
                .unwrap();
        let mut best = 0;
        for mask in 0u32..1 << g.n() {
            let s: VertexSet =
                (0..g.n()).filter(|&v| mask & (1 << v) != 0).fold(VertexSet::new(), |mut s, v| {
                    s.insert(v);
                    s
                });
            if pred(&induced_subgraph(&g, &s).0) {
                best = best.max(s.len());
            }
        }
        assert_eq!(x.len(), best);
        assert_eq!(best, 4);
    }

    #[test]
    fn approx_forest_pieces_on_a_triangle_keep_two_vertices() {
        let g = make_graph(3, &[(0, 1), (0, 2), (1, 2)]);
        let (x, _) =
            approx_largest_induced_class(&g, 0.5, is_forest, 2, &big_budget(0, 6, Mode::PtFree))
                .unwrap();
        assert_eq!(x.len(), 2);
        assert!(g.components_within(&x).iter().all(|c| c.len() <= 2));
    }

    #[test]
    fn approx_rejects_nonsense_parameters() {
        let g = make_graph(1, &[]);
        let cfg = big_budget(0, 6, Mode::PtFree);
        for eps in [0.0, -1.0, f64::NAN] {
            assert!(approx_largest_induced_class(&g, eps, is_edgeless, 1, &cfg).is_err());
        }
        assert!(approx_largest_induced_class(&g, 0.5, is_edgeless, 0, &cfg).is_err());
    }
}
