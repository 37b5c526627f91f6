//! Connected balanced separators found by growing an induced path, three-way
//! balance certification, and an exact small separator for low-treewidth use.

use crate::error::{Error, Result, Violation};
use crate::graph::{Graph, VertexSet};

/// Largest subset size `low_tw_balanced_separator` will search.
pub const LOW_TW_MAX_K: usize = 6;
/// Largest graph `low_tw_balanced_separator` accepts.
pub const LOW_TW_MAX_N: usize = 40;
/// Component count above which `is_c3wbs` trusts the greedy grouping alone.
pub const C3WBS_EXACT_MAX_COMPONENTS: usize = 15;

/// A connected set `x` with `|x| ≤ t` whose closed neighborhood splits the
/// graph into components each holding at most half of a reference set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorResult {
    /// The connected core.
    pub x: VertexSet,
    /// `N[x]`.
    pub closed_nbhd: VertexSet,
    /// Components of `G − N[x]`, ordered by smallest member.
    pub components: Vec<VertexSet>,
}

/// Grouping of the components of `G − N[x]` into three families, each of
/// which together with `N[x]` covers at least a tenth of the graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C3wbsWitness {
    pub partition: [Vec<VertexSet>; 3],
}

/// Finds a connected set `X` of at most `t` vertices such that every
/// component of `G − N[X]` contains at most `|A|/2` vertices of `A`
/// (`A = V(G)` gives the unweighted case).
///
/// Grows an induced path, always descending into the component of
/// `G − N[path]` richest in `A`-vertices, and returns as soon as the last
/// `min(k, t)` path vertices pass the balance check. The postcondition is
/// re-verified before returning. On graphs with long induced cycles the
/// growth can stall; after `|V|` fruitless iterations the current path is
/// returned inside a diagnostic error, never as a wrong separator.
pub fn connected_balanced_separator(g: &Graph, t: usize, a: &VertexSet) -> Result<SeparatorResult> {
    if t == 0 {
        return Err(Error::contract("connected_balanced_separator", "t must be positive"));
    }
    if a.is_empty() {
        return Err(Error::contract("connected_balanced_separator", "A must be nonempty"));
    }
    if !a.is_subset_of(&g.vertices()) {
        return Err(Error::contract("connected_balanced_separator", "A must be a vertex subset"));
    }
    if !g.is_connected() {
        return Err(Error::contract("connected_balanced_separator", "graph must be connected"));
    }

    let mut path: Vec<usize> = Vec::new();
    for _ in 0..=g.n() {
        let x: VertexSet = path[path.len().saturating_sub(t)..].iter().copied().collect();
        if !x.is_empty() {
            let candidate = assemble(g, x);
            if verify_separator(g, t, a, &candidate).is_ok() {
                return Ok(candidate);
            }
        }

        // No balanced suffix yet: descend into the A-richest component of
        // G − N[path] (ties by smallest member) and extend the path toward it.
        let on_path: VertexSet = path.iter().copied().collect();
        let outside = g.vertices().difference(&g.closed_neighborhood(&on_path));
        let comps = g.components_within(&outside);
        let active = comps
            .iter()
            .fold(None::<&VertexSet>, |best, c| match best {
                Some(b) if a.intersection(c).len() <= a.intersection(b).len() => Some(b),
                _ => Some(c),
            })
            .ok_or_else(|| {
                Error::Violation(Violation::new(
                    "connected_balanced_separator",
                    "path neighborhood swallowed the graph without achieving balance",
                    path.clone(),
                ))
            })?;

        let next = match path.last() {
            None => active.first(),
            Some(&vk) => {
                let fringe = g.neighborhood(active).intersection(g.neighbors(vk));
                // Prefer an extension keeping the path induced; earlier path
                // vertices are non-adjacent to the active component, so such
                // a vertex exists whenever the component is still A-heavy.
                let earlier: VertexSet = path[..path.len() - 1].iter().copied().collect();
                let inner = g.closed_neighborhood(&earlier);
                fringe.difference(&inner).first().or_else(|| fringe.first())
            }
        };
        match next {
            Some(v) => path.push(v),
            None => break,
        }
    }
    Err(Error::Violation(Violation::new(
        "connected_balanced_separator",
        "growth loop exhausted without achieving balance; freeness precondition violated?",
        path,
    )))
}

fn assemble(g: &Graph, x: VertexSet) -> SeparatorResult {
    let closed_nbhd = g.closed_neighborhood(&x);
    let components = g.components_within(&g.vertices().difference(&closed_nbhd));
    SeparatorResult { x, closed_nbhd, components }
}

/// Recomputes every postcondition of [`connected_balanced_separator`] from
/// scratch, returning the first violation found.
pub fn verify_separator(g: &Graph, t: usize, a: &VertexSet, sep: &SeparatorResult) -> Result<()> {
    let fail = |detail: String, vs: &VertexSet| {
        Err(Error::Violation(Violation::new("separator", detail, vs.to_vec())))
    };
    if sep.x.len() > t {
        return fail(format!("core has {} vertices, limit {t}", sep.x.len()), &sep.x);
    }
    if sep.x.is_empty() || !sep.x.is_subset_of(&g.vertices()) {
        return fail("core is empty or not a vertex subset".into(), &sep.x);
    }
    if !g.is_connected_within(&sep.x) {
        return fail("core does not induce a connected subgraph".into(), &sep.x);
    }
    let nbhd = g.closed_neighborhood(&sep.x);
    if nbhd != sep.closed_nbhd {
        return fail("closed neighborhood does not match the core".into(), &sep.closed_nbhd);
    }
    let comps = g.components_within(&g.vertices().difference(&nbhd));
    if comps != sep.components {
        return fail("components do not match G minus the closed neighborhood".into(), &nbhd);
    }
    for comp in &comps {
        if 2 * a.intersection(comp).len() > a.len() {
            return fail(
                format!(
                    "component holds {} of {} reference vertices, over half",
                    a.intersection(comp).len(),
                    a.len()
                ),
                comp,
            );
        }
    }
    Ok(())
}

/// Decides whether `x` is a connected three-way balanced separator: the
/// components of `G − N[x]` admit a partition into three families, each
/// covering — together with `N[x]` — at least `0.1·|V(G)|` vertices.
///
/// Tries the greedy prefix grouping over components sorted by decreasing
/// size first, then an exact search over all `3^k` assignments when at most
/// [`C3WBS_EXACT_MAX_COMPONENTS`] components remain. Families may be empty
/// when `N[x]` alone meets the bound.
pub fn is_c3wbs(g: &Graph, x: &VertexSet) -> Result<Option<C3wbsWitness>> {
    if x.is_empty() || !x.is_subset_of(&g.vertices()) {
        return Err(Error::contract("is_c3wbs", "x must be a nonempty vertex subset"));
    }
    if !g.is_connected_within(x) {
        return Err(Error::contract("is_c3wbs", "x must induce a connected subgraph"));
    }
    let nbhd = g.closed_neighborhood(x);
    let mut comps = g.components_within(&g.vertices().difference(&nbhd));
    comps.sort_by(|c1, c2| c2.len().cmp(&c1.len()).then(c1.first().cmp(&c2.first())));
    let n = g.n();
    let base = nbhd.len();
    // Components avoid N[x], so |N[x] ∪ ⋃𝒞| = |N[x]| + Σ|C|. The bound
    // 0.1·n is compared exactly as 10·size ≥ n.
    let meets = |extra: usize| 10 * (base + extra) >= n;

    // Greedy grouping: two minimal prefixes meeting the bound, remainder third.
    let sizes: Vec<usize> = comps.iter().map(VertexSet::len).collect();
    let minimal_prefix = |from: usize| {
        let mut sum = 0;
        for (i, &s) in sizes.iter().enumerate().skip(from) {
            sum += s;
            if meets(sum) {
                return Some(i + 1);
            }
        }
        None
    };
    if let Some(i1) = minimal_prefix(0) {
        if let Some(i2) = minimal_prefix(i1) {
            if meets(sizes[i2..].iter().sum()) {
                return Ok(Some(C3wbsWitness {
                    partition: [
                        comps[..i1].to_vec(),
                        comps[i1..i2].to_vec(),
                        comps[i2..].to_vec(),
                    ],
                }));
            }
        }
    }

    if comps.len() > C3WBS_EXACT_MAX_COMPONENTS {
        return Ok(None);
    }
    // Exact search: each component picks one of three families.
    let assignments = 3usize.pow(comps.len() as u32);
    for code in 0..assignments {
        let mut totals = [0usize; 3];
        let mut c = code;
        for s in &sizes {
            totals[c % 3] += s;
            c /= 3;
        }
        if totals.iter().all(|&extra| meets(extra)) {
            let mut partition: [Vec<VertexSet>; 3] = Default::default();
            let mut c = code;
            for comp in &comps {
                partition[c % 3].push(comp.clone());
                c /= 3;
            }
            return Ok(Some(C3wbsWitness { partition }));
        }
    }
    Ok(None)
}

/// Exhaustively finds a set `X` of at most `k` vertices such that every
/// component of `H − X` holds at most `|A|/2` vertices of `A`. Subsets are
/// tried in increasing size, lexicographic within a size, so the result is
/// deterministic and self-verifying by construction. Intended for graphs of
/// treewidth below `k`; absence of any such `X` is reported as an error.
pub fn low_tw_balanced_separator(h: &Graph, a: &VertexSet, k: usize) -> Result<VertexSet> {
    if k > LOW_TW_MAX_K {
        return Err(Error::contract(
            "low_tw_balanced_separator",
            format!("k = {k} exceeds the exhaustive-search cap {LOW_TW_MAX_K}"),
        ));
    }
    if h.n() > LOW_TW_MAX_N {
        return Err(Error::contract(
            "low_tw_balanced_separator",
            format!("n = {} exceeds the exhaustive-search cap {LOW_TW_MAX_N}", h.n()),
        ));
    }
    if !a.is_subset_of(&h.vertices()) {
        return Err(Error::contract("low_tw_balanced_separator", "A must be a vertex subset"));
    }
    let verts: Vec<usize> = h.vertices().to_vec();
    let balanced = |x: &VertexSet| {
        h.components_within(&h.vertices().difference(x))
            .iter()
            .all(|comp| 2 * a.intersection(comp).len() <= a.len())
    };
    for size in 0..=k.min(verts.len()) {
        let mut found = None;
        for_each_combination(&verts, size, &mut |pick| {
            if found.is_none() {
                let x: VertexSet = pick.iter().copied().collect();
                if balanced(&x) {
                    found = Some(x);
                }
            }
        });
        if let Some(x) = found {
            return Ok(x);
        }
    }
    Err(Error::contract(
        "low_tw_balanced_separator",
        format!("no balanced separator of size at most {k}; treewidth precondition violated?"),
    ))
}

/// Calls `visit` on every `size`-subset of `items`, lexicographically.
fn for_each_combination(items: &[usize], size: usize, visit: &mut impl FnMut(&[usize])) {
    fn go(items: &[usize], size: usize, from: usize, pick: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
        if pick.len() == size {
            visit(pick);
            return;
        }
        let needed = size - pick.len();
        for i in from..=items.len().saturating_sub(needed) {
            pick.push(items[i]);
            go(items, size, i + 1, pick, visit);
            pick.pop();
        }
    }
    go(items, size, 0, &mut Vec::new(), visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn make_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges, None).unwrap()
    }

    fn path_graph(n: usize) -> Graph {
        make_graph(n, &(0..n - 1).map(|i| (i, i + 1)).collect::<Vec<_>>())
    }

    #[test]
    fn p7_separator_is_small_connected_and_balanced() {
        let g = path_graph(7);
        let sep = connected_balanced_separator(&g, 8, &g.vertices()).unwrap();
        verify_separator(&g, 8, &g.vertices(), &sep).unwrap();
        // The deterministic growth starts at vertex 0 and stops at {0,1,2}:
        // the lone remaining component {4,5,6} holds 3 ≤ 3.5 vertices.
        assert_eq!(sep.x.to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn star_center_dominates() {
        let g = make_graph(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]);
        let sep = connected_balanced_separator(&g, 4, &g.vertices()).unwrap();
        assert_eq!(sep.x.to_vec(), vec![0]);
        assert!(sep.components.is_empty());
    }

    #[test]
    fn c5_single_vertex_suffices() {
        let g = make_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let sep = connected_balanced_separator(&g, 5, &g.vertices()).unwrap();
        verify_separator(&g, 5, &g.vertices(), &sep).unwrap();
        assert_eq!(sep.x.to_vec(), vec![0]);
        assert_eq!(sep.components.len(), 1);
        assert_eq!(sep.components[0].len(), 2);
    }

    #[test]
    fn weighted_balance_respects_the_reference_set() {
        // A on one end of a long path forces the separator toward that end.
        let g = path_graph(9);
        let a: VertexSet = [0, 1, 2].into_iter().collect();
        let sep = connected_balanced_separator(&g, 9, &a).unwrap();
        verify_separator(&g, 9, &a, &sep).unwrap();
        for comp in &sep.components {
            assert!(2 * a.intersection(comp).len() <= a.len());
        }
    }

    #[test]
    fn rejects_disconnected_or_empty_inputs() {
        let g = make_graph(4, &[(0, 1), (2, 3)]);
        assert!(connected_balanced_separator(&g, 3, &g.vertices()).is_err());
        let p = path_graph(3);
        assert!(connected_balanced_separator(&p, 3, &VertexSet::new()).is_err());
    }

    #[test]
    fn long_path_middle_vertex_is_not_c3wbs() {
        // Two sides of 20 vertices each and |N[X]| = 3 < 0.1·41: any
        // three-way grouping leaves one family at fewer than a tenth.
        let g = path_graph(41);
        let x: VertexSet = [20].into_iter().collect();
        assert!(is_c3wbs(&g, &x).unwrap().is_none());
    }

    #[test]
    fn spider_center_is_c3wbs() {
        // Three legs of five vertices joined at center 0.
        let mut edges = vec![(0, 1), (0, 6), (0, 11)];
        for leg in 0..3 {
            for i in 0..4 {
                let v = 1 + leg * 5 + i;
                edges.push((v, v + 1));
            }
        }
        let g = make_graph(16, &edges);
        let x: VertexSet = [0].into_iter().collect();
        let witness = is_c3wbs(&g, &x).unwrap().expect("spider center is three-way balanced");
        let nbhd: VertexSet = [0, 1, 6, 11].into_iter().collect();
        for family in &witness.partition {
            let covered: usize = family.iter().map(VertexSet::len).sum::<usize>() + nbhd.len();
            assert!(10 * covered >= g.n());
        }
        // The three families cover all components exactly once.
        let total: usize = witness.partition.iter().flatten().map(VertexSet::len).sum();
        assert_eq!(total, g.n() - nbhd.len());
    }

    #[test]
    fn k4_vertex_gives_witness_with_empty_families() {
        let g = make_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let x: VertexSet = [0].into_iter().collect();
        let witness = is_c3wbs(&g, &x).unwrap().expect("dominating vertex covers everything");
        assert!(witness.partition.iter().all(Vec::is_empty));
    }

    #[test]
    fn c3wbs_rejects_disconnected_core() {
        let g = path_graph(5);
        let x: VertexSet = [0, 4].into_iter().collect();
        assert!(is_c3wbs(&g, &x).is_err());
    }

    #[test]
    fn c3wbs_on_a_four_legged_spider() {
        // Legs of lengths 4, 4, 1, 1 from center 0: the two length-1 legs sit
        // inside N[X], which already covers a tenth of the graph, so the
        // greedy grouping gives one long leg per family and an empty third.
        let mut edges = vec![(0, 1), (0, 5), (0, 9), (0, 10)];
        edges.extend([(1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8)]);
        let g = make_graph(11, &edges);
        let x: VertexSet = [0].into_iter().collect();
        let witness = is_c3wbs(&g, &x).unwrap().expect("four-legged spider splits three ways");
        assert_eq!(witness.partition[0], vec![[2, 3, 4].into_iter().collect::<VertexSet>()]);
        assert_eq!(witness.partition[1], vec![[6, 7, 8].into_iter().collect::<VertexSet>()]);
        assert!(witness.partition[2].is_empty());
    }

    #[test]
    fn low_tw_path_center() {
        let g = path_graph(9);
        let x = low_tw_balanced_separator(&g, &g.vertices(), 1).unwrap();
        assert_eq!(x.to_vec(), vec![4]);
    }

    #[test]
    fn low_tw_triangle_small_separator() {
        let g = make_graph(3, &[(0, 1), (0, 2), (1, 2)]);
        let x = low_tw_balanced_separator(&g, &g.vertices(), 3).unwrap();
        assert_eq!(x.to_vec(), vec![0, 1]);
    }

    #[test]
    fn low_tw_leaf_centroid_of_a_tree() {
        // Vertex 1 carries three of five leaves; it is the leaf-centroid.
        let g = make_graph(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6)]);
        let a: VertexSet = [2, 3, 4, 5, 6].into_iter().collect();
        let x = low_tw_balanced_separator(&g, &a, 1).unwrap();
        assert_eq!(x.to_vec(), vec![1]);
    }

    #[test]
    fn low_tw_failure_is_loud() {
        // K₇ minus nothing: removing any single vertex leaves K₆ connected
        // with 6 > 3.5 reference vertices.
        let edges: Vec<_> =
            (0..7).flat_map(|u| (u + 1..7).map(move |v| (u, v))).collect();
        let g = make_graph(7, &edges);
        assert!(low_tw_balanced_separator(&g, &g.vertices(), 1).is_err());
    }

    #[test]
    fn combination_enumeration_is_lexicographic() {
        let mut seen = Vec::new();
        for_each_combination(&[1, 2, 3, 4], 2, &mut |pick| seen.push(pick.to_vec()));
        assert_eq!(
            seen,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
    }
}
