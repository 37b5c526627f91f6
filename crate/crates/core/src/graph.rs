//! Graph representation: weighted undirected graphs over `0..n`, bitmask
//! vertex sets, the instance text format, components, and degeneracy orderings.

use crate::error::{Error, Result, Violation};
use std::cmp::Ordering;
use std::fmt;
use std::fmt::Write as _;

/// A set of vertex indices, stored as a little-endian bitmask of 64-bit words.
///
/// The representation is kept in a normal form with no trailing zero words, so
/// derived equality and hashing are structural. The derived-by-hand `Ord`
/// compares sets as the integers their bitmasks encode ("ascending bitmask"
/// order), which the branching solver uses for deterministic enumeration.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    pub fn new() -> Self {
        VertexSet { words: Vec::new() }
    }

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut words = vec![!0u64; n / 64];
        if n % 64 != 0 {
            words.push((1u64 << (n % 64)) - 1);
        }
        let mut s = VertexSet { words };
        s.normalize();
        s
    }

    pub fn singleton(v: usize) -> Self {
        let mut s = VertexSet::new();
        s.insert(v);
        s
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, v: usize) {
        let w = v / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1u64 << (v % 64);
    }

    pub fn remove(&mut self, v: usize) {
        let w = v / 64;
        if w < self.words.len() {
            self.words[w] &= !(1u64 << (v % 64));
            self.normalize();
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        let w = v / 64;
        w < self.words.len() && self.words[w] >> (v % 64) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Smallest member, if any.
    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .position(|&w| w != 0)
            .map(|i| i * 64 + self.words[i].trailing_zeros() as usize)
    }

    /// Largest member, if any.
    pub fn last(&self) -> Option<usize> {
        self.words
            .last()
            .map(|w| (self.words.len() - 1) * 64 + 63 - w.leading_zeros() as usize)
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        self.words.truncate(other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.normalize();
    }

    pub fn remove_all(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.normalize();
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.remove_all(other);
        s
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint_from(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        !self.is_disjoint_from(other)
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            std::iter::successors(Some(w), |&w| Some(w & w.wrapping_sub(1)))
                .take_while(|&w| w != 0)
                .map(move |w| i * 64 + w.trailing_zeros() as usize)
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Lexicographic comparison of the ascending member lists. This is the
    /// tie-breaking order for reported solutions, and differs from `Ord`
    /// (e.g. `{0,5}` precedes `{1,2}` here but follows it as a bitmask).
    pub fn cmp_lex(&self, other: &VertexSet) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for VertexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VertexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VertexSet::new();
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An undirected graph on vertices `0..n` with `u64` vertex weights.
///
/// Adjacency is stored as one bitmask row per vertex; the edge list is kept
/// sorted with `u < v` for deterministic serialization.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<VertexSet>,
    edges: Vec<(usize, usize)>,
    weights: Vec<u64>,
}

impl Graph {
    /// Builds a graph, validating that edges are `u < v < n` and distinct.
    /// `weights` defaults to all ones.
    pub fn new(n: usize, edges: &[(usize, usize)], weights: Option<Vec<u64>>) -> Result<Graph> {
        let weights = weights.unwrap_or_else(|| vec![1; n]);
        if weights.len() != n {
            return Err(Error::contract(
                "Graph::new",
                format!("expected {} weights, got {}", n, weights.len()),
            ));
        }
        let mut adj = vec![VertexSet::new(); n];
        let mut sorted: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= v || v >= n {
                return Err(Error::contract(
                    "Graph::new",
                    format!("edge ({u}, {v}) violates u < v < n = {n}"),
                ));
            }
            if adj[u].contains(v) {
                return Err(Error::contract("Graph::new", format!("duplicate edge ({u}, {v})")));
            }
            adj[u].insert(v);
            adj[v].insert(u);
            sorted.push((u, v));
        }
        sorted.sort_unstable();
        Ok(Graph { n, adj, edges: sorted, weights })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, v: usize) -> u64 {
        self.weights[v]
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    /// Sum of weights over a set, with overflow checked.
    pub fn weight_of(&self, s: &VertexSet) -> Result<u64> {
        let mut total: u64 = 0;
        for v in s.iter() {
            total = total
                .checked_add(self.weights[v])
                .ok_or(Error::Overflow("weight summation"))?;
        }
        Ok(total)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].contains(v)
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Open neighborhood of a set: vertices outside `s` adjacent to it.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in s.iter() {
            out.union_with(&self.adj[v]);
        }
        out.remove_all(s);
        out
    }

    /// Closed neighborhood `N[s] = s ∪ N(s)`.
    pub fn closed_neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = s.clone();
        for v in s.iter() {
            out.union_with(&self.adj[v]);
        }
        out
    }

    /// Neighbors of `v` inside the set `within`.
    pub fn neighbors_in(&self, v: usize, within: &VertexSet) -> VertexSet {
        self.adj[v].intersection(within)
    }

    /// Set adjacency: `a` and `b` touch if they share a vertex or some edge
    /// joins them.
    pub fn sets_adjacent(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.intersects(b) || a.iter().any(|v| self.adj[v].intersects(b))
    }

    /// Connected components of the subgraph induced by `within`, each returned
    /// as a vertex set, ordered by smallest member.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut unseen = within.clone();
        let mut comps = Vec::new();
        while let Some(start) = unseen.first() {
            let mut comp = VertexSet::new();
            let mut frontier = VertexSet::singleton(start);
            while !frontier.is_empty() {
                comp.union_with(&frontier);
                let mut next = VertexSet::new();
                for v in frontier.iter() {
                    next.union_with(&self.adj[v]);
                }
                next.intersect_with(&unseen);
                next.remove_all(&comp);
                frontier = next;
            }
            unseen.remove_all(&comp);
            comps.push(comp);
        }
        comps
    }

    /// True if the subgraph induced by `within` is connected (the empty set
    /// counts as connected).
    pub fn is_connected_within(&self, within: &VertexSet) -> bool {
        self.components_within(within).len() <= 1
    }

    pub fn is_connected(&self) -> bool {
        self.n == 0 || self.is_connected_within(&self.vertices())
    }

    /// BFS distances from `sources` inside the induced subgraph on `within`.
    /// Returns one entry per graph vertex; vertices outside `within` or in a
    /// different component get `None`.
    pub fn distances_within(&self, within: &VertexSet, sources: &VertexSet) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut frontier = sources.intersection(within);
        let mut seen = frontier.clone();
        let mut d = 0;
        while !frontier.is_empty() {
            for v in frontier.iter() {
                dist[v] = Some(d);
            }
            let mut next = VertexSet::new();
            for v in frontier.iter() {
                next.union_with(&self.adj[v]);
            }
            next.intersect_with(within);
            next.remove_all(&seen);
            seen.union_with(&next);
            frontier = next;
            d += 1;
        }
        dist
    }

    /// A shortest path between `from` and `to` inside `within`, as a vertex
    /// list starting in `from` and ending in `to`. `None` if unreachable.
    pub fn shortest_path_within(
        &self,
        within: &VertexSet,
        from: &VertexSet,
        to: &VertexSet,
    ) -> Option<Vec<usize>> {
        let dist = self.distances_within(within, from);
        // Pick the closest target vertex, smallest index on ties.
        let end = to
            .iter()
            .filter_map(|v| dist[v].map(|d| (d, v)))
            .min()?
            .1;
        let mut path = vec![end];
        let mut cur = end;
        while dist[cur] != Some(0) {
            let d = dist[cur].unwrap();
            let prev = self
                .neighbors_in(cur, within)
                .iter()
                .find(|&u| dist[u] == Some(d - 1))
                .expect("BFS predecessor must exist");
            path.push(prev);
            cur = prev;
        }
        path.reverse();
        Some(path)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, m={})", self.n, self.edges.len())
    }
}

/// Induced subgraph on `s`, together with the mapping from new indices to the
/// original vertex indices (ascending).
pub fn induced_subgraph(g: &Graph, s: &VertexSet) -> (Graph, Vec<usize>) {
    let map: Vec<usize> = s.iter().collect();
    let mut back = vec![usize::MAX; g.n()];
    for (i, &v) in map.iter().enumerate() {
        back[v] = i;
    }
    let mut edges = Vec::new();
    for &(u, v) in g.edges() {
        if s.contains(u) && s.contains(v) {
            edges.push((back[u], back[v]));
        }
    }
    let weights = map.iter().map(|&v| g.weight(v)).collect();
    let h = Graph::new(map.len(), &edges, Some(weights)).expect("induced subgraph is valid");
    (h, map)
}

/// Connected components of the whole graph, ordered by smallest member.
pub fn connected_components(g: &Graph) -> Vec<VertexSet> {
    g.components_within(&g.vertices())
}

/// Parses the instance text format:
///
/// ```text
/// # comment lines and blank lines are ignored
/// n m
/// w w_0 w_1 ... w_{n-1}    (optional; weights default to 1)
/// e u v                    (m lines, 0 <= u < v < n)
/// ```
pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut n: Option<(usize, usize)> = None;
    let mut weights: Option<Vec<u64>> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno, msg };
        let mut tok = line.split_whitespace();
        match n {
            None => {
                let nv = tok
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err("expected 'n m' header".into()))?;
                let mv = tok
                    .next()
                    .and_then(|t| t.parse::<usize>().ok())
                    .ok_or_else(|| err("expected 'n m' header".into()))?;
                if tok.next().is_some() {
                    return Err(err("trailing tokens after 'n m' header".into()));
                }
                n = Some((nv, mv));
            }
            Some((nv, mv)) => match tok.next() {
                Some("w") => {
                    if weights.is_some() || !edges.is_empty() {
                        return Err(err("'w' line must appear once, before edges".into()));
                    }
                    let ws: Vec<u64> = tok
                        .map(|t| t.parse::<u64>())
                        .collect::<std::result::Result<_, _>>()
                        .map_err(|e| err(format!("bad weight: {e}")))?;
                    if ws.len() != nv {
                        return Err(err(format!("expected {} weights, got {}", nv, ws.len())));
                    }
                    weights = Some(ws);
                }
                Some("e") => {
                    let u = tok
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| err("expected 'e u v'".into()))?;
                    let v = tok
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .ok_or_else(|| err("expected 'e u v'".into()))?;
                    if tok.next().is_some() {
                        return Err(err("trailing tokens after edge".into()));
                    }
                    if !(u < v && v < nv) {
                        return Err(err(format!("edge ({u}, {v}) violates 0 <= u < v < n = {nv}")));
                    }
                    if edges.contains(&(u, v)) {
                        return Err(err(format!("duplicate edge ({u}, {v})")));
                    }
                    edges.push((u, v));
                    if edges.len() > mv {
                        return Err(err(format!("more than m = {mv} edges")));
                    }
                }
                Some(other) => return Err(err(format!("unrecognized line tag '{other}'"))),
                None => unreachable!("empty lines were skipped"),
            },
        }
    }
    let (nv, mv) = n.ok_or(Error::Parse { line: 0, msg: "missing 'n m' header".into() })?;
    if edges.len() != mv {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header promises {} edges, found {}", mv, edges.len()),
        });
    }
    Graph::new(nv, &edges, weights)
}

/// Serializes a graph to the canonical instance text: header, a `w` line, and
/// edges ascending. `parse_graph` inverts this exactly.
pub fn serialize_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    let ws: Vec<String> = g.weights().iter().map(|w| w.to_string()).collect();
    let _ = writeln!(out, "w {}", ws.join(" "));
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "e {u} {v}");
    }
    out
}

/// A degeneracy ordering: 1-based positions per vertex, assigning every vertex
/// a position in `[1, n]` such that adjacent vertices get distinct positions.
pub type Positions = Vec<usize>;

/// Greedy degeneracy ordering by repeated minimum-degree removal (ties to the
/// smallest vertex). Returns 1-based positions in reverse removal order —
/// vertices removed early get large positions, so each vertex has at most
/// `degeneracy` neighbors at smaller positions — together with the degeneracy
/// (the largest minimum degree encountered).
pub fn greedy_degeneracy_ordering(g: &Graph) -> (Positions, usize) {
    let mut remaining = g.vertices();
    let mut eta = vec![0usize; g.n()];
    let mut degeneracy = 0;
    let mut next_pos = g.n();
    while let Some(first) = remaining.first() {
        let mut best = first;
        let mut best_deg = g.neighbors_in(first, &remaining).len();
        for v in remaining.iter().skip(1) {
            let d = g.neighbors_in(v, &remaining).len();
            if d < best_deg {
                best = v;
                best_deg = d;
            }
        }
        degeneracy = degeneracy.max(best_deg);
        eta[best] = next_pos;
        next_pos -= 1;
        remaining.remove(best);
    }
    (eta, degeneracy)
}

/// Checks that `eta` assigns every vertex a position in `[1, n]`, that
/// adjacent vertices get distinct positions, and that every vertex has at most
/// `d` neighbors at smaller positions. On failure returns a certificate naming
/// the violated vertex.
pub fn validate_degeneracy_ordering(g: &Graph, eta: &Positions, d: usize) -> Result<()> {
    if eta.len() != g.n() {
        return Err(Error::contract(
            "validate_degeneracy_ordering",
            format!("expected {} positions, got {}", g.n(), eta.len()),
        ));
    }
    for v in 0..g.n() {
        if eta[v] < 1 || eta[v] > g.n() {
            return Err(Violation::new(
                "degeneracy-ordering",
                format!("position {} of vertex {v} is outside [1, {}]", eta[v], g.n()),
                vec![v],
            )
            .into());
        }
    }
    for &(u, v) in g.edges() {
        if eta[u] == eta[v] {
            return Err(Violation::new(
                "degeneracy-ordering",
                format!("adjacent vertices {u} and {v} share position {}", eta[u]),
                vec![u, v],
            )
            .into());
        }
    }
    for v in 0..g.n() {
        let earlier = g.neighbors(v).iter().filter(|&u| eta[u] < eta[v]).count();
        if earlier > d {
            return Err(Violation::new(
                "degeneracy-ordering",
                format!("vertex {v} has {earlier} earlier neighbors, quota is {d}"),
                vec![v],
            )
            .into());
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn make_graph(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::new(n, edges, None).unwrap()
    }

    #[test]
    fn vertex_set_basics() {
        let mut s = VertexSet::new();
        assert!(s.is_empty());
        s.insert(3);
        s.insert(70);
        s.insert(3);
        assert_eq!(s.len(), 2);
        assert!(s.contains(3) && s.contains(70) && !s.contains(4));
        assert_eq!(s.to_vec(), vec![3, 70]);
        assert_eq!(s.first(), Some(3));
        assert_eq!(s.last(), Some(70));
        s.remove(70);
        assert_eq!(s.to_vec(), vec![3]);
    }

    #[test]
    fn vertex_set_high_word_removal_renormalizes() {
        let mut s = VertexSet::singleton(100);
        s.insert(5);
        s.remove(100);
        assert_eq!(s, VertexSet::singleton(5));
    }

    #[test]
    fn vertex_set_algebra() {
        let a: VertexSet = [0, 2, 4].into_iter().collect();
        let b: VertexSet = [2, 3].into_iter().collect();
        assert_eq!(a.union(&b).to_vec(), vec![0, 2, 3, 4]);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.difference(&b).to_vec(), vec![0, 4]);
        assert!(VertexSet::singleton(2).is_subset_of(&a));
        assert!(!a.is_subset_of(&b));
        assert!(a.intersects(&b));
        assert!(a.is_disjoint_from(&VertexSet::singleton(1)));
    }

    #[test]
    fn bitmask_order_differs_from_lex_order() {
        // {1,2} = 6 as a bitmask, {0,5} = 33: numeric order puts {1,2} first,
        // lexicographic member order puts {0,5} first.
        let a: VertexSet = [0, 5].into_iter().collect();
        let b: VertexSet = [1, 2].into_iter().collect();
        assert_eq!(a.cmp(&b), Ordering::Greater);
        assert_eq!(a.cmp_lex(&b), Ordering::Less);
        // A strict prefix precedes its extension lexicographically.
        let c: VertexSet = [0].into_iter().collect();
        assert_eq!(c.cmp_lex(&a), Ordering::Less);
    }

    #[test]
    fn full_set_covers_word_boundary() {
        for n in [0, 1, 63, 64, 65, 128] {
            assert_eq!(VertexSet::full(n).len(), n);
            assert_eq!(VertexSet::full(n).to_vec(), (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn graph_rejects_bad_edges() {
        assert!(Graph::new(3, &[(1, 1)], None).is_err());
        assert!(Graph::new(3, &[(2, 1)], None).is_err());
        assert!(Graph::new(3, &[(0, 3)], None).is_err());
        assert!(Graph::new(3, &[(0, 1), (0, 1)], None).is_err());
        assert!(Graph::new(3, &[(0, 1)], Some(vec![1, 2])).is_err());
    }

    #[test]
    fn neighborhoods_and_components() {
        // Two components: a triangle 0-1-2 and an edge 3-4.
        let g = make_graph(5, &[(0, 1), (0, 2), (1, 2), (3, 4)]);
        assert_eq!(g.neighborhood(&VertexSet::singleton(0)).to_vec(), vec![1, 2]);
        assert_eq!(
            g.closed_neighborhood(&VertexSet::singleton(3)).to_vec(),
            vec![3, 4]
        );
        let comps = connected_components(&g);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(comps[1].to_vec(), vec![3, 4]);
        assert!(!g.is_connected());
        assert!(g.is_connected_within(&comps[0]));
    }

    #[test]
    fn components_respect_the_restriction() {
        // Path 0-1-2: dropping the middle vertex splits it.
        let g = make_graph(3, &[(0, 1), (1, 2)]);
        let within: VertexSet = [0, 2].into_iter().collect();
        let comps = g.components_within(&within);
        assert_eq!(comps.len(), 2);
    }

    #[test]
    fn distances_and_shortest_paths() {
        let g = make_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]);
        let within = g.vertices();
        let dist = g.distances_within(&within, &VertexSet::singleton(0));
        assert_eq!(dist, vec![Some(0), Some(1), Some(2), Some(2), Some(1)]);
        let path = g
            .shortest_path_within(&within, &VertexSet::singleton(0), &VertexSet::singleton(3))
            .unwrap();
        assert_eq!(path.len(), 3);
        assert_eq!(path[0], 0);
        assert_eq!(path[2], 3);
        // Unreachable target.
        let h = make_graph(3, &[(0, 1)]);
        assert!(h
            .shortest_path_within(&h.vertices(), &VertexSet::singleton(0), &VertexSet::singleton(2))
            .is_none());
    }

    #[test]
    fn induced_subgraph_remaps_indices_and_weights() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3)], Some(vec![10, 20, 30, 40])).unwrap();
        let s: VertexSet = [1, 2, 3].into_iter().collect();
        let (h, map) = induced_subgraph(&g, &s);
        assert_eq!(map, vec![1, 2, 3]);
        assert_eq!(h.n(), 3);
        assert_eq!(h.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(h.weights(), &[20, 30, 40]);
    }

    #[test]
    fn parse_and_serialize_round_trip() {
        let text = "# sample\n4 3\nw 5 6 7 8\ne 0 1\ne 1 2\ne 2 3\n";
        let g = parse_graph(text).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.m(), 3);
        assert_eq!(g.weight(2), 7);
        let canon = serialize_graph(&g);
        let g2 = parse_graph(&canon).unwrap();
        assert_eq!(g, g2);
        // The canonical form itself round-trips bit-exactly.
        assert_eq!(serialize_graph(&g2), canon);
    }

    #[test]
    fn parse_defaults_weights_to_one() {
        let g = parse_graph("2 1\ne 0 1\n").unwrap();
        assert_eq!(g.weights(), &[1, 1]);
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert!(matches!(parse_graph(""), Err(Error::Parse { .. })));
        assert!(parse_graph("2 1\ne 1 0\n").is_err());
        assert!(parse_graph("2 1\ne 0 2\n").is_err());
        assert!(parse_graph("2 2\ne 0 1\n").is_err());
        assert!(parse_graph("2 1\ne 0 1\ne 0 1\n").is_err());
        assert!(parse_graph("2 0\nw 1\n").is_err());
        assert!(parse_graph("2 0\nq 0\n").is_err());
    }

    #[test]
    fn weight_sum_is_checked() {
        let g = Graph::new(2, &[], Some(vec![u64::MAX, 1])).unwrap();
        assert!(g.weight_of(&VertexSet::singleton(0)).is_ok());
        assert!(matches!(g.weight_of(&g.vertices()), Err(Error::Overflow(_))));
    }

    #[test]
    fn greedy_ordering_of_a_path_is_one_degenerate() {
        let g = make_graph(4, &[(0, 1), (1, 2), (2, 3)]);
        let (eta, d) = greedy_degeneracy_ordering(&g);
        assert_eq!(d, 1);
        validate_degeneracy_ordering(&g, &eta, 1).unwrap();
        assert!(validate_degeneracy_ordering(&g, &eta, 0).is_err());
    }

    #[test]
    fn greedy_ordering_of_a_clique() {
        let g = make_graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let (eta, d) = greedy_degeneracy_ordering(&g);
        assert_eq!(d, 3);
        validate_degeneracy_ordering(&g, &eta, 3).unwrap();
    }

    #[test]
    fn validate_rejects_equal_positions_on_an_edge() {
        let g = make_graph(2, &[(0, 1)]);
        let err = validate_degeneracy_ordering(&g, &vec![1, 1], 5);
        assert!(matches!(err, Err(Error::Violation(_))));
    }

    #[test]
    fn validate_allows_equal_positions_on_nonadjacent_vertices() {
        let g = make_graph(3, &[(0, 1)]);
        // Vertices 0 and 2 are nonadjacent and may share a position.
        validate_degeneracy_ordering(&g, &vec![1, 2, 1], 1).unwrap();
    }

    #[test]
    fn empty_graph_ordering() {
        let g = make_graph(0, &[]);
        let (eta, d) = greedy_degeneracy_ordering(&g);
        assert_eq!(d, 0);
        assert!(eta.is_empty());
        validate_degeneracy_ordering(&g, &eta, 0).unwrap();
    }
}
